#include "hypembed/hypermap.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "hypembed/errors.hpp"
#include "hypembed/hyperbolic.hpp"

namespace hypembed {

namespace {

inline double softplus(double u) {
  if (u > 0.0) return u + std::log1p(std::exp(-u));
  return std::log1p(std::exp(u));
}

}  // namespace

Embedding hypermap_embed(const Graph& g, const EpsoParams& p, DegreeKind kind,
                         std::uint64_t tie_seed, int angle_grid) {
  if (angle_grid < 1) throw ParamError("angle_grid must be >= 1");
  Embedding emb = assign_radial_coordinates(g, p, kind, tie_seed);
  if (!(emb.params.temperature > 0.0)) throw ParamError("hypermap needs temperature > 0");
  if (!is_connected(g)) {
    throw ConnectivityError("hypermap needs a connected graph (" +
                            std::to_string(component_count(g)) + " components)");
  }

  const EpsoParams& prm = emb.params;
  const int n = g.n_nodes();
  const double two_over_zeta = 2.0 / prm.zeta;
  const double scale = prm.zeta / (2.0 * prm.temperature);
  const double grid_step = 2.0 * std::numbers::pi / static_cast<double>(angle_grid);

  // Angle per insertion rank (1-based rank k stored at k-1); rank 1 keeps 0.
  std::vector<double> theta(static_cast<std::size_t>(n), 0.0);
  std::vector<double> a_term(static_cast<std::size_t>(n));
  std::vector<double> b_term(static_cast<std::size_t>(n));
  std::vector<char> linked(static_cast<std::size_t>(n));

  for (int i = 2; i <= n; ++i) {
    const int node_i = emb.radial_order[static_cast<std::size_t>(i - 1)];
    const double ln_i = std::log(static_cast<double>(i));
    const double r_new = two_over_zeta * ln_i;
    const double ei = std::exp(prm.zeta * r_new);
    const double emi = 1.0 / ei;
    const double cutoff = cutoff_radius(i, prm, prm.m);

    // Insertion-time state of the earlier nodes: faded radius, stored angle,
    // adjacency to the newcomer. cosh(zeta x) = a + 2 sin^2(dtheta/2) * b.
    for (int j = 1; j < i; ++j) {
      const int node_j = emb.radial_order[static_cast<std::size_t>(j - 1)];
      const double r_j = prm.beta * two_over_zeta * std::log(static_cast<double>(j)) +
                         (1.0 - prm.beta) * two_over_zeta * ln_i;
      const double ej = std::exp(prm.zeta * r_j);
      const double emj = 1.0 / ej;
      a_term[static_cast<std::size_t>(j - 1)] = 0.5 * (ei * emj + emi * ej);
      b_term[static_cast<std::size_t>(j - 1)] = 0.5 * (ei - emi) * (ej - emj);
      linked[static_cast<std::size_t>(j - 1)] = g.has_edge(node_i, node_j) ? 1 : 0;
    }

    double best = std::numeric_limits<double>::infinity();
    double best_theta = 0.0;
    for (int gi = 0; gi < angle_grid; ++gi) {
      const double th = grid_step * static_cast<double>(gi);
      double loss = 0.0;
      for (int j = 1; j < i; ++j) {
        const double s = std::sin(0.5 * angular_difference(th, theta[static_cast<std::size_t>(j - 1)]));
        const double arg = a_term[static_cast<std::size_t>(j - 1)] +
                           s * s * b_term[static_cast<std::size_t>(j - 1)];
        const double x = std::acosh(std::max(arg, 1.0)) / prm.zeta;
        const double u = scale * (x - cutoff);
        loss += linked[static_cast<std::size_t>(j - 1)] ? softplus(u) : softplus(-u);
      }
      if (loss < best) {
        best = loss;
        best_theta = th;
      }
    }
    theta[static_cast<std::size_t>(i - 1)] = best_theta;
  }

  for (int k = 0; k < n; ++k) {
    emb.coords[static_cast<std::size_t>(emb.radial_order[static_cast<std::size_t>(k)])].theta =
        theta[static_cast<std::size_t>(k)];
  }
  return emb;
}

}  // namespace hypembed

#include "hypembed/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hypembed/rng.hpp"

namespace hypembed {

namespace {

// log(1 + e^u), finite and exact for every finite u.
inline double softplus(double u) {
  if (u > 0.0) return u + std::log1p(std::exp(-u));
  return std::log1p(std::exp(u));
}

}  // namespace

double global_connection_probability(double x, const EpsoParams& p) {
  return connection_probability(x, cutoff_radius(p.n_nodes, p, p.m), p);
}

Embedding assign_radial_coordinates(const Graph& g, const EpsoParams& p,
                                    DegreeKind kind, std::uint64_t tie_seed) {
  EpsoParams params = p;
  params.n_nodes = g.n_nodes();
  params.validate();
  const int n = g.n_nodes();
  if (n < 1) throw ParamError("assign_radial_coordinates needs N >= 1");

  const std::vector<int> deg = degrees(g, kind);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return deg[a] > deg[b]; });

  // permute each equal-degree run uniformly
  Rng rng(tie_seed);
  std::size_t lo = 0;
  while (lo < order.size()) {
    std::size_t hi = lo + 1;
    while (hi < order.size() && deg[order[hi]] == deg[order[lo]]) ++hi;
    if (hi - lo > 1) {
      for (std::size_t k = hi - lo; k > 1; --k) {
        std::swap(order[lo + k - 1], order[lo + rng.below(k)]);
      }
    }
    lo = hi;
  }

  Embedding emb;
  emb.params = params;
  emb.radial_order = order;
  emb.coords.resize(n);
  const double ln_n = std::log(static_cast<double>(n));
  for (int rank = 1; rank <= n; ++rank) {
    const double r = params.beta * (2.0 / params.zeta) * std::log(static_cast<double>(rank)) +
                     (1.0 - params.beta) * (2.0 / params.zeta) * ln_n;
    emb.coords[order[rank - 1]] = {r, 0.0};
  }
  return emb;
}

PairLoss::PairLoss(const Graph& g, const std::vector<PolarCoord>& coords,
                   const EpsoParams& p)
    : g_(g), coords_(coords) {
  if (!(p.temperature > 0.0)) throw ParamError("logarithmic loss requires T > 0");
  if (g.n_nodes() < 2) throw ParamError("logarithmic loss requires N >= 2");
  if (static_cast<int>(coords.size()) != g.n_nodes()) {
    throw DataError("coordinate count does not match node count");
  }
  EpsoParams params = p;
  params.n_nodes = g.n_nodes();
  zeta_ = params.zeta;
  scale_ = params.zeta / (2.0 * params.temperature);
  cutoff_ = cutoff_radius(params.n_nodes, params, params.m);
  const int n = g.n_nodes();
  exp_r_.resize(n);
  exp_mr_.resize(n);
  for (int v = 0; v < n; ++v) {
    if (!std::isfinite(coords[v].r) || !std::isfinite(coords[v].theta)) {
      throw DataError("non-finite coordinate at node " + std::to_string(v));
    }
    exp_r_[v] = std::exp(zeta_ * coords[v].r);
    exp_mr_[v] = std::exp(-zeta_ * coords[v].r);
  }
  mark_.assign(n, 0);
}

double PairLoss::pair_term(int a, double theta_a, int b) const {
  // cosh(zeta x) = cosh(zeta(r_a - r_b)) + 2 sin^2(dtheta/2) sinh sinh,
  // assembled from cached exponentials to keep the small-distance regime
  // accurate.
  const double s = std::sin(0.5 * angular_difference(theta_a, coords_[b].theta));
  const double arg = 0.5 * (exp_r_[a] * exp_mr_[b] + exp_mr_[a] * exp_r_[b]) +
                     0.5 * s * s * (exp_r_[a] - exp_mr_[a]) * (exp_r_[b] - exp_mr_[b]);
  const double x = std::acosh(std::max(arg, 1.0)) / zeta_;
  const double u = scale_ * (x - cutoff_);
  return mark_[b] ? softplus(u) : softplus(-u);
}

double PairLoss::node_loss(int node) const {
  return node_loss_at(node, coords_[node].theta);
}

double PairLoss::node_loss_at(int node, double theta) const {
  for (int w : g_.neighbors(node)) mark_[w] = 1;
  double sum = 0.0;
  for (int b = 0; b < g_.n_nodes(); ++b) {
    if (b == node) continue;
    sum += pair_term(node, theta, b);
  }
  for (int w : g_.neighbors(node)) mark_[w] = 0;
  return sum;
}

LossBreakdown PairLoss::full() const {
  LossBreakdown out;
  const int n = g_.n_nodes();
  for (int a = 0; a < n; ++a) {
    for (int w : g_.neighbors(a)) mark_[w] = 1;
    for (int b = a + 1; b < n; ++b) {
      const double term = pair_term(a, coords_[a].theta, b);
      if (mark_[b]) {
        out.edge_term += term;
      } else {
        out.non_edge_term += term;
      }
    }
    for (int w : g_.neighbors(a)) mark_[w] = 0;
  }
  out.total = out.edge_term + out.non_edge_term;
  return out;
}

LossBreakdown logarithmic_loss(const Graph& g, const Embedding& emb) {
  return PairLoss(g, emb.coords, emb.params).full();
}

double loss_delta_for_move(const Graph& g, const Embedding& emb, int node,
                           double new_theta) {
  if (node < 0 || node >= g.n_nodes()) throw std::out_of_range("node out of range");
  return PairLoss(g, emb.coords, emb.params).delta(node, new_theta);
}

std::vector<double> minimize_box_gd(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x, const std::vector<double>& lo,
    const std::vector<double>& hi, double step_factor, double tol,
    int max_iters) {
  const std::size_t dim = x.size();
  if (lo.size() != dim || hi.size() != dim) throw ParamError("bounds size mismatch");
  if (!(step_factor > 0.0 && step_factor < 1.0)) {
    throw ParamError("step_factor must be in (0, 1)");
  }
  for (std::size_t d = 0; d < dim; ++d) {
    if (!(lo[d] < hi[d])) throw ParamError("empty box in dimension " + std::to_string(d));
    x[d] = std::clamp(x[d], lo[d], hi[d]);
  }

  auto grad = [&](const std::vector<double>& at) {
    std::vector<double> g(dim, 0.0);
    std::vector<double> probe = at;
    for (std::size_t d = 0; d < dim; ++d) {
      const double h = 1e-4 * (hi[d] - lo[d]);
      const double up = std::min(at[d] + h, hi[d]);
      const double dn = std::max(at[d] - h, lo[d]);
      if (up > dn) {
        probe[d] = up;
        const double f_up = f(probe);
        probe[d] = dn;
        const double f_dn = f(probe);
        g[d] = (f_up - f_dn) / (up - dn);
      }
      probe[d] = at[d];
    }
    return g;
  };

  const std::vector<double> g0 = grad(x);
  std::vector<double> scale(dim, 0.0);
  for (std::size_t d = 0; d < dim; ++d) {
    if (g0[d] == 0.0) continue;
    const double dist = g0[d] > 0.0 ? x[d] - lo[d] : hi[d] - x[d];
    scale[d] = step_factor * dist / std::fabs(g0[d]);
  }

  std::vector<double> g = g0;
  for (int iter = 0; iter < max_iters; ++iter) {
    double step_norm2 = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      const double next = std::clamp(x[d] - scale[d] * g[d], lo[d], hi[d]);
      const double rel = (next - x[d]) / (hi[d] - lo[d]);
      step_norm2 += rel * rel;
      x[d] = next;
    }
    if (std::sqrt(step_norm2) < tol) break;
    g = grad(x);
  }
  return x;
}

EpsoParams estimate_parameters(const Graph& g, const Embedding& emb,
                               const EstimateOptions& opt) {
  const int n = g.n_nodes();
  if (n < 2) throw ParamError("parameter estimation needs N >= 2");
  const double mean_k = 2.0 * static_cast<double>(g.n_edges()) / n;
  const double m_hi = opt.m_hi > 0.0 ? opt.m_hi : std::max(2.0 * mean_k, opt.m_lo + 1e-6);
  std::vector<double> lo{opt.m_lo, opt.beta_lo, opt.t_lo};
  std::vector<double> hi{m_hi, opt.beta_hi, opt.t_hi};

  // Coordinates are pinned: precompute pair distances once (densely for
  // moderate N), leaving only the cutoff and the logistic scale to vary.
  const double zeta = emb.params.zeta;
  if (static_cast<int>(emb.coords.size()) != n) {
    throw DataError("embedding does not cover the graph");
  }
  std::vector<double> edge_x, non_edge_x;
  edge_x.reserve(g.n_edges());
  non_edge_x.reserve(static_cast<std::size_t>(n) * (n - 1) / 2 - g.n_edges());
  {
    std::vector<char> mark(n, 0);
    for (int a = 0; a < n; ++a) {
      for (int w : g.neighbors(a)) mark[w] = 1;
      for (int b = a + 1; b < n; ++b) {
        const double x = hyperbolic_distance(emb.coords[a], emb.coords[b], zeta);
        (mark[b] ? edge_x : non_edge_x).push_back(x);
      }
      for (int w : g.neighbors(a)) mark[w] = 0;
    }
  }

  auto loss_of = [&](const std::vector<double>& v) {
    EpsoParams q = emb.params;
    q.n_nodes = n;
    q.m = v[0];
    q.beta = v[1];
    q.temperature = v[2];
    const double cutoff = cutoff_radius(n, q, q.m);
    const double scale = q.zeta / (2.0 * q.temperature);
    double total = 0.0;
    for (double x : edge_x) total += softplus(scale * (x - cutoff));
    for (double x : non_edge_x) total += softplus(-scale * (x - cutoff));
    return total;
  };

  std::vector<double> start{opt.start[0] > 0.0 ? opt.start[0] : mean_k / 2.0,
                            opt.start[1], opt.start[2]};
  for (std::size_t d = 0; d < 3; ++d) start[d] = std::clamp(start[d], lo[d], hi[d]);
  if (!std::isfinite(loss_of(start))) {
    throw DataError("logarithmic loss is not finite at the starting point");
  }

  const std::vector<double> best =
      minimize_box_gd(loss_of, start, lo, hi, opt.step_factor, opt.tol);

  EpsoParams result = emb.params;
  result.n_nodes = n;
  result.m = best[0];
  result.beta = best[1];
  result.temperature = best[2];
  result.ell = mean_k / 2.0 - best[0];
  return result;
}

}  // namespace hypembed

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "hypembed/graph.hpp"
#include "hypembed/pso.hpp"

namespace hypembed {

// Node arrangement on the native disk plus the radial law that produced it.
// radial_order lists node ids innermost first; the node at rank k (1-based)
// carries r = beta (2/zeta) ln k + (1-beta) (2/zeta) ln N.
struct Embedding {
  std::vector<PolarCoord> coords;
  std::vector<int> radial_order;
  EpsoParams params;
};

struct LossBreakdown {
  double total = 0.0;
  double edge_term = 0.0;
  double non_edge_term = 0.0;
};

// Logistic link probability under the whole-network cutoff R_N (computed
// with m_eff = m). Requires T > 0.
[[nodiscard]] double global_connection_probability(double x, const EpsoParams& p);

// Rank nodes by descending degree of the chosen kind (ties permuted
// uniformly by tie_seed) and assign the radial law. Angles are left at 0.
// p.n_nodes is overridden by the graph's node count.
[[nodiscard]] Embedding assign_radial_coordinates(const Graph& g, const EpsoParams& p,
                                                  DegreeKind kind,
                                                  std::uint64_t tie_seed);

// Incremental loss evaluator shared by the full loss, per-move deltas, and
// the angular optimizer. Holds a reference to the embedding's coordinate
// vector: callers may change angles between calls, radii must stay fixed.
class PairLoss {
 public:
  PairLoss(const Graph& g, const std::vector<PolarCoord>& coords,
           const EpsoParams& p);

  [[nodiscard]] LossBreakdown full() const;
  // Sum of the node's N-1 pair terms at its current angle...
  [[nodiscard]] double node_loss(int node) const;
  // ...and at a hypothetical angle.
  [[nodiscard]] double node_loss_at(int node, double theta) const;
  [[nodiscard]] double delta(int node, double new_theta) const {
    return node_loss_at(node, new_theta) - node_loss(node);
  }
  [[nodiscard]] double cutoff() const { return cutoff_; }

 private:
  [[nodiscard]] double pair_term(int a, double theta_a, int b) const;

  const Graph& g_;
  const std::vector<PolarCoord>& coords_;
  double zeta_, scale_, cutoff_;
  std::vector<double> exp_r_, exp_mr_;  // e^{zeta r}, e^{-zeta r} per node
  mutable std::vector<char> mark_;      // neighbor scratch
};

// Logarithmic loss over all unordered pairs. Requires T > 0,
// N >= 2, finite coordinates.
[[nodiscard]] LossBreakdown logarithmic_loss(const Graph& g, const Embedding& emb);

// Loss change if `node` moved to new_theta, from the node's N-1 pair terms
// only.
[[nodiscard]] double loss_delta_for_move(const Graph& g, const Embedding& emb,
                                         int node, double new_theta);

// Box-constrained gradient descent with per-direction step scales:
// the first step along -grad covers step_factor x the distance to the bound
// in each direction; later steps use the fixed scale first_step/|grad0|.
// Gradients are central finite differences with step 1e-4 of each box width.
// Stops when the step, normalized by box widths, drops below tol.
[[nodiscard]] std::vector<double> minimize_box_gd(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x, const std::vector<double>& lo,
    const std::vector<double>& hi, double step_factor, double tol,
    int max_iters = 500);

struct EstimateOptions {
  std::array<double, 3> start{0.0, 0.5, 0.5};  // m (0 = <k>/2), beta, T
  double m_lo = 1.0;
  double m_hi = 0.0;  // 0 = 2<k>
  double beta_lo = 0.1, beta_hi = 0.99;
  double t_lo = 0.1, t_hi = 0.99;
  double step_factor = 0.1;
  double tol = 1e-4;
};

// Fit (m, beta, T) by descending the logarithmic loss with the embedding's
// coordinates held fixed (the objective varies through the cutoff R_N and the
// logistic scale only). Returns params with ell = <k>/2 - m, which may be
// negative.
[[nodiscard]] EpsoParams estimate_parameters(const Graph& g, const Embedding& emb,
                                             const EstimateOptions& opt = {});

}  // namespace hypembed

#include "hypembed/angular_opt.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>

#include "hypembed/errors.hpp"
#include "hypembed/hyperbolic.hpp"

namespace hypembed {

namespace {

// Cyclic angular order, ascending (theta, id). pos_ inverts order_.
class AngularOrder {
 public:
  explicit AngularOrder(const std::vector<PolarCoord>& coords) : coords_(coords) {
    const int n = static_cast<int>(coords.size());
    order_.resize(static_cast<std::size_t>(n));
    std::iota(order_.begin(), order_.end(), 0);
    std::sort(order_.begin(), order_.end(),
              [&](int a, int b) { return less(a, b); });
    pos_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pos_[static_cast<std::size_t>(order_[i])] = i;
  }

  [[nodiscard]] int at_offset(int node, int off) const {
    const int n = static_cast<int>(order_.size());
    const int p = ((pos_[static_cast<std::size_t>(node)] + off) % n + n) % n;
    return order_[static_cast<std::size_t>(p)];
  }

  // Re-place node after its angle changed in coords_.
  void reposition(int node) {
    const int old_p = pos_[static_cast<std::size_t>(node)];
    order_.erase(order_.begin() + old_p);
    const auto it = std::lower_bound(order_.begin(), order_.end(), node,
                                     [&](int a, int b) { return less(a, b); });
    const int new_p = static_cast<int>(it - order_.begin());
    order_.insert(it, node);
    const int lo = std::min(old_p, new_p);
    const int hi = std::max(old_p, new_p);
    for (int i = lo; i <= hi; ++i) pos_[static_cast<std::size_t>(order_[i])] = i;
  }

 private:
  [[nodiscard]] bool less(int a, int b) const {
    const double ta = coords_[static_cast<std::size_t>(a)].theta;
    const double tb = coords_[static_cast<std::size_t>(b)].theta;
    if (ta != tb) return ta < tb;
    return a < b;
  }

  const std::vector<PolarCoord>& coords_;
  std::vector<int> order_;
  std::vector<int> pos_;
};

void fill_candidates(const AngularOrder& ord, const std::vector<PolarCoord>& coords,
                     int node, int rank, int q, std::vector<double>& out) {
  const int a = ord.at_offset(node, -rank);
  const int b = ord.at_offset(node, +rank);
  const double alpha = coords[static_cast<std::size_t>(a)].theta;
  const double width = normalize_angle(coords[static_cast<std::size_t>(b)].theta - alpha);
  out.clear();
  for (int k = 1; k <= q; ++k) {
    out.push_back(normalize_angle(
        alpha + width * static_cast<double>(k) / static_cast<double>(q + 1)));
  }
}

RoundStats sweep(PairLoss& pl, AngularOrder& ord, std::vector<PolarCoord>& coords,
                 const std::vector<int>& radial_order, bool swapping, int q,
                 double& ll) {
  RoundStats st;
  st.swapping = swapping;
  const int n = static_cast<int>(coords.size());
  int rank = swapping ? 2 : 1;
  if (2 * rank + 1 > n) rank = 1;

  std::vector<double> cand;
  for (const int node : radial_order) {
    const double base = pl.node_loss(node);
    fill_candidates(ord, coords, node, rank, q, cand);
    double best = base;
    double best_theta = 0.0;
    for (const double theta : cand) {
      const double value = pl.node_loss_at(node, theta);
      ++st.candidate_evals;
      if (value < best) {
        best = value;
        best_theta = theta;
      }
    }
    if (best < base) {
      coords[static_cast<std::size_t>(node)].theta = best_theta;
      ord.reposition(node);
      ll += best - base;
      ++st.accepted_moves;
    }
  }
  st.ll_after = ll;
  return st;
}

void check_schedule(const OptimizerSchedule& s) {
  if (s.swap_rounds < 0) throw ParamError("swap_rounds must be >= 0");
  if (s.noswap_rounds < 0) throw ParamError("noswap_rounds must be >= 0");
  if (s.q < 1) throw ParamError("q must be >= 1");
  if (s.stop_rel_tol && !(*s.stop_rel_tol > 0.0)) {
    throw ParamError("stop_rel_tol must be > 0 when set");
  }
}

void check_embedding(const Graph& g, const Embedding& emb) {
  if (emb.coords.size() != static_cast<std::size_t>(g.n_nodes()) ||
      emb.radial_order.size() != emb.coords.size()) {
    throw ParamError("embedding does not match the graph's node count");
  }
  if (!(emb.params.temperature > 0.0)) {
    throw ParamError("angular optimization needs temperature > 0");
  }
}

}  // namespace

std::vector<double> candidate_positions(const Embedding& emb, int node,
                                        int neighbor_rank, int q) {
  const int n = static_cast<int>(emb.coords.size());
  if (neighbor_rank < 1) throw ParamError("neighbor_rank must be >= 1");
  if (q < 1) throw ParamError("q must be >= 1");
  if (node < 0 || node >= n) throw ParamError("node id out of range");
  if (n < 2 * neighbor_rank + 1) {
    throw ParamError("degenerate arc: need at least 2*neighbor_rank + 1 nodes");
  }
  AngularOrder ord(emb.coords);
  std::vector<double> out;
  fill_candidates(ord, emb.coords, node, neighbor_rank, q, out);
  return out;
}

std::pair<Embedding, RoundStats> optimize_round(const Graph& g, Embedding emb,
                                                bool swapping, int q) {
  if (q < 1) throw ParamError("q must be >= 1");
  check_embedding(g, emb);
  RoundStats st;
  st.swapping = swapping;
  if (g.n_nodes() <= 2) {
    st.ll_after = logarithmic_loss(g, emb).total;
    return {std::move(emb), st};
  }
  PairLoss pl(g, emb.coords, emb.params);
  double ll = pl.full().total;
  AngularOrder ord(emb.coords);
  st = sweep(pl, ord, emb.coords, emb.radial_order, swapping, q, ll);
  return {std::move(emb), st};
}

std::pair<Embedding, OptimizationTrace> optimize(const Graph& g, Embedding emb,
                                                 const OptimizerSchedule& sched) {
  check_schedule(sched);
  check_embedding(g, emb);
  OptimizationTrace tr;
  const int total_rounds = sched.swap_rounds + sched.noswap_rounds;
  if (g.n_nodes() <= 2 || total_rounds == 0) {
    tr.ll_initial = logarithmic_loss(g, emb).total;
    return {std::move(emb), tr};
  }

  PairLoss pl(g, emb.coords, emb.params);
  tr.ll_initial = pl.full().total;
  double ll = tr.ll_initial;
  AngularOrder ord(emb.coords);
  for (int r = 0; r < total_rounds; ++r) {
    const bool swapping = r < sched.swap_rounds;
    const double prev = ll;
    RoundStats st = sweep(pl, ord, emb.coords, emb.radial_order, swapping, sched.q, ll);
    tr.rounds.push_back(st);
    tr.candidate_evals += st.candidate_evals;
    if (sched.stop_rel_tol) {
      const double rel = prev > 0.0 ? (prev - ll) / prev : 0.0;
      if (rel < *sched.stop_rel_tol) break;
    }
  }
  return {std::move(emb), tr};
}

}  // namespace hypembed

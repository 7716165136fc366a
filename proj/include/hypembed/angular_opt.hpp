#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hypembed/graph.hpp"
#include "hypembed/likelihood.hpp"

namespace hypembed {

struct OptimizerSchedule {
  int swap_rounds = 5;
  int noswap_rounds = 3;
  int q = 6;
  // Unset = run every round; set = stop once a round's relative loss
  // improvement falls below this.
  std::optional<double> stop_rel_tol;
};

struct RoundStats {
  bool swapping = false;
  double ll_after = 0.0;
  int accepted_moves = 0;
  long long candidate_evals = 0;
};

struct OptimizationTrace {
  double ll_initial = 0.0;
  std::vector<RoundStats> rounds;
  long long candidate_evals = 0;
};

// The q trial angles for one node: the arc between its rank-th angular
// neighbors on either side (counterclockwise from the lower one, so it
// contains the node's current angle) is split into q+1 equal parts and the
// interior division points are returned. Needs N >= 2*rank + 1, else a
// degenerate-arc ParamError.
[[nodiscard]] std::vector<double> candidate_positions(const Embedding& emb, int node,
                                                      int neighbor_rank, int q);

// One sweep over the nodes in radial order (innermost first). Swapping
// rounds use rank-2 arcs so a node may hop past its immediate neighbor;
// non-swapping rounds use rank-1 arcs. Every node evaluates exactly q
// candidates and moves to the best one only on strict improvement; later
// nodes in the same sweep see the move.
[[nodiscard]] std::pair<Embedding, RoundStats> optimize_round(const Graph& g, Embedding emb,
                                                              bool swapping, int q);

// swap_rounds swapping sweeps followed by noswap_rounds plain ones.
// Networks with N <= 2 are returned untouched (no meaningful arc exists);
// N <= 2*2 falls back to rank-1 arcs in swapping rounds.
[[nodiscard]] std::pair<Embedding, OptimizationTrace> optimize(const Graph& g, Embedding emb,
                                                               const OptimizerSchedule& sched = {});

}  // namespace hypembed

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypembed/angular_opt.hpp"
#include "hypembed/graph.hpp"
#include "hypembed/likelihood.hpp"

namespace hypembed {

struct QualityReport {
  std::string method;
  std::uint64_t seed = 0;  // the tie permutation seed that produced the layout
  int rounds = 0;          // optimizer rounds actually run
  double logloss = 0.0;
  double gr_score = 0.0;       // in [0, success_ratio]
  double success_ratio = 0.0;  // in [0, 1]
};

struct ExtremeValueFit {
  double mu = 0.0;
  double sigma = 0.0;  // >= 0
  double r_squared = 0.0;
};

enum class FitDirection { min, max };

// Walk from source towards dest, hopping to the neighbor closest to dest in
// hyperbolic distance (ties to the lowest id). Returns the hop count, or
// nullopt once no neighbor is strictly closer than the current node or after
// N hops. Meaningful on connected graphs; ids are range-checked, source must
// differ from dest.
[[nodiscard]] std::optional<int> greedy_route(const Graph& g, const Embedding& emb,
                                              int source, int dest);

struct GreedyScore {
  double gr_score = 0.0;
  double success_ratio = 0.0;
};

// GR = mean over ordered pairs of (shortest-path length) / (greedy hop
// count), failed walks contributing 0; success_ratio = completed fraction.
// Requires a connected graph with N >= 2.
[[nodiscard]] GreedyScore greedy_routing_score(const Graph& g, const Embedding& emb);

// For each threshold: mean degree of the subgraph induced on nodes whose
// total degree exceeds it; nullopt when no node qualifies.
[[nodiscard]] std::vector<std::pair<int, std::optional<double>>> internal_degree_curve(
    const Graph& g, const std::vector<int>& thresholds);

// Expected extreme of n_s standard normal draws:
// g(n) = sqrt(2 ln n) - [ln ln n + ln 4pi - 2 Gamma] / (2 sqrt(2 ln n)).
// Requires n_s >= 2.
[[nodiscard]] double gumbel_correction(long long n_s);

// Least-squares fit of mu -+ sigma g(n) to a best-so-far series (minus for
// direction=min, plus for max). sigma is clamped to >= 0 (the series mean is
// then the location). A constant series fits exactly: sigma = 0,
// r_squared = 1. Needs >= 3 points, every n >= 2.
[[nodiscard]] ExtremeValueFit fit_best_of_n(
    const std::vector<std::pair<long long, double>>& best_so_far, FitDirection direction);

struct RepeatOptions {
  DegreeKind kind = DegreeKind::total;
  OptimizerSchedule schedule{};  // ncmce-opt only
  int angle_grid = 360;          // hypermap only
};

struct RepeatResult {
  std::vector<QualityReport> reports;
  std::vector<double> best_ll;  // cumulative minimum over trials
  std::vector<double> best_gr;  // cumulative maximum over trials
};

// n_s embeddings of the same graph and parameters, differing only in the
// radial tie permutation; trial t uses tie seed mix(seed, t). method is one
// of ncmce | ncmce-opt | hypermap.
[[nodiscard]] RepeatResult repeat_embeddings(const Graph& g, const std::string& method,
                                             const EpsoParams& p, int n_s,
                                             std::uint64_t seed,
                                             const RepeatOptions& opt = {});

}  // namespace hypembed

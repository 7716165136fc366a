#include "hypembed/quality.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>

#include "hypembed/errors.hpp"
#include "hypembed/hypermap.hpp"
#include "hypembed/hyperbolic.hpp"
#include "hypembed/ncmce.hpp"
#include "hypembed/rng.hpp"

namespace hypembed {

namespace {

// Monotone surrogate for hyperbolic distance built from per-node
// exponentials; cheaper than acosh on the routing hot path.
struct DistanceKeys {
  explicit DistanceKeys(const std::vector<PolarCoord>& coords, double zeta)
      : coords_(coords) {
    const std::size_t n = coords.size();
    exp_r_.resize(n);
    exp_mr_.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
      exp_r_[v] = std::exp(zeta * coords[v].r);
      exp_mr_[v] = std::exp(-zeta * coords[v].r);
    }
  }

  [[nodiscard]] double key(int a, int b) const {
    const auto ia = static_cast<std::size_t>(a);
    const auto ib = static_cast<std::size_t>(b);
    const double s =
        std::sin(0.5 * angular_difference(coords_[ia].theta, coords_[ib].theta));
    return 0.5 * (exp_r_[ia] * exp_mr_[ib] + exp_mr_[ia] * exp_r_[ib]) +
           0.5 * s * s * (exp_r_[ia] - exp_mr_[ia]) * (exp_r_[ib] - exp_mr_[ib]);
  }

  const std::vector<PolarCoord>& coords_;
  std::vector<double> exp_r_, exp_mr_;
};

std::optional<int> walk(const Graph& g, const DistanceKeys& keys, int source, int dest) {
  const int n = g.n_nodes();
  int cur = source;
  double cur_key = keys.key(cur, dest);
  int hops = 0;
  for (;;) {
    if (cur == dest) return hops;
    if (hops >= n) return std::nullopt;
    int best = -1;
    double best_key = cur_key;
    for (const int nb : g.neighbors(cur)) {  // ascending ids, so ties keep the lowest
      const double k = keys.key(nb, dest);
      if (k < best_key) {
        best_key = k;
        best = nb;
      }
    }
    if (best < 0) return std::nullopt;
    cur = best;
    cur_key = best_key;
    ++hops;
  }
}

void check_embedding_size(const Graph& g, const Embedding& emb) {
  if (emb.coords.size() != static_cast<std::size_t>(g.n_nodes())) {
    throw DataError("coordinate count does not match node count");
  }
}

}  // namespace

std::optional<int> greedy_route(const Graph& g, const Embedding& emb, int source, int dest) {
  check_embedding_size(g, emb);
  if (source < 0 || source >= g.n_nodes() || dest < 0 || dest >= g.n_nodes()) {
    throw std::out_of_range("greedy_route: node id out of range");
  }
  if (source == dest) throw ParamError("greedy_route needs source != dest");
  DistanceKeys keys(emb.coords, emb.params.zeta);
  return walk(g, keys, source, dest);
}

GreedyScore greedy_routing_score(const Graph& g, const Embedding& emb) {
  check_embedding_size(g, emb);
  const int n = g.n_nodes();
  if (n < 2) throw ParamError("greedy_routing_score needs N >= 2");
  if (!is_connected(g)) {
    throw ConnectivityError("greedy routing needs a connected graph (" +
                            std::to_string(component_count(g)) + " components)");
  }
  DistanceKeys keys(emb.coords, emb.params.zeta);
  double sum = 0.0;
  long long successes = 0;
  for (int s = 0; s < n; ++s) {
    const auto sp = shortest_path_lengths(g, s);
    for (int d = 0; d < n; ++d) {
      if (d == s) continue;
      const auto hops = walk(g, keys, s, d);
      if (hops) {
        sum += static_cast<double>(sp[static_cast<std::size_t>(d)]) /
               static_cast<double>(*hops);
        ++successes;
      }
    }
  }
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1);
  return {sum / pairs, static_cast<double>(successes) / pairs};
}

std::vector<std::pair<int, std::optional<double>>> internal_degree_curve(
    const Graph& g, const std::vector<int>& thresholds) {
  const auto deg = degrees(g, DegreeKind::total);
  std::vector<std::pair<int, std::optional<double>>> out;
  out.reserve(thresholds.size());
  for (const int k_min : thresholds) {
    long long kept = 0;
    for (const int d : deg) {
      if (d > k_min) ++kept;
    }
    if (kept == 0) {
      out.emplace_back(k_min, std::nullopt);
      continue;
    }
    long long internal = 0;
    for (const auto& [u, v] : g.edges()) {
      if (deg[static_cast<std::size_t>(u)] > k_min &&
          deg[static_cast<std::size_t>(v)] > k_min) {
        ++internal;
      }
    }
    out.emplace_back(k_min, 2.0 * static_cast<double>(internal) / static_cast<double>(kept));
  }
  return out;
}

double gumbel_correction(long long n_s) {
  if (n_s < 2) throw ParamError("gumbel_correction needs n_s >= 2");
  constexpr double kEulerGamma = 0.5772156649;
  const double ln_n = std::log(static_cast<double>(n_s));
  const double root = std::sqrt(2.0 * ln_n);
  return root - (std::log(ln_n) + std::log(4.0 * std::numbers::pi) - 2.0 * kEulerGamma) /
                    (2.0 * root);
}

ExtremeValueFit fit_best_of_n(const std::vector<std::pair<long long, double>>& best_so_far,
                              FitDirection direction) {
  if (best_so_far.size() < 3) throw ParamError("fit_best_of_n needs at least 3 points");
  const double sign = direction == FitDirection::min ? -1.0 : 1.0;
  const std::size_t n = best_so_far.size();
  std::vector<double> t(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = gumbel_correction(best_so_far[i].first);  // rejects n_s < 2
    y[i] = best_so_far[i].second;
  }
  double t_mean = 0.0, y_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    t_mean += t[i];
    y_mean += y[i];
  }
  t_mean /= static_cast<double>(n);
  y_mean /= static_cast<double>(n);
  double s_tt = 0.0, s_ty = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s_tt += (t[i] - t_mean) * (t[i] - t_mean);
    s_ty += (t[i] - t_mean) * (y[i] - y_mean);
  }
  const double slope = s_tt > 0.0 ? s_ty / s_tt : 0.0;
  ExtremeValueFit fit;
  fit.sigma = std::max(sign * slope, 0.0);
  fit.mu = y_mean - sign * fit.sigma * t_mean;
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double pred = fit.mu + sign * fit.sigma * t[i];
    ss_res += (y[i] - pred) * (y[i] - pred);
    ss_tot += (y[i] - y_mean) * (y[i] - y_mean);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

RepeatResult repeat_embeddings(const Graph& g, const std::string& method,
                               const EpsoParams& p, int n_s, std::uint64_t seed,
                               const RepeatOptions& opt) {
  if (n_s < 1) throw ParamError("repeat_embeddings needs n_s >= 1");
  if (method != "ncmce" && method != "ncmce-opt" && method != "hypermap") {
    throw ParamError("unknown method '" + method + "' (expected ncmce, ncmce-opt or hypermap)");
  }
  RepeatResult out;
  out.reports.reserve(static_cast<std::size_t>(n_s));
  for (int trial = 0; trial < n_s; ++trial) {
    const std::uint64_t tie_seed = Rng::mix(seed, static_cast<std::uint64_t>(trial));
    Embedding emb;
    int rounds = 0;
    if (method == "hypermap") {
      emb = hypermap_embed(g, p, opt.kind, tie_seed, opt.angle_grid);
    } else {
      emb = ncmce_embed(g, p, opt.kind, tie_seed);
      if (method == "ncmce-opt") {
        auto [opted, trace] = optimize(g, std::move(emb), opt.schedule);
        emb = std::move(opted);
        rounds = static_cast<int>(trace.rounds.size());
      }
    }
    QualityReport rep;
    rep.method = method;
    rep.seed = tie_seed;
    rep.rounds = rounds;
    rep.logloss = logarithmic_loss(g, emb).total;
    const auto gs = greedy_routing_score(g, emb);
    rep.gr_score = gs.gr_score;
    rep.success_ratio = gs.success_ratio;
    out.reports.push_back(std::move(rep));

    const double ll = out.reports.back().logloss;
    const double gr = out.reports.back().gr_score;
    if (trial == 0) {
      out.best_ll.push_back(ll);
      out.best_gr.push_back(gr);
    } else {
      out.best_ll.push_back(std::min(out.best_ll.back(), ll));
      out.best_gr.push_back(std::max(out.best_gr.back(), gr));
    }
  }
  return out;
}

}  // namespace hypembed

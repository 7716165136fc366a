#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "hypembed/angular_opt.hpp"
#include "hypembed/errors.hpp"
#include "hypembed/graph.hpp"
#include "hypembed/likelihood.hpp"
#include "hypembed/ncmce.hpp"
#include "hypembed/pso.hpp"
#include "hypembed/rng.hpp"

using namespace hypembed;

namespace {

constexpr double kPi = std::numbers::pi;

EpsoParams make_params(int n, double t = 0.3) {
  EpsoParams p;
  p.n_nodes = n;
  p.m = 2.0;
  p.beta = 0.6;
  p.temperature = t;
  return p;
}

// A connected PSO instance embedded by ncMCE, the optimizer's natural input.
std::pair<Graph, Embedding> pso_ncmce_instance(int n, std::uint64_t seed) {
  const GeneratedNetwork net = pso_generate(make_params(n), seed);
  const Graph lcc = largest_component_subgraph(net.graph);
  EpsoParams p = make_params(lcc.n_nodes());
  return {lcc, ncmce_embed(lcc, p, DegreeKind::total, seed)};
}

Embedding uniform_circle(int n, const EpsoParams& p) {
  Embedding emb;
  emb.params = p;
  emb.params.n_nodes = n;
  for (int v = 0; v < n; ++v) {
    emb.coords.push_back({1.0 + 0.01 * v, 2.0 * kPi * v / n});
    emb.radial_order.push_back(v);
  }
  return emb;
}

// The circular interval (a, b) going counterclockwise from a, as a width.
double ccw_width(double a, double b) {
  double w = b - a;
  while (w <= 0.0) w += 2.0 * kPi;
  return w;
}

bool inside_ccw(double a, double width, double x) {
  double off = x - a;
  while (off < 0.0) off += 2.0 * kPi;
  while (off >= 2.0 * kPi) off -= 2.0 * kPi;
  return off > 0.0 && off < width;
}

}  // namespace

TEST_CASE("candidate_positions subdivides the neighbor arc") {
  const Embedding emb = uniform_circle(5, make_params(5));
  const int node = 2;
  const double theta = emb.coords[node].theta;
  const std::vector<double> cand = candidate_positions(emb, node, 1, 3);
  REQUIRE(cand.size() == 3);
  // Arc runs from theta - 2pi/5 to theta + 2pi/5; quarters land at
  // theta - pi/5, theta, theta + pi/5.
  CHECK(cand[0] == doctest::Approx(theta - kPi / 5.0).epsilon(1e-12));
  CHECK(cand[1] == doctest::Approx(theta).epsilon(1e-12));
  CHECK(cand[2] == doctest::Approx(theta + kPi / 5.0).epsilon(1e-12));
  for (double c : cand) {
    CHECK(inside_ccw(theta - 2.0 * kPi / 5.0, 4.0 * kPi / 5.0, c));
  }
}

TEST_CASE("rank-2 arcs strictly contain rank-1 arcs") {
  const Embedding emb = uniform_circle(7, make_params(7));
  for (int node = 0; node < 7; ++node) {
    const std::vector<double> r1 = candidate_positions(emb, node, 1, 5);
    const std::vector<double> r2 = candidate_positions(emb, node, 2, 5);
    const double a1 = emb.coords[(node + 6) % 7].theta;
    const double a2 = emb.coords[(node + 5) % 7].theta;
    const double w1 = ccw_width(a1, emb.coords[(node + 1) % 7].theta);
    const double w2 = ccw_width(a2, emb.coords[(node + 2) % 7].theta);
    CHECK(w2 > w1);
    for (double c : r1) CHECK(inside_ccw(a2, w2, c));
    // Rank-2 candidates reach outside the rank-1 arc (that is what lets a
    // swapping round change the angular order).
    int outside = 0;
    for (double c : r2) {
      if (!inside_ccw(a1, w1, c)) ++outside;
    }
    CHECK(outside > 0);
  }
}

TEST_CASE("candidate_positions with q = 1 returns the arc midpoint") {
  const Embedding emb = uniform_circle(9, make_params(9));
  const std::vector<double> cand = candidate_positions(emb, 4, 1, 1);
  REQUIRE(cand.size() == 1);
  CHECK(cand[0] == doctest::Approx(emb.coords[4].theta).epsilon(1e-12));
}

TEST_CASE("candidate_positions rejects degenerate arcs and bad arguments") {
  const EpsoParams p = make_params(4);
  const Embedding four = uniform_circle(4, p);
  CHECK_THROWS_WITH_AS((void)candidate_positions(four, 0, 2, 6),
                       doctest::Contains("degenerate"), ParamError);
  const Embedding two = uniform_circle(2, make_params(2));
  CHECK_THROWS_AS((void)candidate_positions(two, 0, 1, 6), ParamError);
  CHECK_THROWS_AS((void)candidate_positions(four, 9, 1, 6), ParamError);
  CHECK_THROWS_AS((void)candidate_positions(four, 0, 1, 0), ParamError);
}

TEST_CASE("optimize_round never raises the loss") {
  for (std::uint64_t seed : {3u, 4u, 5u}) {
    const auto [g, emb] = pso_ncmce_instance(60, seed);
    const double before = logarithmic_loss(g, emb).total;
    for (bool swapping : {true, false}) {
      const auto [after, stats] = optimize_round(g, emb, swapping, 6);
      CHECK(stats.ll_after <= before + 1e-9);
      CHECK(stats.ll_after ==
            doctest::Approx(logarithmic_loss(g, after).total).epsilon(1e-8));
      CHECK(stats.swapping == swapping);
      CHECK(stats.candidate_evals == static_cast<long long>(g.n_nodes()) * 6);
    }
  }
}

TEST_CASE("non-swapping rounds preserve the cyclic angular order") {
  const auto [g, emb] = pso_ncmce_instance(50, 12);
  const int n = g.n_nodes();
  auto order_of = [&](const Embedding& e) {
    std::vector<int> ids(n);
    for (int v = 0; v < n; ++v) ids[v] = v;
    std::sort(ids.begin(), ids.end(), [&](int x, int y) {
      return std::make_pair(e.coords[x].theta, x) < std::make_pair(e.coords[y].theta, y);
    });
    // Rotate so the sequence starts at node 0: cyclic order comparison.
    const auto zero = std::find(ids.begin(), ids.end(), 0);
    std::rotate(ids.begin(), zero, ids.end());
    return ids;
  };
  Embedding cur = emb;
  for (int round = 0; round < 3; ++round) {
    const std::vector<int> before = order_of(cur);
    auto [next, stats] = optimize_round(g, cur, false, 6);
    CHECK(order_of(next) == before);
    cur = std::move(next);
  }
}

TEST_CASE("a fixed point of the optimizer accepts no moves") {
  // Tiny instance: run non-swapping rounds to convergence, then confirm by
  // independent full-loss evaluation that no candidate improves.
  const Graph g(3, {{0, 1}, {1, 2}});
  const EpsoParams p = make_params(3, 0.5);
  Embedding emb = assign_radial_coordinates(g, p, DegreeKind::total, 1);
  emb.coords[0].theta = 0.3;
  emb.coords[1].theta = 2.8;
  emb.coords[2].theta = 4.4;

  int accepted = -1;
  for (int round = 0; round < 200 && accepted != 0; ++round) {
    auto [next, stats] = optimize_round(g, emb, false, 6);
    accepted = stats.accepted_moves;
    emb = std::move(next);
  }
  REQUIRE(accepted == 0);

  // Determinism: the fixed point stays fixed.
  const auto [again, stats2] = optimize_round(g, emb, false, 6);
  CHECK(stats2.accepted_moves == 0);

  // Brute-force confirmation off the optimizer's code path.
  const double base = logarithmic_loss(g, emb).total;
  for (int node = 0; node < 3; ++node) {
    for (double cand : candidate_positions(emb, node, 1, 6)) {
      Embedding probe = emb;
      probe.coords[node].theta = normalize_angle(cand);
      CHECK(logarithmic_loss(g, probe).total >= base - 1e-12);
    }
  }
}

TEST_CASE("optimize with an empty schedule is the identity") {
  const auto [g, emb] = pso_ncmce_instance(40, 6);
  OptimizerSchedule sched;
  sched.swap_rounds = 0;
  sched.noswap_rounds = 0;
  const auto [out, trace] = optimize(g, emb, sched);
  CHECK(trace.rounds.empty());
  CHECK(trace.candidate_evals == 0);
  CHECK(trace.ll_initial == doctest::Approx(logarithmic_loss(g, emb).total));
  for (int v = 0; v < g.n_nodes(); ++v) {
    CHECK(out.coords[v].theta == emb.coords[v].theta);
    CHECK(out.coords[v].r == emb.coords[v].r);
  }
}

TEST_CASE("optimize traces a non-increasing loss and exact evaluation counts") {
  const auto [g, emb] = pso_ncmce_instance(80, 9);
  OptimizerSchedule sched;
  sched.swap_rounds = 3;
  sched.noswap_rounds = 2;
  const auto [out, trace] = optimize(g, emb, sched);
  REQUIRE(trace.rounds.size() == 5);
  double prev = trace.ll_initial;
  for (const RoundStats& r : trace.rounds) {
    CHECK(r.ll_after <= prev + 1e-9);
    prev = r.ll_after;
  }
  CHECK(trace.rounds[0].swapping);
  CHECK_FALSE(trace.rounds[4].swapping);
  const long long expected = 5LL * g.n_nodes() * 6;
  CHECK(trace.candidate_evals == expected);
  CHECK(prev == doctest::Approx(logarithmic_loss(g, out).total).epsilon(1e-8));

  // Radii are untouched by angular optimization.
  for (int v = 0; v < g.n_nodes(); ++v) CHECK(out.coords[v].r == emb.coords[v].r);
}

TEST_CASE("optimize improves the ncMCE starting point") {
  const auto [g, emb] = pso_ncmce_instance(80, 14);
  const auto [out, trace] = optimize(g, emb, {});
  CHECK(trace.rounds.back().ll_after < trace.ll_initial);
}

TEST_CASE("stop_rel_tol halts after the first round when set huge") {
  const auto [g, emb] = pso_ncmce_instance(50, 10);
  OptimizerSchedule sched;
  sched.swap_rounds = 4;
  sched.noswap_rounds = 4;
  sched.stop_rel_tol = 1.0;  // no round can improve the loss by 100%
  const auto [out, trace] = optimize(g, emb, sched);
  CHECK(trace.rounds.size() == 1);
}

TEST_CASE("small instances fall back gracefully") {
  // N <= 2: untouched.
  const Graph pair(2, {{0, 1}});
  Embedding emb = assign_radial_coordinates(pair, make_params(2), DegreeKind::total, 1);
  emb.coords[1].theta = 1.0;
  const auto [out, trace] = optimize(pair, emb, {});
  CHECK(out.coords[0].theta == emb.coords[0].theta);
  CHECK(out.coords[1].theta == emb.coords[1].theta);
  CHECK(trace.rounds.empty());

  // N = 4 with swapping rounds: rank-1 fallback, no throw.
  const Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  Embedding e4 = assign_radial_coordinates(k4, make_params(4), DegreeKind::total, 1);
  for (int v = 0; v < 4; ++v) e4.coords[v].theta = 1.0 + v;
  OptimizerSchedule sched;
  sched.swap_rounds = 2;
  sched.noswap_rounds = 1;
  CHECK_NOTHROW((void)optimize(k4, e4, sched));
}

TEST_CASE("optimizer validates its inputs") {
  const auto [g, emb] = pso_ncmce_instance(30, 2);
  OptimizerSchedule bad;
  bad.q = 0;
  CHECK_THROWS_AS((void)optimize(g, emb, bad), ParamError);
  bad.q = 6;
  bad.swap_rounds = -1;
  CHECK_THROWS_AS((void)optimize(g, emb, bad), ParamError);

  Embedding cold = emb;
  cold.params.temperature = 0.0;
  CHECK_THROWS_AS((void)optimize(g, cold, {}), ParamError);
}

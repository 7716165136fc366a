#pragma once

#include <cstdint>
#include <vector>

#include "hypembed/graph.hpp"
#include "hypembed/hyperbolic.hpp"

namespace hypembed {

// Model/loss parameter bundle shared by the generators, the loss, and the
// estimators.
struct EpsoParams {
  double zeta = 1.0;        // curvature K = -zeta^2, zeta > 0
  int n_nodes = 1;          // N >= 1
  double m = 2.0;           // external links per node, real valued, >= 0
  double ell = 0.0;         // net internal links per step, may be negative
  double beta = 0.5;        // popularity fading, in (0, 1]
  double temperature = 0.0; // in [0, 1)

  // Throws ParamError naming the violated bound.
  void validate() const;
};

// Output of a generator: the graph, the ground-truth coordinates at final
// time (node id = birth order - 1, so node 0 appeared first), and counters
// for internal-link steps that found no eligible pair.
struct GeneratedNetwork {
  Graph graph;
  std::vector<PolarCoord> true_coords;
  int skipped_insertions = 0;
  int skipped_deletions = 0;
};

// Cutoff distance R_i for the node born at step i (1-based, i >= 2) with an
// expected external link count of m_eff. The T=0 limits replace
// 2T/sin(T*pi) by 2/pi and T/sin(T*pi) by 1/pi.
[[nodiscard]] double cutoff_radius(int i, const EpsoParams& p, double m_eff);

// Logistic linking probability 1/(1 + exp(zeta (x - cutoff) / (2T))),
// overflow-safe. Requires T > 0 (the T=0 models use deterministic rules).
[[nodiscard]] double connection_probability(double x, double cutoff,
                                            const EpsoParams& p);

// Expected total number of internal links acquired by the node born at step
// i over a whole run, for net rate p.ell. The beta = 1/2 and beta = 1
// singularities are evaluated by their analytic limits.
[[nodiscard]] double expected_internal_links(int i, const EpsoParams& p);

// Popularity-similarity growth, external links only (requires p.ell == 0).
//
// Per step: the new node draws its angle, every node is placed at its faded
// radius, and external links form by rule (all predecessors if i-1 <=
// round(m); the round(m) hyperbolically closest if T = 0, distance ties going
// to the earlier node; otherwise an independent coin per predecessor in birth
// order with the logistic probability). Draw order per step: angle, then the
// coins in ascending birth order.
[[nodiscard]] GeneratedNetwork pso_generate(const EpsoParams& p, std::uint64_t seed);

// Generalized model: PSO plus, per step, l_plus internal links inserted
// between disconnected old pairs (both endpoints born before this step) and
// l_minus links removed. For T > 0 insertion samples pairs uniformly and
// accepts with the logistic probability (attempt-capped, with an exact
// weighted-enumeration fallback); removal picks an existing old-old link with
// weight 1 - p. For T = 0 the closest disconnected pair is inserted and the
// furthest link removed, deterministically. Within one step no pair is
// touched twice. Steps with no eligible pair bump the warning counters.
// p.ell must equal l_plus - l_minus.
[[nodiscard]] GeneratedNetwork gpso_generate(const EpsoParams& p, int l_plus,
                                             int l_minus, std::uint64_t seed);

// Equivalent external-only reformulation: per step the expected external
// link count is m_i = m + expected_internal_links(i), and the cutoff is
// computed from m_i. Rejects parameter combinations where some m_i < 0,
// naming the smallest offending step.
[[nodiscard]] GeneratedNetwork epso_generate(const EpsoParams& p, std::uint64_t seed);

}  // namespace hypembed

#pragma once

#include <cstdint>

#include "hypembed/graph.hpp"
#include "hypembed/likelihood.hpp"

namespace hypembed {

// Baseline embedder: nodes enter one by one in descending-degree order (ties
// permuted by tie_seed). The first sits at the disk centre; when node i
// enters, all earlier radii fade to beta r_birth + (1-beta) r_i and node i's
// angle is the argmin, over angle_grid uniformly spaced angles starting at 0,
// of its local loss against the already-placed nodes, using the insertion-time
// cutoff R_i. Ties keep the first grid angle. Final radii equal
// assign_radial_coordinates with the same tie permutation.
//
// Requires a connected graph and T > 0.
[[nodiscard]] Embedding hypermap_embed(const Graph& g, const EpsoParams& p,
                                       DegreeKind kind, std::uint64_t tie_seed,
                                       int angle_grid = 360);

}  // namespace hypembed

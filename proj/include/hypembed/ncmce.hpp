#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "hypembed/graph.hpp"
#include "hypembed/likelihood.hpp"

namespace hypembed {

// Repulsion-attraction pre-weighting on existing edges:
// W_ij = (k_i + k_j + k_i k_j) / (1 + CN_ij), total degrees.
[[nodiscard]] WeightedGraph ra_preweight(const Graph& g);

// D_ij = sum of edge weights along the unique minimum-spanning-tree path,
// the minimum-curvilinear similarity matrix. Symmetric, zero diagonal.
[[nodiscard]] Eigen::MatrixXd curvilinear_distance_matrix(const WeightedGraph& wg);

struct TruncatedSvd {
  Eigen::MatrixXd u;      // N x 2
  Eigen::Vector2d sigma;  // descending, >= 0
  Eigen::MatrixXd v;      // N x 2
};

// Top-2 singular triplets. Each right-singular vector is flipped so its
// largest-magnitude entry (first such index on ties) is positive, fixing the
// decomposition's sign freedom.
[[nodiscard]] TruncatedSvd truncated_svd_rank2(const Eigen::MatrixXd& d);

// Node i's raw angular score: sqrt(sigma_2) * V[i, 1].
[[nodiscard]] std::vector<double> extract_raw_angular(const TruncatedSvd& svd);

// Nodes ranked by ascending score (ties by node id); rank k of N gets
// theta = 2 pi k / N. Scores must be finite.
[[nodiscard]] std::vector<double> equidistant_adjust(const std::vector<double>& scores);

// Full pipeline: RA weights, MST curvilinear distances, rank-2 SVD, raw
// angular scores, equidistant adjustment; radii from the degree-ranked
// radial law with the given tie permutation.
[[nodiscard]] Embedding ncmce_embed(const Graph& g, const EpsoParams& p,
                                    DegreeKind kind, std::uint64_t tie_seed);

}  // namespace hypembed

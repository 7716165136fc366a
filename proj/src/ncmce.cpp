#include "hypembed/ncmce.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <utility>

#include "hypembed/errors.hpp"

namespace hypembed {

WeightedGraph ra_preweight(const Graph& g) {
  const auto deg = degrees(g, DegreeKind::total);
  WeightedGraph wg;
  wg.n_nodes = g.n_nodes();
  wg.edges.reserve(g.edges().size());
  for (const auto& [u, v] : g.edges()) {
    const double cn = static_cast<double>(common_neighbors(g, u, v));
    const double ku = static_cast<double>(deg[static_cast<std::size_t>(u)]);
    const double kv = static_cast<double>(deg[static_cast<std::size_t>(v)]);
    wg.edges.emplace_back(u, v, (ku + kv + ku * kv) / (1.0 + cn));
  }
  return wg;
}

Eigen::MatrixXd curvilinear_distance_matrix(const WeightedGraph& wg) {
  const auto mst = minimum_spanning_tree(wg);
  const int n = wg.n_nodes;

  std::vector<std::vector<std::pair<int, double>>> adj(static_cast<std::size_t>(n));
  for (const auto& [u, v, w] : mst.edges) {
    adj[static_cast<std::size_t>(u)].push_back({v, w});
    adj[static_cast<std::size_t>(v)].push_back({u, w});
  }

  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    // Single DFS over the tree accumulates path sums from s to everyone.
    stack.assign(1, s);
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    seen[static_cast<std::size_t>(s)] = 1;
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      for (const auto& [nb, w] : adj[static_cast<std::size_t>(cur)]) {
        if (seen[static_cast<std::size_t>(nb)]) continue;
        seen[static_cast<std::size_t>(nb)] = 1;
        d(s, nb) = d(s, cur) + w;
        stack.push_back(nb);
      }
    }
  }
  return d;
}

TruncatedSvd truncated_svd_rank2(const Eigen::MatrixXd& d) {
  if (d.rows() < 2 || d.cols() < 2) {
    throw ParamError("rank-2 truncation needs a matrix with at least 2 rows and columns");
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(d, Eigen::ComputeThinU | Eigen::ComputeThinV);
  TruncatedSvd out;
  out.u = svd.matrixU().leftCols<2>();
  out.sigma = svd.singularValues().head<2>();
  out.v = svd.matrixV().leftCols<2>();
  for (int k = 0; k < 2; ++k) {
    Eigen::Index best = 0;
    out.v.col(k).cwiseAbs().maxCoeff(&best);
    if (out.v(best, k) < 0.0) {
      out.v.col(k) = -out.v.col(k);
      out.u.col(k) = -out.u.col(k);
    }
  }
  return out;
}

std::vector<double> extract_raw_angular(const TruncatedSvd& svd) {
  const double scale = std::sqrt(svd.sigma(1));
  std::vector<double> scores(static_cast<std::size_t>(svd.v.rows()));
  for (Eigen::Index i = 0; i < svd.v.rows(); ++i) {
    scores[static_cast<std::size_t>(i)] = scale * svd.v(i, 1);
  }
  return scores;
}

std::vector<double> equidistant_adjust(const std::vector<double>& scores) {
  const std::size_t n = scores.size();
  if (n == 0) throw ParamError("equidistant adjustment needs at least one score");
  for (std::size_t i = 0; i < n; ++i) {
    // A non-finite score would hand std::sort an inconsistent ordering.
    if (!std::isfinite(scores[i])) {
      throw DataError("angular score " + std::to_string(i) + " is not finite");
    }
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double sa = scores[static_cast<std::size_t>(a)];
    const double sb = scores[static_cast<std::size_t>(b)];
    if (sa != sb) return sa < sb;
    return a < b;
  });
  std::vector<double> theta(n, 0.0);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t rank = 0; rank < n; ++rank) {
    theta[static_cast<std::size_t>(order[rank])] = step * static_cast<double>(rank);
  }
  return theta;
}

Embedding ncmce_embed(const Graph& g, const EpsoParams& p,
                      DegreeKind kind, std::uint64_t tie_seed) {
  if (g.n_nodes() < 2) throw ParamError("embedding needs at least 2 nodes");
  Embedding emb = assign_radial_coordinates(g, p, kind, tie_seed);
  const auto wg = ra_preweight(g);
  const auto dmat = curvilinear_distance_matrix(wg);
  const auto svd = truncated_svd_rank2(dmat);
  const auto theta = equidistant_adjust(extract_raw_angular(svd));
  for (std::size_t i = 0; i < theta.size(); ++i) {
    emb.coords[i].theta = theta[i];
  }
  return emb;
}

}  // namespace hypembed

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hypembed/errors.hpp"

namespace hypembed {

enum class DegreeKind { total, in, out };

// Immutable simple undirected graph over dense node ids 0..n-1.
//
// When built from a directed edge list the original arcs are retained for
// in/out degree queries; the undirected edge set is always the symmetrized
// one. Total degree counts each neighbor once regardless of arc direction.
class Graph {
 public:
  Graph() = default;

  // Duplicate and reversed-duplicate edges collapse. Self loops and
  // out-of-range endpoints are rejected. labels, when given, carry the
  // original node names (defaults to the decimal ids).
  Graph(int n_nodes, std::vector<std::pair<int, int>> edge_list,
        std::optional<std::vector<std::pair<int, int>>> directed_edges = std::nullopt,
        std::vector<std::string> labels = {});

  [[nodiscard]] int n_nodes() const { return n_; }
  [[nodiscard]] long long n_edges() const { return static_cast<long long>(edges_.size()); }
  // Unique undirected edges, u < v, lexicographically sorted.
  [[nodiscard]] const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  // Sorted neighbor list.
  [[nodiscard]] const std::vector<int>& neighbors(int v) const;
  [[nodiscard]] bool has_edge(int u, int v) const;
  [[nodiscard]] bool has_directed() const { return directed_.has_value(); }
  [[nodiscard]] const std::vector<std::pair<int, int>>& directed_edges() const;
  [[nodiscard]] const std::string& label(int v) const;
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
  std::optional<std::vector<std::pair<int, int>>> directed_;
  std::vector<std::string> labels_;
};

// Per-node degrees. kind in/out requires a graph built with directed edges.
[[nodiscard]] std::vector<int> degrees(const Graph& g, DegreeKind kind);

// |N(u) ∩ N(v)| on the undirected graph.
[[nodiscard]] int common_neighbors(const Graph& g, int u, int v);

// Breadth-first hop distances from source; -1 marks unreachable nodes.
[[nodiscard]] std::vector<int> shortest_path_lengths(const Graph& g, int source);

[[nodiscard]] bool is_connected(const Graph& g);
[[nodiscard]] int component_count(const Graph& g);

// The largest connected component (ties: the one with the smallest member
// id), relabeled to dense ids in ascending original order; labels carried
// over. Directed arcs, when present, are restricted likewise.
[[nodiscard]] Graph largest_component_subgraph(const Graph& g);

// Undirected graph with nonnegative per-edge weights, same node set as the
// graph it was derived from.
struct WeightedGraph {
  int n_nodes = 0;
  std::vector<std::tuple<int, int, double>> edges;  // (u, v, w), u < v
};

// Kruskal. Ties broken by lexicographic (u, v) so repeated runs are
// bit-identical. Throws ConnectivityError naming the component count.
[[nodiscard]] WeightedGraph minimum_spanning_tree(const WeightedGraph& wg);

// Parse an edge list: UTF-8 lines, '#' comments ignored, two whitespace
// separated tokens per line. Tokens map to dense ids in first-appearance
// order. Malformed lines and self loops raise DataError with a line number.
[[nodiscard]] Graph load_edge_list(std::istream& in, bool directed_flag);

// Emit one "label label" line per undirected edge (or per arc when the graph
// carries directed edges).
void save_edge_list(const Graph& g, std::ostream& out);

[[nodiscard]] DegreeKind parse_degree_kind(const std::string& name);

}  // namespace hypembed

#include "hypembed/graph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace hypembed {

Graph::Graph(int n_nodes, std::vector<std::pair<int, int>> edge_list,
             std::optional<std::vector<std::pair<int, int>>> directed_edges,
             std::vector<std::string> labels)
    : n_(n_nodes), directed_(std::move(directed_edges)), labels_(std::move(labels)) {
  if (n_ < 0) throw DataError("negative node count");
  for (auto& [u, v] : edge_list) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) {
      throw DataError("edge endpoint out of range");
    }
    if (u == v) throw DataError("self loop on node " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edge_list.begin(), edge_list.end());
  edge_list.erase(std::unique(edge_list.begin(), edge_list.end()), edge_list.end());
  edges_ = std::move(edge_list);

  adj_.assign(n_, {});
  for (const auto& [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());

  if (directed_) {
    for (const auto& [u, v] : *directed_) {
      if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) {
        throw DataError("bad directed edge");
      }
    }
  }
  if (labels_.empty()) {
    labels_.resize(n_);
    for (int v = 0; v < n_; ++v) labels_[v] = std::to_string(v);
  } else if (static_cast<int>(labels_.size()) != n_) {
    throw DataError("label count does not match node count");
  }
}

const std::vector<int>& Graph::neighbors(int v) const {
  if (v < 0 || v >= n_) throw std::out_of_range("node id " + std::to_string(v));
  return adj_[v];
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) {
    throw std::out_of_range("node id out of range");
  }
  const auto& nb = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  const int other = adj_[u].size() <= adj_[v].size() ? v : u;
  return std::binary_search(nb.begin(), nb.end(), other);
}

const std::vector<std::pair<int, int>>& Graph::directed_edges() const {
  if (!directed_) throw DataError("graph has no directed edge record");
  return *directed_;
}

const std::string& Graph::label(int v) const {
  if (v < 0 || v >= n_) throw std::out_of_range("node id " + std::to_string(v));
  return labels_[v];
}

std::vector<int> degrees(const Graph& g, DegreeKind kind) {
  std::vector<int> d(g.n_nodes(), 0);
  if (kind == DegreeKind::total) {
    for (int v = 0; v < g.n_nodes(); ++v) {
      d[v] = static_cast<int>(g.neighbors(v).size());
    }
    return d;
  }
  if (!g.has_directed()) {
    throw ParamError("in/out degrees need a directed edge list");
  }
  for (const auto& [u, v] : g.directed_edges()) {
    if (kind == DegreeKind::out) {
      ++d[u];
    } else {
      ++d[v];
    }
  }
  return d;
}

int common_neighbors(const Graph& g, int u, int v) {
  if (u == v) throw std::out_of_range("common_neighbors needs distinct nodes");
  const auto& a = g.neighbors(u);
  const auto& b = g.neighbors(v);
  int count = 0;
  auto it = a.begin();
  auto jt = b.begin();
  while (it != a.end() && jt != b.end()) {
    if (*it < *jt) {
      ++it;
    } else if (*jt < *it) {
      ++jt;
    } else {
      ++count;
      ++it;
      ++jt;
    }
  }
  return count;
}

std::vector<int> shortest_path_lengths(const Graph& g, int source) {
  if (source < 0 || source >= g.n_nodes()) {
    throw std::out_of_range("source out of range");
  }
  std::vector<int> dist(g.n_nodes(), -1);
  std::queue<int> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int w : g.neighbors(v)) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

namespace {

// Disjoint-set union for Kruskal and component counting.
struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

int component_count(const Graph& g) {
  if (g.n_nodes() == 0) return 0;
  Dsu dsu(g.n_nodes());
  int comps = g.n_nodes();
  for (const auto& [u, v] : g.edges()) {
    if (dsu.unite(u, v)) --comps;
  }
  return comps;
}

bool is_connected(const Graph& g) { return component_count(g) <= 1; }

Graph largest_component_subgraph(const Graph& g) {
  if (g.n_nodes() == 0) return g;
  Dsu dsu(g.n_nodes());
  for (const auto& [u, v] : g.edges()) dsu.unite(u, v);
  std::vector<int> size(g.n_nodes(), 0);
  for (int v = 0; v < g.n_nodes(); ++v) ++size[dsu.find(v)];
  int best_root = 0;
  for (int v = 0; v < g.n_nodes(); ++v) {
    if (size[dsu.find(v)] > size[dsu.find(best_root)]) best_root = v;
    // first node of the largest size wins, so ties go to the smallest id
  }
  best_root = dsu.find(best_root);

  std::vector<int> new_id(g.n_nodes(), -1);
  std::vector<std::string> labels;
  int next = 0;
  for (int v = 0; v < g.n_nodes(); ++v) {
    if (dsu.find(v) == best_root) {
      new_id[v] = next++;
      labels.push_back(g.label(v));
    }
  }
  std::vector<std::pair<int, int>> edges;
  for (const auto& [u, v] : g.edges()) {
    if (new_id[u] >= 0 && new_id[v] >= 0) edges.emplace_back(new_id[u], new_id[v]);
  }
  std::optional<std::vector<std::pair<int, int>>> arcs;
  if (g.has_directed()) {
    arcs.emplace();
    for (const auto& [u, v] : g.directed_edges()) {
      if (new_id[u] >= 0 && new_id[v] >= 0) arcs->emplace_back(new_id[u], new_id[v]);
    }
  }
  return Graph(next, std::move(edges), std::move(arcs), std::move(labels));
}

WeightedGraph minimum_spanning_tree(const WeightedGraph& wg) {
  std::vector<std::tuple<int, int, double>> sorted = wg.edges;
  for (auto& [u, v, w] : sorted) {
    if (u > v) std::swap(u, v);
    if (w < 0.0) throw DataError("negative edge weight");
  }
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    if (std::get<2>(a) != std::get<2>(b)) return std::get<2>(a) < std::get<2>(b);
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    return std::get<1>(a) < std::get<1>(b);
  });

  WeightedGraph tree;
  tree.n_nodes = wg.n_nodes;
  Dsu dsu(wg.n_nodes);
  int comps = wg.n_nodes;
  for (const auto& [u, v, w] : sorted) {
    if (dsu.unite(u, v)) {
      tree.edges.emplace_back(u, v, w);
      --comps;
    }
  }
  if (comps > 1) {
    throw ConnectivityError("graph is disconnected (" + std::to_string(comps) +
                            " components)");
  }
  return tree;
}

Graph load_edge_list(std::istream& in, bool directed_flag) {
  std::unordered_map<std::string, int> id_of;
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::pair<int, int>> arcs;

  auto intern = [&](const std::string& token) {
    auto [it, inserted] = id_of.try_emplace(token, static_cast<int>(labels.size()));
    if (inserted) labels.push_back(token);
    return it->second;
  };

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;           // blank
    if (a.front() == '#') continue;     // comment
    if (!(ls >> b) || (ls >> extra)) {
      throw DataError("line " + std::to_string(line_no) +
                      ": expected exactly two node tokens");
    }
    if (a == b) {
      throw DataError("line " + std::to_string(line_no) + ": self loop on '" + a + "'");
    }
    const int u = intern(a);
    const int v = intern(b);
    edges.emplace_back(u, v);
    if (directed_flag) arcs.emplace_back(u, v);
  }
  if (directed_flag) {
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  }
  const int n = static_cast<int>(labels.size());  // before labels is moved from
  return Graph(n, std::move(edges),
               directed_flag ? std::optional(std::move(arcs)) : std::nullopt,
               std::move(labels));
}

void save_edge_list(const Graph& g, std::ostream& out) {
  if (g.has_directed()) {
    for (const auto& [u, v] : g.directed_edges()) {
      out << g.label(u) << ' ' << g.label(v) << '\n';
    }
  } else {
    for (const auto& [u, v] : g.edges()) {
      out << g.label(u) << ' ' << g.label(v) << '\n';
    }
  }
}

DegreeKind parse_degree_kind(const std::string& name) {
  if (name == "total") return DegreeKind::total;
  if (name == "in") return DegreeKind::in;
  if (name == "out") return DegreeKind::out;
  throw ParamError("unknown degree kind '" + name + "' (total, in, out)");
}

}  // namespace hypembed

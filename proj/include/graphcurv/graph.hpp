#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "graphcurv/errors.hpp"

namespace graphcurv {

using Node = std::size_t;

/// Row-major dense real matrix used for Â, R_α, Laplacians.
using DenseMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Undirected edge stored with u < v.
struct Edge {
  Node u = 0;
  Node v = 0;

  Edge() = default;
  Edge(Node a, Node b) : u(std::min(a, b)), v(std::max(a, b)) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Read-only adjacency interface shared by Graph and EditableGraph. Neighbor lists are ascending.
template <class G>
concept AdjacencyView = requires(const G& g, Node i) {
  { g.node_count() } -> std::convertible_to<std::size_t>;
  { g.degree(i) } -> std::convertible_to<std::size_t>;
  { g.neighbors(i) } -> std::convertible_to<std::span<const Node>>;
  { g.has_edge(i, i) } -> std::convertible_to<bool>;
};

namespace detail {

inline bool sorted_contains(std::span<const Node> list, Node x) {
  return std::binary_search(list.begin(), list.end(), x);
}

inline void check_node(std::size_t n, Node i) {
  if (i >= n) {
    throw PreconditionError("node index " + std::to_string(i) + " out of range (n = " +
                            std::to_string(n) + ")");
  }
}

}  // namespace detail

/// Simple undirected graph with ascending adjacency lists. Immutable after construction.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list. Self-loops and repeated edges are rejected; callers
  /// that need lenient parsing go through the edge-list loader instead.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges,
                          std::vector<std::string> names = {}) {
    Graph g;
    g.adjacency_.assign(n, {});
    for (const Edge& e : edges) {
      if (e.u >= n || e.v >= n) {
        throw PreconditionError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                                ") references a node outside 0.." + std::to_string(n) + "-1");
      }
      if (e.u == e.v) throw PreconditionError("self-loop at node " + std::to_string(e.u));
      g.adjacency_[e.u].push_back(e.v);
      g.adjacency_[e.v].push_back(e.u);
    }
    for (auto& list : g.adjacency_) {
      std::sort(list.begin(), list.end());
      if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
        throw PreconditionError("duplicate edge in edge list");
      }
      g.edge_count_ += list.size();
    }
    g.edge_count_ /= 2;
    g.set_names(std::move(names));
    return g;
  }

  /// Adopts adjacency lists that are already simple and symmetric (checked).
  static Graph from_adjacency(std::vector<std::vector<Node>> adjacency,
                              std::vector<std::string> names = {}) {
    std::vector<Edge> edges;
    for (Node i = 0; i < adjacency.size(); ++i) {
      for (Node j : adjacency[i]) {
        if (j >= adjacency.size() || !std::count(adjacency[j].begin(), adjacency[j].end(), i)) {
          throw PreconditionError("adjacency is not symmetric");
        }
        if (i < j) edges.emplace_back(i, j);
      }
    }
    return from_edges(adjacency.size(), edges, std::move(names));
  }

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  std::size_t degree(Node i) const { return adjacency_[i].size(); }
  std::span<const Node> neighbors(Node i) const { return adjacency_[i]; }
  bool has_edge(Node i, Node j) const {
    return i < node_count() && j < node_count() && detail::sorted_contains(adjacency_[i], j);
  }

  /// All edges sorted by (min endpoint, max endpoint).
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Node i = 0; i < node_count(); ++i) {
      for (Node j : adjacency_[i]) {
        if (i < j) out.emplace_back(i, j);
      }
    }
    return out;
  }

  /// Original identifier of node i; the decimal index when the graph carries no names.
  std::string name(Node i) const { return names_.empty() ? std::to_string(i) : names_[i]; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  bool has_names() const noexcept { return !names_.empty(); }

  const std::vector<std::vector<Node>>& adjacency() const noexcept { return adjacency_; }

  friend bool operator==(const Graph& a, const Graph& b) { return a.adjacency_ == b.adjacency_; }

 private:
  void set_names(std::vector<std::string> names) {
    if (!names.empty() && names.size() != adjacency_.size()) {
      throw PreconditionError("node name count does not match node count");
    }
    names_ = std::move(names);
  }

  std::vector<std::vector<Node>> adjacency_;
  std::vector<std::string> names_;
  std::size_t edge_count_ = 0;
};

/// Mutable working copy used by rewiring. Keeps adjacency lists sorted.
class EditableGraph {
 public:
  explicit EditableGraph(const Graph& g) : adjacency_(g.adjacency()), names_(g.names()) {
    edge_count_ = g.edge_count();
  }

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  std::size_t degree(Node i) const { return adjacency_[i].size(); }
  std::span<const Node> neighbors(Node i) const { return adjacency_[i]; }
  bool has_edge(Node i, Node j) const {
    return i < node_count() && j < node_count() && detail::sorted_contains(adjacency_[i], j);
  }

  void add_edge(Node i, Node j) {
    if (i == j || has_edge(i, j)) throw PreconditionError("cannot add self-loop or existing edge");
    insert_sorted(adjacency_[i], j);
    insert_sorted(adjacency_[j], i);
    ++edge_count_;
  }

  void remove_edge(Node i, Node j) {
    if (!has_edge(i, j)) throw PreconditionError("cannot remove a non-edge");
    erase_sorted(adjacency_[i], j);
    erase_sorted(adjacency_[j], i);
    --edge_count_;
  }

  Graph freeze() const { return Graph::from_adjacency(adjacency_, names_); }

 private:
  static void insert_sorted(std::vector<Node>& list, Node x) {
    list.insert(std::lower_bound(list.begin(), list.end(), x), x);
  }
  static void erase_sorted(std::vector<Node>& list, Node x) {
    list.erase(std::lower_bound(list.begin(), list.end(), x));
  }

  std::vector<std::vector<Node>> adjacency_;
  std::vector<std::string> names_;
  std::size_t edge_count_ = 0;
};

/// Per-node class labels.
struct NodeLabeling {
  std::vector<int> labels;
};

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

/// Hop distances from `source`; kUnreachable for nodes not reached (or beyond `cutoff`).
template <AdjacencyView G>
std::vector<std::size_t> bfs_distances(const G& g, Node source,
                                       std::size_t cutoff = kUnreachable) {
  detail::check_node(g.node_count(), source);
  std::vector<std::size_t> dist(g.node_count(), kUnreachable);
  std::queue<Node> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const Node u = frontier.front();
    frontier.pop();
    if (dist[u] >= cutoff) continue;
    for (Node w : g.neighbors(u)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        frontier.push(w);
      }
    }
  }
  return dist;
}

/// Nodes at distance <= radius from `center`, ascending.
template <AdjacencyView G>
std::vector<Node> ball(const G& g, Node center, std::size_t radius) {
  const auto dist = bfs_distances(g, center, radius);
  std::vector<Node> out;
  for (Node k = 0; k < dist.size(); ++k) {
    if (dist[k] != kUnreachable) out.push_back(k);
  }
  return out;
}

/// Component id per node, ids assigned in order of the smallest node of each component.
template <AdjacencyView G>
std::vector<std::size_t> connected_components(const G& g, std::size_t* count = nullptr) {
  std::vector<std::size_t> comp(g.node_count(), kUnreachable);
  std::size_t next = 0;
  for (Node s = 0; s < g.node_count(); ++s) {
    if (comp[s] != kUnreachable) continue;
    std::vector<Node> stack{s};
    comp[s] = next;
    while (!stack.empty()) {
      const Node u = stack.back();
      stack.pop_back();
      for (Node w : g.neighbors(u)) {
        if (comp[w] == kUnreachable) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

template <AdjacencyView G>
bool is_connected(const G& g) {
  std::size_t count = 0;
  connected_components(g, &count);
  return count <= 1;
}

/// Subgraph induced by `keep` (ascending), relabelled 0..|keep|-1 in that order. Names carried over.
inline Graph induced_subgraph(const Graph& g, std::span<const Node> keep) {
  std::vector<std::size_t> index(g.node_count(), kUnreachable);
  for (std::size_t t = 0; t < keep.size(); ++t) index[keep[t]] = t;
  std::vector<Edge> edges;
  std::vector<std::string> names;
  for (std::size_t t = 0; t < keep.size(); ++t) {
    names.push_back(g.name(keep[t]));
    for (Node w : g.neighbors(keep[t])) {
      if (index[w] != kUnreachable && t < index[w]) edges.emplace_back(t, index[w]);
    }
  }
  return Graph::from_edges(keep.size(), edges, std::move(names));
}

/// Largest connected component; ties go to the component containing the smallest node.
inline Graph largest_component(const Graph& g) {
  std::size_t count = 0;
  const auto comp = connected_components(g, &count);
  if (count <= 1) return g;
  std::vector<std::size_t> size(count, 0);
  for (auto c : comp) ++size[c];
  const auto best = static_cast<std::size_t>(std::max_element(size.begin(), size.end()) - size.begin());
  std::vector<Node> keep;
  for (Node i = 0; i < g.node_count(); ++i) {
    if (comp[i] == best) keep.push_back(i);
  }
  return induced_subgraph(g, keep);
}

/// Â = (D+I)^{-1/2} (A+I) (D+I)^{-1/2}.
template <AdjacencyView G>
DenseMatrix augmented_normalized_adjacency(const G& g) {
  const std::size_t n = g.node_count();
  DenseMatrix a = DenseMatrix::Zero(n, n);
  for (Node i = 0; i < n; ++i) {
    a(i, i) = 1.0 / static_cast<double>(g.degree(i) + 1);
    for (Node j : g.neighbors(i)) {
      a(i, j) = 1.0 / std::sqrt(static_cast<double>((g.degree(i) + 1) * (g.degree(j) + 1)));
    }
  }
  return a;
}

/// 0/1 adjacency matrix.
template <AdjacencyView G>
DenseMatrix adjacency_matrix(const G& g) {
  const std::size_t n = g.node_count();
  DenseMatrix a = DenseMatrix::Zero(n, n);
  for (Node i = 0; i < n; ++i) {
    for (Node j : g.neighbors(i)) a(i, j) = 1.0;
  }
  return a;
}

/// Sum of degrees over `nodes`.
template <AdjacencyView G>
std::size_t volume(const G& g, std::span<const Node> nodes) {
  std::size_t v = 0;
  for (Node i : nodes) v += g.degree(i);
  return v;
}

}  // namespace graphcurv

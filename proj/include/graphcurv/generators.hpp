#pragma once

// Deterministic graph families. Node orderings:
//   path(n)           0-1-...-(n-1)
//   cycle(n)          ring order 0..n-1, closing edge (0, n-1)
//   complete(n)       K_n
//   star(n)           center 0, leaves 1..n
//   grid2d(r, c)      row-major, node (y, x) = y*c + x, 4-neighbourhood
//   tree(r, h)        complete r-ary tree of depth h in BFS order; root degree r, interior r+1
//   regular_tree(d,h) root has d children, every other interior node d-1, so all interior
//                     degrees equal d; BFS order
//   barbell(n)        clique 0..n-1, clique n..2n-1, bridge (0, n)
//   erdos_renyi(n,p)  pairs (i<j) visited lexicographically, kept iff SplitMix64(seed).uniform() < p

#include <cstdint>
#include <string>
#include <vector>

#include "graphcurv/errors.hpp"
#include "graphcurv/graph.hpp"
#include "graphcurv/rng.hpp"

namespace graphcurv::generate {

namespace detail {
inline void require(bool ok, const std::string& message) {
  if (!ok) throw ParameterError(message);
}
}  // namespace detail

inline Graph path(std::size_t n) {
  detail::require(n >= 1, "path needs n >= 1");
  std::vector<Edge> edges;
  for (Node i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::from_edges(n, edges);
}

inline Graph cycle(std::size_t n) {
  detail::require(n >= 3, "cycle needs n >= 3");
  std::vector<Edge> edges;
  for (Node i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, edges);
}

inline Graph complete(std::size_t n) {
  detail::require(n >= 1, "complete graph needs n >= 1");
  std::vector<Edge> edges;
  for (Node i = 0; i < n; ++i) {
    for (Node j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return Graph::from_edges(n, edges);
}

inline Graph star(std::size_t leaves) {
  detail::require(leaves >= 1, "star needs at least one leaf");
  std::vector<Edge> edges;
  for (Node k = 1; k <= leaves; ++k) edges.emplace_back(0, k);
  return Graph::from_edges(leaves + 1, edges);
}

inline Graph grid2d(std::size_t rows, std::size_t cols) {
  detail::require(rows >= 1 && cols >= 1, "grid needs rows, cols >= 1");
  std::vector<Edge> edges;
  for (std::size_t y = 0; y < rows; ++y) {
    for (std::size_t x = 0; x < cols; ++x) {
      const Node id = y * cols + x;
      if (x + 1 < cols) edges.emplace_back(id, id + 1);
      if (y + 1 < rows) edges.emplace_back(id, id + cols);
    }
  }
  return Graph::from_edges(rows * cols, edges);
}

namespace detail {
// BFS-ordered tree where the root gets `root_children` and every other non-leaf `children`.
inline Graph layered_tree(std::size_t root_children, std::size_t children, std::size_t depth) {
  std::vector<Edge> edges;
  std::vector<Node> level{0};
  Node next = 1;
  for (std::size_t h = 0; h < depth; ++h) {
    std::vector<Node> below;
    for (Node parent : level) {
      const std::size_t count = (h == 0) ? root_children : children;
      for (std::size_t c = 0; c < count; ++c) {
        edges.emplace_back(parent, next);
        below.push_back(next++);
      }
    }
    level = std::move(below);
  }
  return Graph::from_edges(next, edges);
}
}  // namespace detail

inline Graph tree(std::size_t branching, std::size_t depth) {
  detail::require(branching >= 1, "tree needs branching r >= 1");
  return detail::layered_tree(branching, branching, depth);
}

inline Graph regular_tree(std::size_t degree, std::size_t depth) {
  detail::require(degree >= 2, "regular tree needs degree d >= 2");
  return detail::layered_tree(degree, degree - 1, depth);
}

inline Graph barbell(std::size_t n) {
  detail::require(n >= 2, "barbell needs clique size n >= 2");
  std::vector<Edge> edges;
  for (Node base : {Node{0}, Node{n}}) {
    for (Node i = 0; i < n; ++i) {
      for (Node j = i + 1; j < n; ++j) edges.emplace_back(base + i, base + j);
    }
  }
  edges.emplace_back(0, n);
  return Graph::from_edges(2 * n, edges);
}

inline Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  detail::require(n >= 1, "erdos_renyi needs n >= 1");
  detail::require(p >= 0.0 && p <= 1.0, "erdos_renyi needs p in [0, 1]");
  SplitMix64 rng(seed);
  std::vector<Edge> edges;
  for (Node i = 0; i < n; ++i) {
    for (Node j = i + 1; j < n; ++j) {
      if (rng.uniform() < p) edges.emplace_back(i, j);
    }
  }
  return Graph::from_edges(n, edges);
}

}  // namespace graphcurv::generate

#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <optional>
#include <vector>

#include "graphcurv/errors.hpp"
#include "graphcurv/graph.hpp"

namespace graphcurv {

/// Neighbourhood census of an edge i~j.
///
///   triangles  = S1(i) ∩ S1(j)
///   squares_i  = { k ∈ S1(i) \ S1(j), k != j : ∃ w ∈ S1(k) ∩ S1(j), w ∉ S1(i), w != i }
///   squares_j  = symmetric
///   gamma_max  = largest number of such w over k ∈ squares_i (and symmetrically over
///                squares_j); absent when there are no squares.
struct EdgeProfile {
  Node i = 0;
  Node j = 0;
  std::size_t d_i = 0;
  std::size_t d_j = 0;
  std::vector<Node> triangles;
  std::vector<Node> squares_i;
  std::vector<Node> squares_j;
  std::optional<std::size_t> gamma_max;
};

namespace detail {

template <AdjacencyView G>
void require_edge(const G& g, Node i, Node j) {
  if (i >= g.node_count() || j >= g.node_count() || !g.has_edge(i, j)) {
    throw PreconditionError("(" + std::to_string(i) + ", " + std::to_string(j) +
                            ") is not an edge");
  }
}

// For every k in S1(a) \ (S1(b) ∪ {b}): number of w ∈ S1(k) ∩ S1(b) with w ∉ S1(a), w != a.
// Appends k to `squares` when that number is positive and returns the largest count seen.
template <AdjacencyView G>
std::size_t collect_squares(const G& g, Node a, Node b, std::vector<Node>& squares) {
  const auto na = g.neighbors(a);
  const auto nb = g.neighbors(b);
  std::size_t worst = 0;
  for (Node k : na) {
    if (k == b || sorted_contains(nb, k)) continue;
    std::size_t count = 0;
    const auto nk = g.neighbors(k);
    // merge-walk S1(k) ∩ S1(b)
    auto x = nk.begin();
    auto y = nb.begin();
    while (x != nk.end() && y != nb.end()) {
      if (*x < *y) {
        ++x;
      } else if (*y < *x) {
        ++y;
      } else {
        const Node w = *x;
        if (w != a && !sorted_contains(na, w)) ++count;
        ++x;
        ++y;
      }
    }
    if (count > 0) {
      squares.push_back(k);
      worst = std::max(worst, count);
    }
  }
  return worst;
}

}  // namespace detail

template <AdjacencyView G>
EdgeProfile edge_profile(const G& g, Node i, Node j) {
  detail::require_edge(g, i, j);
  EdgeProfile p;
  p.i = i;
  p.j = j;
  p.d_i = g.degree(i);
  p.d_j = g.degree(j);
  const auto ni = g.neighbors(i);
  const auto nj = g.neighbors(j);
  std::set_intersection(ni.begin(), ni.end(), nj.begin(), nj.end(),
                        std::back_inserter(p.triangles));
  const std::size_t gi = detail::collect_squares(g, i, j, p.squares_i);
  const std::size_t gj = detail::collect_squares(g, j, i, p.squares_j);
  if (!p.squares_i.empty() || !p.squares_j.empty()) p.gamma_max = std::max(gi, gj);
  return p;
}

/// Balanced Forman curvature from a precomputed profile.
inline double balanced_forman(const EdgeProfile& p) {
  const auto lo = static_cast<double>(std::min(p.d_i, p.d_j));
  const auto hi = static_cast<double>(std::max(p.d_i, p.d_j));
  if (lo <= 1.0) return 0.0;
  const auto tri = static_cast<double>(p.triangles.size());
  double ric = 2.0 / static_cast<double>(p.d_i) + 2.0 / static_cast<double>(p.d_j) - 2.0 +
               2.0 * tri / hi + tri / lo;
  if (p.gamma_max) {
    const auto squares = static_cast<double>(p.squares_i.size() + p.squares_j.size());
    ric += squares / (static_cast<double>(*p.gamma_max) * hi);
  }
  return ric;
}

template <AdjacencyView G>
double balanced_forman(const G& g, Node i, Node j) {
  return balanced_forman(edge_profile(g, i, j));
}

/// Augmented Forman curvature 4 - d_i - d_j + 3|triangles|.
template <AdjacencyView G>
double forman(const G& g, Node i, Node j) {
  detail::require_edge(g, i, j);
  const auto ni = g.neighbors(i);
  const auto nj = g.neighbors(j);
  std::vector<Node> common;
  std::set_intersection(ni.begin(), ni.end(), nj.begin(), nj.end(), std::back_inserter(common));
  return 4.0 - static_cast<double>(ni.size()) - static_cast<double>(nj.size()) +
         3.0 * static_cast<double>(common.size());
}

/// Jost–Liu lower bound Φ(i,j) on κ₀, evaluated with d_i <= d_j.
template <AdjacencyView G>
double jost_liu_lower_bound(const G& g, Node i, Node j) {
  detail::require_edge(g, i, j);
  const auto ni = g.neighbors(i);
  const auto nj = g.neighbors(j);
  std::vector<Node> common;
  std::set_intersection(ni.begin(), ni.end(), nj.begin(), nj.end(), std::back_inserter(common));
  const auto small = static_cast<double>(std::min(ni.size(), nj.size()));
  const auto large = static_cast<double>(std::max(ni.size(), nj.size()));
  const auto tri = static_cast<double>(common.size());
  const double base = 1.0 - 1.0 / small - 1.0 / large;
  return -std::max(0.0, base - tri / large) - std::max(0.0, base - tri / small) + tri / large;
}

/// Maximum matching between squares_i and squares_j, k matchable to w iff k~w.
template <AdjacencyView G>
std::size_t max_square_matching(const G& g, const EdgeProfile& p) {
  const auto& left = p.squares_i;
  const auto& right = p.squares_j;
  std::vector<std::vector<std::size_t>> options(left.size());
  for (std::size_t a = 0; a < left.size(); ++a) {
    for (std::size_t b = 0; b < right.size(); ++b) {
      if (g.has_edge(left[a], right[b])) options[a].push_back(b);
    }
  }
  constexpr std::size_t kFree = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(right.size(), kFree);
  std::vector<bool> visited;
  // Kuhn's augmenting paths.
  auto augment = [&](auto&& self, std::size_t a) -> bool {
    for (std::size_t b : options[a]) {
      if (visited[b]) continue;
      visited[b] = true;
      if (owner[b] == kFree || self(self, owner[b])) {
        owner[b] = a;
        return true;
      }
    }
    return false;
  };
  std::size_t size = 0;
  for (std::size_t a = 0; a < left.size(); ++a) {
    visited.assign(right.size(), false);
    if (augment(augment, a)) ++size;
  }
  return size;
}

template <AdjacencyView G>
std::size_t max_square_matching(const G& g, Node i, Node j) {
  return max_square_matching(g, edge_profile(g, i, j));
}

}  // namespace graphcurv

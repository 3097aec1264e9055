#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphcurv/errors.hpp"
#include "graphcurv/graph.hpp"

namespace graphcurv {

namespace detail {

template <AdjacencyView G>
std::map<std::size_t, double> degree_distribution(const G& g) {
  const std::size_t n = g.node_count();
  if (n == 0) throw PreconditionError("degree distribution of an empty graph");
  std::map<std::size_t, double> freq;
  for (Node i = 0; i < n; ++i) freq[g.degree(i)] += 1.0 / static_cast<double>(n);
  return freq;
}

}  // namespace detail

/// Exact W₁ between empirical degree distributions: ∫ |F₁(x) − F₂(x)| dx.
template <AdjacencyView G1, AdjacencyView G2>
double degree_w1(const G1& g1, const G2& g2) {
  const auto p = detail::degree_distribution(g1);
  const auto q = detail::degree_distribution(g2);
  std::vector<std::size_t> points;
  for (const auto& [d, w] : p) points.push_back(d);
  for (const auto& [d, w] : q) points.push_back(d);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  double cdf_p = 0.0;
  double cdf_q = 0.0;
  double total = 0.0;
  for (std::size_t t = 0; t + 1 < points.size(); ++t) {
    if (auto it = p.find(points[t]); it != p.end()) cdf_p += it->second;
    if (auto it = q.find(points[t]); it != q.end()) cdf_q += it->second;
    total += std::abs(cdf_p - cdf_q) * static_cast<double>(points[t + 1] - points[t]);
  }
  return total;
}

struct EditStats {
  double pct_added = 0.0;
  double pct_removed = 0.0;
};

/// Edge additions and removals as percentages of the original edge count.
template <AdjacencyView G1, AdjacencyView G2>
EditStats edit_stats(const G1& original, const G2& rewired) {
  const std::size_t n = original.node_count();
  if (rewired.node_count() != n) {
    throw PreconditionError("edit stats need the same node set (" + std::to_string(n) + " vs " +
                            std::to_string(rewired.node_count()) + " nodes)");
  }
  std::size_t kept = 0;
  std::size_t before = 0;
  std::size_t after = 0;
  for (Node i = 0; i < n; ++i) {
    for (Node j : original.neighbors(i)) {
      if (j <= i) continue;
      ++before;
      if (rewired.has_edge(i, j)) ++kept;
    }
    for (Node j : rewired.neighbors(i)) {
      if (j > i) ++after;
    }
  }
  if (before == 0) throw PreconditionError("original graph has no edges");
  const double base = static_cast<double>(before);
  return {100.0 * static_cast<double>(after - kept) / base,
          100.0 * static_cast<double>(before - kept) / base};
}

struct HomophilyResult {
  double value = 0.0;
  std::size_t isolated_skipped = 0;
};

/// Mean over non-isolated nodes of the fraction of neighbours sharing the node's label.
template <AdjacencyView G>
HomophilyResult homophily(const G& g, const NodeLabeling& labeling) {
  const std::size_t n = g.node_count();
  if (labeling.labels.size() != n) {
    throw PreconditionError("label count " + std::to_string(labeling.labels.size()) +
                            " does not match node count " + std::to_string(n));
  }
  HomophilyResult out;
  double sum = 0.0;
  for (Node v = 0; v < n; ++v) {
    const auto nv = g.neighbors(v);
    if (nv.empty()) {
      ++out.isolated_skipped;
      continue;
    }
    const auto same = std::count_if(nv.begin(), nv.end(), [&](Node u) {
      return labeling.labels[u] == labeling.labels[v];
    });
    sum += static_cast<double>(same) / static_cast<double>(nv.size());
  }
  if (out.isolated_skipped == n) throw PreconditionError("homophily undefined: every node is isolated");
  out.value = sum / static_cast<double>(n - out.isolated_skipped);
  return out;
}

struct ComparisonReport {
  double w1_degree = 0.0;
  double pct_added = 0.0;
  double pct_removed = 0.0;
  std::optional<double> homophily_before;
  std::optional<double> homophily_after;
};

template <AdjacencyView G1, AdjacencyView G2>
ComparisonReport compare_graphs(const G1& original, const G2& rewired,
                                const NodeLabeling* labels = nullptr) {
  ComparisonReport r;
  r.w1_degree = degree_w1(original, rewired);
  const auto e = edit_stats(original, rewired);
  r.pct_added = e.pct_added;
  r.pct_removed = e.pct_removed;
  if (labels) {
    r.homophily_before = homophily(original, *labels).value;
    r.homophily_after = homophily(rewired, *labels).value;
  }
  return r;
}

}  // namespace graphcurv

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "graphcurv/errors.hpp"
#include "graphcurv/graph.hpp"

namespace graphcurv {

/// Finitely supported probability measure on nodes.
struct LocalMeasure {
  std::vector<Node> support;
  std::vector<double> mass;
};

/// Optimal coupling between two measures; rows follow μ.support, columns ν.support.
struct TransportPlan {
  DenseMatrix coupling;
  double cost = 0.0;
};

/// μ_i^α: mass α on i, (1-α)/d_i on each neighbour.
template <AdjacencyView G>
LocalMeasure alpha_measure(const G& g, Node i, double alpha) {
  detail::check_node(g.node_count(), i);
  if (!(alpha >= 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in [0, 1)");
  const std::size_t d = g.degree(i);
  if (d == 0) {
    throw PreconditionError("alpha measure undefined at isolated node " + std::to_string(i));
  }
  LocalMeasure m;
  m.support.push_back(i);
  m.mass.push_back(alpha);
  for (Node k : g.neighbors(i)) {
    m.support.push_back(k);
    m.mass.push_back((1.0 - alpha) / static_cast<double>(d));
  }
  return m;
}

namespace detail {

// Successive shortest paths on the uncapacitated bipartite transportation network.
// Shortest paths use Bellman–Ford because residual back-arcs carry negative cost.
// Costs here are small integers, so path choices are exact; only masses are floating point.
inline TransportPlan solve_transportation(const std::vector<double>& supply,
                                          const std::vector<double>& demand,
                                          const DenseMatrix& cost) {
  constexpr double kZero = 1e-15;
  const std::size_t m = supply.size();
  const std::size_t n = demand.size();
  TransportPlan plan;
  plan.coupling = DenseMatrix::Zero(m, n);
  std::vector<double> left = supply;
  std::vector<double> need = demand;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  for (;;) {
    // Nodes 0..m-1 are sources, m..m+n-1 are sinks.
    std::vector<double> dist(m + n, kInf);
    std::vector<std::size_t> pred(m + n, kNone);
    for (std::size_t x = 0; x < m; ++x) {
      if (left[x] > kZero) dist[x] = 0.0;
    }
    bool any_source = std::any_of(dist.begin(), dist.begin() + m, [](double d) { return d == 0.0; });
    bool any_sink = std::any_of(need.begin(), need.end(), [](double d) { return d > kZero; });
    if (!any_source || !any_sink) break;

    for (std::size_t round = 0; round < m + n; ++round) {
      bool changed = false;
      for (std::size_t x = 0; x < m; ++x) {
        if (dist[x] == kInf) continue;
        for (std::size_t y = 0; y < n; ++y) {
          const double via = dist[x] + cost(x, y);
          if (via < dist[m + y]) {
            dist[m + y] = via;
            pred[m + y] = x;
            changed = true;
          }
        }
      }
      for (std::size_t y = 0; y < n; ++y) {
        if (dist[m + y] == kInf) continue;
        for (std::size_t x = 0; x < m; ++x) {
          if (plan.coupling(x, y) <= kZero) continue;
          const double via = dist[m + y] - cost(x, y);
          if (via < dist[x]) {
            dist[x] = via;
            pred[x] = m + y;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }

    std::size_t sink = kNone;
    for (std::size_t y = 0; y < n; ++y) {
      if (need[y] > kZero && dist[m + y] < kInf && (sink == kNone || dist[m + y] < dist[m + sink])) {
        sink = y;
      }
    }
    if (sink == kNone) break;

    // Walk back to the originating source, collecting the bottleneck.
    double amount = need[sink];
    std::size_t node = m + sink;
    while (node >= m || pred[node] != kNone) {
      if (node >= m) {
        node = pred[node];
      } else {
        const std::size_t y = pred[node] - m;
        amount = std::min(amount, plan.coupling(node, y));
        node = pred[node];
      }
    }
    amount = std::min(amount, left[node]);
    const std::size_t origin = node;

    node = m + sink;
    while (node >= m || pred[node] != kNone) {
      if (node >= m) {
        const std::size_t x = pred[node];
        plan.coupling(x, node - m) += amount;
        node = x;
      } else {
        const std::size_t back = pred[node];
        plan.coupling(node, back - m) -= amount;
        if (plan.coupling(node, back - m) < kZero) plan.coupling(node, back - m) = 0.0;
        node = back;
      }
    }
    left[origin] -= amount;
    need[sink] -= amount;
  }

  plan.cost = 0.0;
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < n; ++y) plan.cost += plan.coupling(x, y) * cost(x, y);
  }
  return plan;
}

inline void check_measure(const LocalMeasure& mu, std::size_t n, const char* which) {
  if (mu.support.empty() || mu.support.size() != mu.mass.size()) {
    throw PreconditionError(std::string(which) + ": support and mass must be non-empty and parallel");
  }
  double total = 0.0;
  for (std::size_t t = 0; t < mu.support.size(); ++t) {
    check_node(n, mu.support[t]);
    if (!(mu.mass[t] >= 0.0)) throw PreconditionError(std::string(which) + ": negative mass");
    total += mu.mass[t];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw PreconditionError(std::string(which) + ": masses sum to " + std::to_string(total));
  }
  std::vector<Node> sorted = mu.support;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw PreconditionError(std::string(which) + ": repeated support node");
  }
}

}  // namespace detail

/// Exact W₁(μ, ν) under the hop metric, with the optimal plan. `hop_cutoff` limits the
/// BFS used for costs; a needed pair farther apart than the cutoff is an error.
template <AdjacencyView G>
TransportPlan wasserstein1(const G& g, const LocalMeasure& mu, const LocalMeasure& nu,
                           std::size_t hop_cutoff = kUnreachable) {
  detail::check_measure(mu, g.node_count(), "mu");
  detail::check_measure(nu, g.node_count(), "nu");
  DenseMatrix cost(mu.support.size(), nu.support.size());
  for (std::size_t x = 0; x < mu.support.size(); ++x) {
    const auto dist = bfs_distances(g, mu.support[x], hop_cutoff);
    for (std::size_t y = 0; y < nu.support.size(); ++y) {
      const std::size_t d = dist[nu.support[y]];
      if (d == kUnreachable) {
        throw PreconditionError("no path between support nodes " + std::to_string(mu.support[x]) +
                                " and " + std::to_string(nu.support[y]));
      }
      cost(x, y) = static_cast<double>(d);
    }
  }
  return detail::solve_transportation(mu.mass, nu.mass, cost);
}

/// κ_α(i,j) = 1 - W₁(μ_i^α, μ_j^α).
template <AdjacencyView G>
double ollivier_alpha(const G& g, Node i, Node j, double alpha) {
  detail::require_edge(g, i, j);
  const auto mu = alpha_measure(g, i, alpha);
  const auto nu = alpha_measure(g, j, alpha);
  // Both supports sit inside B1(i) ∪ B1(j), so no relevant distance exceeds 3.
  return 1.0 - wasserstein1(g, mu, nu, 3).cost;
}

/// Idleness probes used by ollivier_limit.
inline constexpr double kLimitAlphaCoarse = 1.0 - 1e-3;
inline constexpr double kLimitAlphaFine = 1.0 - 1e-4;
inline constexpr double kLimitAgreement = 1e-6;

/// κ(i,j) = lim_{α→1} κ_α/(1-α). κ_α is piecewise linear in α with its last piece reaching
/// α = 1, so the ratio is constant near 1; two probes must agree or NumericalError is thrown.
template <AdjacencyView G>
double ollivier_limit(const G& g, Node i, Node j) {
  const double coarse = ollivier_alpha(g, i, j, kLimitAlphaCoarse) / (1.0 - kLimitAlphaCoarse);
  const double fine = ollivier_alpha(g, i, j, kLimitAlphaFine) / (1.0 - kLimitAlphaFine);
  if (std::abs(coarse - fine) > kLimitAgreement) {
    throw NumericalError("Ollivier limit probes disagree on edge (" + std::to_string(i) + ", " +
                         std::to_string(j) + "): " + std::to_string(coarse) + " vs " +
                         std::to_string(fine));
  }
  return fine;
}

}  // namespace graphcurv

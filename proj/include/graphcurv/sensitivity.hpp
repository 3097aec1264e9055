#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "graphcurv/curvature.hpp"
#include "graphcurv/errors.hpp"
#include "graphcurv/graph.hpp"

namespace graphcurv {

namespace detail {

// row · Â, using only the sparse structure of Â.
template <AdjacencyView G>
std::vector<double> times_augmented_adjacency(const G& g, const std::vector<double>& row) {
  std::vector<double> out(row.size(), 0.0);
  for (Node k = 0; k < row.size(); ++k) {
    if (row[k] == 0.0) continue;
    const double dk = static_cast<double>(g.degree(k) + 1);
    out[k] += row[k] / dk;
    for (Node s : g.neighbors(k)) {
      out[s] += row[k] / std::sqrt(dk * static_cast<double>(g.degree(s) + 1));
    }
  }
  return out;
}

}  // namespace detail

/// Row i of Â^power.
template <AdjacencyView G>
std::vector<double> augmented_power_row(const G& g, std::size_t power, Node i) {
  detail::check_node(g.node_count(), i);
  std::vector<double> row(g.node_count(), 0.0);
  row[i] = 1.0;
  for (std::size_t t = 0; t < power; ++t) row = detail::times_augmented_adjacency(g, row);
  return row;
}

/// (Â^power)_{is}.
template <AdjacencyView G>
double power_entry(const G& g, std::size_t power, Node i, Node s) {
  detail::check_node(g.node_count(), s);
  return augmented_power_row(g, power, i)[s];
}

/// Sensitivity bound (c_φ c_ψ)^{r+1} (Â^{r+1})_{is} for a depth-(r+1) MPNN; meaningful for
/// d_G(i,s) >= r+1.
template <AdjacencyView G>
double jacobian_upper_bound(const G& g, std::size_t r, Node i, Node s, double c_phi, double c_psi) {
  return std::pow(c_phi * c_psi, static_cast<double>(r + 1)) * power_entry(g, r + 1, i, s);
}

/// Scalar reference MPNN with known gradient bounds:
///   self_loops:    h_i ← c_φ tanh(h_i + Σ_j Â_ij · c_ψ tanh(h_i + h_j))
///   no self-loops: h_i ← c_φ tanh(Σ_{j~i} (1/d_i) · c_ψ tanh(h_j))
/// The second form is a pure neighbour sum, so h_i^{(L)} only sees walks of length exactly L.
struct MpnnSpec {
  std::size_t depth = 1;
  double c_phi = 1.0;
  double c_psi = 1.0;
  bool self_loops = true;
};

template <AdjacencyView G>
std::vector<double> mpnn_forward(const G& g, const MpnnSpec& spec, std::span<const double> x) {
  const std::size_t n = g.node_count();
  if (x.size() != n) throw PreconditionError("feature vector length does not match node count");
  if (!(spec.c_phi > 0.0 && spec.c_psi > 0.0)) throw ParameterError("c_phi and c_psi must be positive");
  for (double v : x) {
    if (!std::isfinite(v)) throw PreconditionError("node features must be finite");
  }
  std::vector<double> h(x.begin(), x.end());
  std::vector<double> next(n);
  for (std::size_t layer = 0; layer < spec.depth; ++layer) {
    for (Node i = 0; i < n; ++i) {
      const double di = static_cast<double>(g.degree(i));
      double message = 0.0;
      if (spec.self_loops) {
        message += spec.c_psi * std::tanh(h[i] + h[i]) / (di + 1.0);
        for (Node j : g.neighbors(i)) {
          const double weight = 1.0 / std::sqrt((di + 1.0) * static_cast<double>(g.degree(j) + 1));
          message += weight * spec.c_psi * std::tanh(h[i] + h[j]);
        }
        next[i] = spec.c_phi * std::tanh(h[i] + message);
      } else {
        for (Node j : g.neighbors(i)) message += spec.c_psi * std::tanh(h[j]) / di;
        next[i] = spec.c_phi * std::tanh(message);
      }
    }
    h.swap(next);
  }
  return h;
}

inline constexpr double kJacobianStep = 1e-5;

/// ∂h_i^{(L)}/∂x_s by central finite differences.
template <AdjacencyView G>
double mpnn_jacobian(const G& g, const MpnnSpec& spec, std::span<const double> x, Node i, Node s) {
  detail::check_node(g.node_count(), i);
  detail::check_node(g.node_count(), s);
  std::vector<double> plus(x.begin(), x.end());
  std::vector<double> minus(x.begin(), x.end());
  plus[s] += kJacobianStep;
  minus[s] -= kJacobianStep;
  const double up = mpnn_forward(g, spec, plus)[i];
  const double down = mpnn_forward(g, spec, minus)[i];
  return (up - down) / (2.0 * kJacobianStep);
}

/// 𝒥_{r+1}(i,s) = (Ã^{r+1})_{is} / Σ_k (Ã^{r+1})_{ik}, Ã = A + I. Walk counts are exact
/// (128-bit) whenever (d_max+1)^{r+1} fits; otherwise doubles.
template <AdjacencyView G>
double influence_score(const G& g, std::size_t r, Node i, Node s) {
  const std::size_t n = g.node_count();
  detail::check_node(n, i);
  detail::check_node(n, s);
  std::size_t d_max = 0;
  for (Node k = 0; k < n; ++k) d_max = std::max(d_max, g.degree(k));
  const double log_bound = static_cast<double>(r + 1) * std::log2(static_cast<double>(d_max + 1)) +
                           std::log2(static_cast<double>(n));
  auto walk = [&]<class T>(T) {
    std::vector<T> row(n, T{0});
    row[i] = T{1};
    for (std::size_t t = 0; t <= r; ++t) {
      std::vector<T> next(n, T{0});
      for (Node k = 0; k < n; ++k) {
        if (row[k] == T{0}) continue;
        next[k] += row[k];
        for (Node w : g.neighbors(k)) next[w] += row[k];
      }
      row.swap(next);
    }
    T total{0};
    for (const T& v : row) total += v;
    return static_cast<double>(row[s]) / static_cast<double>(total);
  };
  if (log_bound < 126.0) return walk(static_cast<unsigned __int128>(0));
  return walk(0.0);
}

/// Betweenness over ordered pairs (s, t), s != t, endpoints excluded (Brandes accumulation).
template <AdjacencyView G>
std::vector<double> betweenness(const G& g) {
  const std::size_t n = g.node_count();
  if (n > 1 && !is_connected(g)) throw PreconditionError("betweenness needs a connected graph");
  std::vector<double> b(n, 0.0);
  std::vector<double> sigma(n), delta(n);
  std::vector<std::size_t> dist(n);
  std::vector<Node> order;
  for (Node s = 0; s < n; ++s) {
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), kUnreachable);
    order.clear();
    sigma[s] = 1.0;
    dist[s] = 0;
    std::queue<Node> frontier;
    frontier.push(s);
    while (!frontier.empty()) {
      const Node v = frontier.front();
      frontier.pop();
      order.push_back(v);
      for (Node w : g.neighbors(v)) {
        if (dist[w] == kUnreachable) {
          dist[w] = dist[v] + 1;
          frontier.push(w);
        }
        if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const Node w = *it;
      for (Node v : g.neighbors(w)) {
        if (dist[v] + 1 == dist[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      }
      if (w != s) b[w] += delta[w];
    }
  }
  return b;
}

/// b_G = (1/n) Σ b(i), cross-checked against (1/n) Σ_{i≠j} (d(i,j) - 1).
template <AdjacencyView G>
double bottleneck_value(const G& g) {
  const std::size_t n = g.node_count();
  if (n == 0) throw PreconditionError("bottleneck value of an empty graph");
  const auto b = betweenness(g);
  double from_betweenness = 0.0;
  for (double v : b) from_betweenness += v;
  from_betweenness /= static_cast<double>(n);
  double from_distances = 0.0;
  for (Node i = 0; i < n; ++i) {
    const auto dist = bfs_distances(g, i);
    for (Node j = 0; j < n; ++j) {
      if (j != i) from_distances += static_cast<double>(dist[j] - 1);
    }
  }
  from_distances /= static_cast<double>(n);
  if (std::abs(from_betweenness - from_distances) > 1e-9 * std::max(1.0, from_distances)) {
    throw ConsistencyError("bottleneck identity violated: " + std::to_string(from_betweenness) +
                           " vs " + std::to_string(from_distances));
  }
  return from_distances;
}

/// |B_r(i)| for r = 0..r_max.
template <AdjacencyView G>
std::vector<std::size_t> ball_growth(const G& g, Node i, std::size_t r_max) {
  const auto dist = bfs_distances(g, i, r_max);
  std::vector<std::size_t> sizes(r_max + 1, 0);
  for (std::size_t d : dist) {
    if (d != kUnreachable) ++sizes[d];
  }
  for (std::size_t r = 1; r <= r_max; ++r) sizes[r] += sizes[r - 1];
  return sizes;
}

enum class Verdict { not_applicable, pass, fail };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::not_applicable: return "not_applicable";
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
  }
  return "unknown";
}

/// Tolerance used when testing Ric <= -2 + δ, so that δ = Ric + 2 itself qualifies.
inline constexpr double kCurvatureConditionSlack = 1e-12;

/// Over-squashing check on a strongly negative edge i~j (oriented so d_i <= d_j).
struct Theorem3Record {
  Node i = 0;
  Node j = 0;
  double delta = 0.0;
  double curvature = 0.0;
  std::optional<std::size_t> gamma_max;
  bool delta_below_degree_bound = false;  // δ < max(d_i, d_j)^{-1/2}
  bool delta_below_gamma_bound = false;   // δ < 1/γ_max (vacuous without squares)
  bool curvature_condition = false;       // Ric <= -2 + δ
  std::size_t q_size = 0;                 // |Q_j|, Q_j = S1(j) \ ({i} ∪ triangles ∪ squares_j)
  std::size_t triangle_count = 0;
  double mean_two_hop = 0.0;              // mean over Q_j of (Â²)_{ik}
  double mean_bound = 0.0;                // 3 δ^{1/4}
  bool q_size_ok = false;                 // |Q_j| > 1/δ
  bool q_ratio_ok = false;                // |Q_j|/(|triangles|+1) >= 3/δ - 1
  bool mean_ok = false;
  Verdict verdict = Verdict::not_applicable;
};

namespace detail {
inline std::pair<Node, Node> orient_by_degree(std::size_t di, std::size_t dj, Node i, Node j) {
  return di <= dj ? std::pair{i, j} : std::pair{j, i};
}
}  // namespace detail

template <AdjacencyView G>
Theorem3Record theorem3_check(const G& g, Node a, Node b, double delta) {
  detail::require_edge(g, a, b);
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must lie in (0, 1)");
  const auto [i, j] = detail::orient_by_degree(g.degree(a), g.degree(b), a, b);
  const EdgeProfile p = edge_profile(g, i, j);

  Theorem3Record rec;
  rec.i = i;
  rec.j = j;
  rec.delta = delta;
  rec.curvature = balanced_forman(p);
  rec.gamma_max = p.gamma_max;
  const double d_max = static_cast<double>(std::max(p.d_i, p.d_j));
  rec.delta_below_degree_bound = delta < 1.0 / std::sqrt(d_max);
  rec.delta_below_gamma_bound = !p.gamma_max || delta < 1.0 / static_cast<double>(*p.gamma_max);
  rec.curvature_condition = rec.curvature <= -2.0 + delta + kCurvatureConditionSlack;

  std::vector<Node> q;
  for (Node k : g.neighbors(j)) {
    if (k == i || std::binary_search(p.triangles.begin(), p.triangles.end(), k)) continue;
    if (std::find(p.squares_j.begin(), p.squares_j.end(), k) != p.squares_j.end()) continue;
    q.push_back(k);
  }
  rec.q_size = q.size();
  rec.triangle_count = p.triangles.size();
  if (!q.empty()) {
    const auto row = augmented_power_row(g, 2, i);
    double total = 0.0;
    for (Node k : q) total += row[k];
    rec.mean_two_hop = total / static_cast<double>(q.size());
  }
  rec.mean_bound = 3.0 * std::pow(delta, 0.25);
  rec.q_size_ok = static_cast<double>(rec.q_size) > 1.0 / delta;
  rec.q_ratio_ok = static_cast<double>(rec.q_size) / static_cast<double>(rec.triangle_count + 1) >=
                   3.0 / delta - 1.0 - 1e-9;
  rec.mean_ok = rec.mean_two_hop <= rec.mean_bound;
  if (rec.delta_below_degree_bound && rec.delta_below_gamma_bound && rec.curvature_condition) {
    rec.verdict = (rec.q_size_ok && rec.q_ratio_ok && rec.mean_ok) ? Verdict::pass : Verdict::fail;
  }
  return rec;
}

/// Mean betweenness over Ω_j = triangles ∪ {j} must be >= 1/δ when Ric <= -2 + δ and
/// δ < 1/(1 + γ_max).
struct OmegaRecord {
  Node i = 0;
  Node j = 0;
  double delta = 0.0;
  double curvature = 0.0;
  bool delta_below_gamma_bound = false;
  bool curvature_condition = false;
  std::vector<Node> omega;
  double mean_betweenness = 0.0;
  Verdict verdict = Verdict::not_applicable;
};

template <AdjacencyView G>
OmegaRecord omega_betweenness_check(const G& g, Node a, Node b, double delta,
                                    std::span<const double> centrality) {
  detail::require_edge(g, a, b);
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must lie in (0, 1)");
  if (centrality.size() != g.node_count()) {
    throw PreconditionError("betweenness vector length does not match node count");
  }
  const auto [i, j] = detail::orient_by_degree(g.degree(a), g.degree(b), a, b);
  const EdgeProfile p = edge_profile(g, i, j);
  OmegaRecord rec;
  rec.i = i;
  rec.j = j;
  rec.delta = delta;
  rec.curvature = balanced_forman(p);
  rec.delta_below_gamma_bound =
      !p.gamma_max || delta < 1.0 / (1.0 + static_cast<double>(*p.gamma_max));
  rec.curvature_condition = rec.curvature <= -2.0 + delta + kCurvatureConditionSlack;
  rec.omega = p.triangles;
  rec.omega.insert(std::lower_bound(rec.omega.begin(), rec.omega.end(), j), j);
  double total = 0.0;
  for (Node k : rec.omega) total += centrality[k];
  rec.mean_betweenness = total / static_cast<double>(rec.omega.size());
  if (rec.delta_below_gamma_bound && rec.curvature_condition) {
    rec.verdict = rec.mean_betweenness >= 1.0 / delta - 1e-9 ? Verdict::pass : Verdict::fail;
  }
  return rec;
}

template <AdjacencyView G>
OmegaRecord omega_betweenness_check(const G& g, Node a, Node b, double delta) {
  const auto centrality = betweenness(g);
  return omega_betweenness_check(g, a, b, delta, centrality);
}

struct BottleneckReport {
  std::vector<double> betweenness;
  double bottleneck_value = 0.0;
  std::vector<Theorem3Record> theorem3;
  std::vector<OmegaRecord> omega;
};

}  // namespace graphcurv

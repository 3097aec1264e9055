#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "graphcurv/errors.hpp"
#include "graphcurv/graph.hpp"
#include "graphcurv/rewiring.hpp"

namespace graphcurv {

/// One inequality evaluated on concrete data: holds ⇔ lhs <= rhs (up to `slack`).
struct BoundCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

inline BoundCheck make_check(std::string name, double lhs, double rhs, double slack = 1e-12) {
  return {std::move(name), lhs, rhs, lhs <= rhs + slack};
}

enum class CheegerMethod { exact, sweep };

struct CheegerResult {
  double value = 0.0;
  std::vector<Node> witness;  // one side of the minimising cut, ascending
  std::size_t boundary = 0;   // |∂S|
  std::size_t volume = 0;     // min(vol S, vol S̄)
};

struct SpectralReport {
  double lambda1 = 0.0;
  double cheeger = 0.0;
  std::vector<Node> cheeger_witness;
  CheegerMethod method = CheegerMethod::exact;
  std::vector<BoundCheck> bound_checks;
};

inline constexpr double kZeroEigenvalue = 1e-8;
inline constexpr std::size_t kDefaultExhaustiveLimit = 24;

/// L = I - D^{-1/2} A D^{-1/2}; isolated nodes get a zero row/column.
template <AdjacencyView G>
DenseMatrix normalized_laplacian(const G& g) {
  const std::size_t n = g.node_count();
  DenseMatrix l = DenseMatrix::Identity(n, n);
  for (Node i = 0; i < n; ++i) {
    if (g.degree(i) == 0) {
      l(i, i) = 0.0;
      continue;
    }
    for (Node j : g.neighbors(i)) {
      l(i, j) = -1.0 / std::sqrt(static_cast<double>(g.degree(i) * g.degree(j)));
    }
  }
  return l;
}

namespace detail {
template <AdjacencyView G>
void require_connected(const G& g, const char* what) {
  if (g.node_count() < 2) throw PreconditionError(std::string(what) + " needs at least 2 nodes");
  if (!is_connected(g)) throw PreconditionError(std::string(what) + " needs a connected graph");
}
}  // namespace detail

/// Smallest nonzero eigenvalue of the normalized Laplacian (dense self-adjoint solver).
template <AdjacencyView G>
double spectral_gap(const G& g) {
  if (g.node_count() < 2) throw PreconditionError("spectral gap needs at least 2 nodes");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(Eigen::MatrixXd(normalized_laplacian(g)),
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
  const auto& values = solver.eigenvalues();  // ascending
  std::size_t zeros = 0;
  for (Eigen::Index t = 0; t < values.size(); ++t) {
    if (std::abs(values[t]) < kZeroEigenvalue) ++zeros;
  }
  if (zeros != 1) {
    throw PreconditionError("graph is disconnected (zero eigenvalue has multiplicity " +
                            std::to_string(zeros) + ")");
  }
  return values[1];
}

namespace detail {
// True when a < b in lexicographic order of ascending node lists.
inline bool lexicographically_smaller(std::uint64_t a, std::uint64_t b) {
  while (a != 0 && b != 0) {
    const int la = std::countr_zero(a);
    const int lb = std::countr_zero(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

inline std::vector<Node> mask_to_nodes(std::uint64_t mask) {
  std::vector<Node> out;
  while (mask) {
    out.push_back(static_cast<Node>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}
}  // namespace detail

/// h_G = min_S |∂S| / min(vol S, vol S̄) by exhaustive enumeration of cuts. The side
/// containing node 0 is enumerated (each partition once) via a Gray code; ratios are
/// compared exactly in integers. The witness is the lexicographically smallest minimiser.
template <AdjacencyView G>
CheegerResult cheeger_exact(const G& g, std::size_t limit = kDefaultExhaustiveLimit) {
  const std::size_t n = g.node_count();
  if (n > limit || n > 63) {
    throw PreconditionError("exhaustive Cheeger limited to n <= " + std::to_string(limit) +
                            " (n = " + std::to_string(n) + "); use cheeger_sweep instead");
  }
  detail::require_connected(g, "Cheeger constant");
  std::vector<std::uint64_t> adj(n, 0);
  std::size_t total_volume = 0;
  for (Node i = 0; i < n; ++i) {
    for (Node j : g.neighbors(i)) adj[i] |= std::uint64_t{1} << j;
    total_volume += g.degree(i);
  }
  const std::uint64_t all = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);

  std::uint64_t set = 1;  // node 0 always inside
  std::int64_t boundary = static_cast<std::int64_t>(g.degree(0));
  std::int64_t vol = static_cast<std::int64_t>(g.degree(0));
  std::int64_t best_cut = -1;
  std::int64_t best_vol = 1;
  std::uint64_t best_set = 0;

  auto consider = [&] {
    if (set == all) return;
    const std::int64_t denom = std::min(vol, static_cast<std::int64_t>(total_volume) - vol);
    if (denom <= 0) return;
    const bool better = best_cut < 0 || boundary * best_vol < best_cut * denom;
    const bool tie = !better && boundary * best_vol == best_cut * denom;
    if (better || (tie && detail::lexicographically_smaller(set, best_set))) {
      best_cut = boundary;
      best_vol = denom;
      best_set = set;
    }
  };
  consider();
  const std::uint64_t steps = std::uint64_t{1} << (n - 1);
  for (std::uint64_t step = 1; step < steps; ++step) {
    const Node v = static_cast<Node>(std::countr_zero(step)) + 1;  // Gray code flip
    const auto inside = static_cast<std::int64_t>(std::popcount(adj[v] & set));
    const auto deg = static_cast<std::int64_t>(g.degree(v));
    if (set & (std::uint64_t{1} << v)) {
      set &= ~(std::uint64_t{1} << v);
      boundary += 2 * inside - deg;
      vol -= deg;
    } else {
      set |= std::uint64_t{1} << v;
      boundary += deg - 2 * inside;
      vol += deg;
    }
    consider();
  }
  CheegerResult out;
  out.value = static_cast<double>(best_cut) / static_cast<double>(best_vol);
  out.witness = detail::mask_to_nodes(best_set);
  out.boundary = static_cast<std::size_t>(best_cut);
  out.volume = static_cast<std::size_t>(best_vol);
  return out;
}

/// Fiedler sweep cut: order nodes by D^{-1/2}·(second eigenvector of L) and take the best
/// prefix. Always an upper bound on h_G.
template <AdjacencyView G>
CheegerResult cheeger_sweep(const G& g) {
  detail::require_connected(g, "Cheeger sweep");
  const std::size_t n = g.node_count();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(Eigen::MatrixXd(normalized_laplacian(g)));
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
  Eigen::VectorXd fiedler = solver.eigenvectors().col(1);
  std::vector<double> score(n);
  for (Node i = 0; i < n; ++i) score[i] = fiedler[i] / std::sqrt(static_cast<double>(g.degree(i)));
  std::vector<Node> order(n);
  std::iota(order.begin(), order.end(), Node{0});
  std::stable_sort(order.begin(), order.end(), [&](Node a, Node b) { return score[a] < score[b]; });

  std::size_t total_volume = 0;
  for (Node i = 0; i < n; ++i) total_volume += g.degree(i);
  std::vector<bool> inside(n, false);
  std::int64_t boundary = 0;
  std::size_t vol = 0;
  CheegerResult best;
  bool have = false;
  for (std::size_t t = 0; t + 1 < n; ++t) {
    const Node v = order[t];
    std::int64_t to_inside = 0;
    for (Node w : g.neighbors(v)) to_inside += inside[w] ? 1 : 0;
    boundary += static_cast<std::int64_t>(g.degree(v)) - 2 * to_inside;
    inside[v] = true;
    vol += g.degree(v);
    const std::size_t denom = std::min(vol, total_volume - vol);
    if (denom == 0) continue;
    const double value = static_cast<double>(boundary) / static_cast<double>(denom);
    if (!have || value < best.value) {
      have = true;
      best.value = value;
      best.boundary = static_cast<std::size_t>(boundary);
      best.volume = denom;
      best.witness.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(t + 1));
    }
  }
  std::sort(best.witness.begin(), best.witness.end());
  return best;
}

namespace detail {
inline std::vector<bool> membership(std::size_t n, std::span<const Node> subset, const char* what) {
  std::vector<bool> in(n, false);
  for (Node i : subset) {
    check_node(n, i);
    if (in[i]) throw PreconditionError(std::string(what) + ": repeated node in subset");
    in[i] = true;
  }
  if (subset.empty() || subset.size() == n) {
    throw PreconditionError(std::string(what) + ": subset must be a nonempty proper subset");
  }
  return in;
}

template <AdjacencyView G>
std::size_t boundary_size(const G& g, const std::vector<bool>& in) {
  std::size_t cut = 0;
  for (Node i = 0; i < g.node_count(); ++i) {
    if (!in[i]) continue;
    for (Node j : g.neighbors(i)) cut += in[j] ? 0 : 1;
  }
  return cut;
}
}  // namespace detail

/// h_{S,α} = (1/|S|) Σ_{i∈S, j∉S} (R_α)_{ij}.
template <AdjacencyView G>
double ppr_cheeger(const G& g, std::span<const Node> subset, double alpha) {
  const auto in = detail::membership(g.node_count(), subset, "PPR Cheeger");
  const DenseMatrix r = ppr_matrix(g, alpha);
  double cross = 0.0;
  for (Node i : subset) {
    for (Node j = 0; j < g.node_count(); ++j) {
      if (!in[j]) cross += r(i, j);
    }
  }
  return cross / static_cast<double>(subset.size());
}

namespace detail {
template <AdjacencyView G>
void require_half_volume(const G& g, std::span<const Node> subset) {
  std::size_t total = 0;
  for (Node i = 0; i < g.node_count(); ++i) total += g.degree(i);
  const std::size_t vol_s = volume(g, subset);
  if (2 * vol_s > total) {
    throw PreconditionError("subset volume " + std::to_string(vol_s) +
                            " exceeds half the graph volume " + std::to_string(total));
  }
}
}  // namespace detail

/// h_{S,α} <= ((1-α)/α) · (d_avg(S)/d_min(S)) · h_S with h_S = |∂S|/vol(S).
template <AdjacencyView G>
BoundCheck check_digl_bound(const G& g, std::span<const Node> subset, double alpha) {
  const auto in = detail::membership(g.node_count(), subset, "DIGL bound");
  detail::require_half_volume(g, subset);
  const double lhs = ppr_cheeger(g, subset, alpha);
  std::size_t d_min = g.degree(subset.front());
  for (Node i : subset) d_min = std::min(d_min, g.degree(i));
  const double vol_s = static_cast<double>(volume(g, subset));
  const double d_avg = vol_s / static_cast<double>(subset.size());
  const double h_s = static_cast<double>(detail::boundary_size(g, in)) / vol_s;
  const double rhs = ((1.0 - alpha) / alpha) * (d_avg / static_cast<double>(d_min)) * h_s;
  return make_check("ppr_cheeger_bound", lhs, rhs, 1e-12);
}

struct MassConcentration {
  std::vector<Node> violating;    // S' = {i ∈ S : Σ_{j∉S} R_ij > k((1-α)/α) h_S}
  double violating_volume = 0.0;  // vol(S')
  double allowed_volume = 0.0;    // vol(S)/(2k)
  bool holds = false;
};

/// Few nodes of S leak much PPR mass out of S: vol(S') <= vol(S)/(2k).
template <AdjacencyView G>
MassConcentration ppr_mass_concentration(const G& g, std::span<const Node> subset, double alpha,
                                         std::size_t k) {
  if (k == 0) throw ParameterError("k must be a positive integer");
  const auto in = detail::membership(g.node_count(), subset, "PPR mass concentration");
  detail::require_half_volume(g, subset);
  const DenseMatrix r = ppr_matrix(g, alpha);
  const double vol_s = static_cast<double>(volume(g, subset));
  const double h_s = static_cast<double>(detail::boundary_size(g, in)) / vol_s;
  const double threshold = static_cast<double>(k) * ((1.0 - alpha) / alpha) * h_s;
  MassConcentration out;
  for (Node i : subset) {
    double leak = 0.0;
    for (Node j = 0; j < g.node_count(); ++j) {
      if (!in[j]) leak += r(i, j);
    }
    if (leak > threshold + 1e-12) {
      out.violating.push_back(i);
      out.violating_volume += static_cast<double>(g.degree(i));
    }
  }
  std::sort(out.violating.begin(), out.violating.end());
  out.allowed_volume = vol_s / (2.0 * static_cast<double>(k));
  out.holds = out.violating_volume <= out.allowed_volume + 1e-12;
  return out;
}

}  // namespace graphcurv

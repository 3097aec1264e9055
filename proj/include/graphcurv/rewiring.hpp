#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "graphcurv/curvature.hpp"
#include "graphcurv/errors.hpp"
#include "graphcurv/graph.hpp"
#include "graphcurv/rng.hpp"

namespace graphcurv {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Local edge curvatures usable as the SDRF objective.
enum class RewireCurvature { balanced_forman, forman };

template <AdjacencyView G>
double edge_curvature(const G& g, Node i, Node j, RewireCurvature kind) {
  return kind == RewireCurvature::forman ? forman(g, i, j) : balanced_forman(g, i, j);
}

struct SdrfConfig {
  double tau = kInfinity;           // softmax temperature; infinity = greedy argmax
  std::size_t max_iterations = 10;
  double c_plus = kInfinity;        // remove the most curved edge only above this value
  double convergence_floor = 0.0;   // stop once every edge has curvature > floor
  std::uint64_t seed = 0;
  RewireCurvature curvature_kind = RewireCurvature::balanced_forman;
};

struct RewireEvent {
  std::size_t iteration = 0;
  Edge target;
  double min_curvature_before = 0.0;
  Edge added;
  double sampled_probability = 1.0;
  std::optional<Edge> removed;
  std::optional<double> removed_curvature;
};

enum class Termination { converged, max_iterations };

struct RewireTrace {
  std::vector<RewireEvent> events;
  Termination termination = Termination::max_iterations;
};

struct Candidate {
  Edge edge;
  double improvement = 0.0;
};

namespace detail {

inline std::vector<Node> closed_neighborhood(std::span<const Node> neighbors, Node center) {
  std::vector<Node> out(neighbors.begin(), neighbors.end());
  out.insert(std::lower_bound(out.begin(), out.end(), center), center);
  return out;
}

// Evaluates every admissible (k, l) by inserting it, re-evaluating (i, j), and removing it.
inline std::vector<Candidate> candidate_improvements_in_place(EditableGraph& g, Node i, Node j,
                                                              RewireCurvature kind) {
  require_edge(g, i, j);
  const double before = edge_curvature(g, i, j, kind);
  const auto ball_i = closed_neighborhood(g.neighbors(i), i);
  const auto ball_j = closed_neighborhood(g.neighbors(j), j);
  std::set<Edge> pairs;
  for (Node k : ball_i) {
    for (Node l : ball_j) {
      if (k != l && !g.has_edge(k, l)) pairs.emplace(k, l);
    }
  }
  std::vector<Candidate> out;
  out.reserve(pairs.size());
  for (const Edge& e : pairs) {
    g.add_edge(e.u, e.v);
    const double after = edge_curvature(g, i, j, kind);
    g.remove_edge(e.u, e.v);
    out.push_back({e, after - before});
  }
  return out;
}

}  // namespace detail

/// Candidate supporting edges for i~j with their curvature improvement, sorted by edge.
template <AdjacencyView G>
std::vector<Candidate> candidate_improvements(const G& g, Node i, Node j,
                                              RewireCurvature kind = RewireCurvature::balanced_forman) {
  EditableGraph work = [&] {
    if constexpr (std::is_same_v<G, EditableGraph>) {
      return g;
    } else {
      return EditableGraph(g);
    }
  }();
  return detail::candidate_improvements_in_place(work, i, j, kind);
}

/// softmax(τx) probabilities with max-shift; τ = ∞ puts all mass on the first maximiser.
inline std::vector<double> softmax_probabilities(std::span<const double> x, double tau) {
  if (x.empty()) throw PreconditionError("softmax over an empty candidate list");
  if (!(tau > 0.0)) throw ParameterError("tau must be positive");
  std::vector<double> p(x.size(), 0.0);
  const auto best = std::max_element(x.begin(), x.end());  // first maximiser
  if (std::isinf(tau)) {
    p[static_cast<std::size_t>(best - x.begin())] = 1.0;
    return p;
  }
  const double shift = tau * *best;
  double total = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    p[t] = std::exp(tau * x[t] - shift);
    total += p[t];
  }
  for (double& v : p) v /= total;
  return p;
}

/// Draws an index from softmax(τx). Consumes one uniform draw for finite τ, none for τ = ∞.
inline std::size_t softmax_sample(std::span<const double> x, double tau, SplitMix64& rng) {
  const auto p = softmax_probabilities(x, tau);
  if (std::isinf(tau)) {
    return static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
  }
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t t = 0; t < p.size(); ++t) {
    acc += p[t];
    if (u < acc) return t;
  }
  // u landed in the rounding gap above the accumulated total; take the last positive entry.
  for (std::size_t t = p.size(); t-- > 0;) {
    if (p[t] > 0.0) return t;
  }
  return p.size() - 1;
}

/// Edge → curvature table with ordered access by (value, edge) for min/max selection.
class CurvatureTable {
 public:
  template <AdjacencyView G>
  CurvatureTable(const G& g, RewireCurvature kind) : kind_(kind) {
    for (Node a = 0; a < g.node_count(); ++a) {
      for (Node b : g.neighbors(a)) {
        if (a < b) set(Edge(a, b), edge_curvature(g, a, b, kind_));
      }
    }
  }

  bool empty() const { return by_edge_.empty(); }
  std::size_t size() const { return by_edge_.size(); }
  double at(const Edge& e) const { return by_edge_.at(e); }
  const std::map<Edge, double>& values() const { return by_edge_; }

  /// Smallest curvature; ties go to the lexicographically first edge.
  std::pair<Edge, double> min() const {
    const auto& [value, edge] = *by_value_.begin();
    return {edge, value};
  }

  /// Largest curvature; ties go to the lexicographically first edge.
  std::pair<Edge, double> max() const {
    const double top = by_value_.rbegin()->first;
    const auto& [value, edge] = *by_value_.lower_bound({top, Edge{}});
    return {edge, value};
  }

  void set(const Edge& e, double value) {
    erase(e);
    by_edge_.emplace(e, value);
    by_value_.emplace(value, e);
  }

  void erase(const Edge& e) {
    if (auto it = by_edge_.find(e); it != by_edge_.end()) {
      by_value_.erase({it->second, e});
      by_edge_.erase(it);
    }
  }

  /// Nodes of B2(k) ∪ B2(l): an edit on (k, l) only changes curvatures of edges touching them.
  template <AdjacencyView G>
  static std::set<Node> affected_region(const G& g, Node k, Node l) {
    std::set<Node> region;
    for (Node c : {k, l}) {
      for (Node a : ball(g, c, 2)) region.insert(a);
    }
    return region;
  }

  /// Recomputes every edge of `g` with an endpoint in `region`.
  template <AdjacencyView G>
  void refresh(const G& g, const std::set<Node>& region) {
    for (Node a : region) {
      for (Node b : g.neighbors(a)) set(Edge(a, b), edge_curvature(g, a, b, kind_));
    }
  }

 private:
  RewireCurvature kind_;
  std::map<Edge, double> by_edge_;
  std::set<std::pair<double, Edge>> by_value_;
};

/// Stochastic Discrete Ricci Flow. Each iteration supports the most negatively curved edge
/// with one sampled edge addition, then removes the most positively curved edge if it
/// exceeds C⁺. Curvatures are updated locally after each edit.
inline std::pair<Graph, RewireTrace> sdrf(const Graph& g, const SdrfConfig& cfg) {
  if (!(cfg.tau > 0.0)) throw ParameterError("tau must be positive");
  if (g.edge_count() == 0) throw PreconditionError("SDRF needs a graph with at least one edge");

  EditableGraph work(g);
  CurvatureTable table(work, cfg.curvature_kind);
  SplitMix64 rng(cfg.seed);
  RewireTrace trace;
  trace.termination = Termination::max_iterations;

  for (std::size_t iteration = 0; iteration < cfg.max_iterations; ++iteration) {
    const auto [target, lowest] = table.min();
    if (lowest > cfg.convergence_floor) {
      trace.termination = Termination::converged;
      break;
    }
    const auto candidates =
        detail::candidate_improvements_in_place(work, target.u, target.v, cfg.curvature_kind);
    if (candidates.empty()) {
      trace.termination = Termination::converged;
      break;
    }
    std::vector<double> x;
    x.reserve(candidates.size());
    for (const auto& c : candidates) x.push_back(c.improvement);
    if (std::isinf(cfg.tau) && *std::max_element(x.begin(), x.end()) <= 0.0) {
      trace.termination = Termination::converged;
      break;
    }
    const auto probabilities = softmax_probabilities(x, cfg.tau);
    const std::size_t pick = softmax_sample(x, cfg.tau, rng);
    const Edge added = candidates[pick].edge;

    RewireEvent event;
    event.iteration = iteration;
    event.target = target;
    event.min_curvature_before = lowest;
    event.added = added;
    event.sampled_probability = probabilities[pick];

    work.add_edge(added.u, added.v);
    table.refresh(work, CurvatureTable::affected_region(work, added.u, added.v));

    const auto [top, highest] = table.max();
    if (highest > cfg.c_plus) {
      // Balls are taken while the edge is still present so they cover everything it touched.
      const auto region = CurvatureTable::affected_region(work, top.u, top.v);
      work.remove_edge(top.u, top.v);
      table.erase(top);
      table.refresh(work, region);
      event.removed = top;
      event.removed_curvature = highest;
    }
    trace.events.push_back(event);
  }
  return {work.freeze(), std::move(trace)};
}

/// R_α = α (I - (1-α) D⁻¹A)⁻¹, by dense LU solve.
template <AdjacencyView G>
DenseMatrix ppr_matrix(const G& g, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ParameterError("PPR alpha must lie in (0, 1]");
  const std::size_t n = g.node_count();
  DenseMatrix system = DenseMatrix::Identity(n, n);
  for (Node i = 0; i < n; ++i) {
    const std::size_t d = g.degree(i);
    if (d == 0) throw PreconditionError("PPR matrix undefined: node " + std::to_string(i) + " is isolated");
    for (Node j : g.neighbors(i)) system(i, j) -= (1.0 - alpha) / static_cast<double>(d);
  }
  DenseMatrix identity = DenseMatrix::Identity(n, n);
  DenseMatrix r = system.partialPivLu().solve(identity);
  r *= alpha;
  return r;
}

/// Weighted arcs (u, v, w > 0). `symmetric` means every arc has an equal-weight reverse.
struct WeightedGraph {
  struct Entry {
    Node u = 0;
    Node v = 0;
    double weight = 0.0;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  std::size_t node_count = 0;
  std::vector<Entry> entries;  // sorted by (u, v)
  bool symmetric = false;
  std::vector<std::string> names;

  /// Unweighted support (u~v iff either arc is present).
  Graph binarize() const {
    std::set<Edge> edges;
    for (const auto& e : entries) {
      if (e.u != e.v) edges.emplace(e.u, e.v);
    }
    std::vector<Edge> list(edges.begin(), edges.end());
    return Graph::from_edges(node_count, list, names);
  }
};

/// Absolute tolerance under which two PPR entries tie during top-k selection.
inline constexpr double kTopKTie = 1e-12;

struct TopK {
  std::size_t k = 0;
};
struct Epsilon {
  double eps = 0.0;
};

/// DIGL-style rewiring: dense R_α, diagonal zeroed, then per-row top-k (larger value first,
/// near-ties to the smaller column) or global threshold ε; optionally symmetrized as (M + Mᵀ)/2.
template <AdjacencyView G>
WeightedGraph digl_rewire(const G& g, double alpha, std::variant<TopK, Epsilon> sparsify,
                          bool symmetrize) {
  const std::size_t n = g.node_count();
  if (const auto* top = std::get_if<TopK>(&sparsify)) {
    if (top->k == 0 || top->k >= n) throw ParameterError("top-k needs 1 <= k < n");
  } else if (!(std::get<Epsilon>(sparsify).eps > 0.0)) {
    throw ParameterError("epsilon must be positive");
  }
  DenseMatrix r = ppr_matrix(g, alpha);
  r.diagonal().setZero();

  DenseMatrix kept = DenseMatrix::Zero(n, n);
  if (const auto* top = std::get_if<TopK>(&sparsify)) {
    std::vector<Node> order(n);
    for (Node i = 0; i < n; ++i) {
      for (Node c = 0; c < n; ++c) order[c] = c;
      std::stable_sort(order.begin(), order.end(),
                       [&](Node a, Node b) { return r(i, a) > r(i, b); });
      // Values within kTopKTie of a run's leader count as tied; ties go to the smaller column.
      for (std::size_t lo = 0; lo < n;) {
        std::size_t hi = lo + 1;
        while (hi < n && r(i, order[lo]) - r(i, order[hi]) <= kTopKTie) ++hi;
        std::sort(order.begin() + static_cast<std::ptrdiff_t>(lo),
                  order.begin() + static_cast<std::ptrdiff_t>(hi));
        lo = hi;
      }
      for (std::size_t t = 0; t < top->k; ++t) kept(i, order[t]) = r(i, order[t]);
    }
  } else {
    const double eps = std::get<Epsilon>(sparsify).eps;
    for (Node i = 0; i < n; ++i) {
      for (Node j = 0; j < n; ++j) {
        if (r(i, j) >= eps) kept(i, j) = r(i, j);
      }
    }
  }
  if (symmetrize) kept = ((kept + kept.transpose()) * 0.5).eval();

  WeightedGraph out;
  out.node_count = n;
  out.symmetric = symmetrize;
  if constexpr (std::is_same_v<G, Graph>) out.names = g.names();
  for (Node i = 0; i < n; ++i) {
    for (Node j = 0; j < n; ++j) {
      if (i != j && kept(i, j) > 0.0) out.entries.push_back({i, j, kept(i, j)});
    }
  }
  if (!symmetrize) {
    out.symmetric = true;
    for (const auto& e : out.entries) {
      if (kept(e.v, e.u) != e.weight) {
        out.symmetric = false;
        break;
      }
    }
  }
  return out;
}

}  // namespace graphcurv

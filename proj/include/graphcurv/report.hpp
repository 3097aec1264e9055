#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphcurv/curvature.hpp"
#include "graphcurv/errors.hpp"
#include "graphcurv/graph.hpp"
#include "graphcurv/parallel.hpp"
#include "graphcurv/sensitivity.hpp"
#include "graphcurv/spectral.hpp"
#include "graphcurv/transport.hpp"

namespace graphcurv {

enum class CurvatureKind { balanced_forman, forman, ollivier, jost_liu };

/// Shortest decimal text that reads back to the same double.
inline std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline constexpr std::array<CurvatureKind, 4> kAllCurvatureKinds = {
    CurvatureKind::balanced_forman, CurvatureKind::forman, CurvatureKind::ollivier,
    CurvatureKind::jost_liu};

/// Short column names: bf, forman, ollivier, phi.
inline std::string_view to_string(CurvatureKind k) {
  switch (k) {
    case CurvatureKind::balanced_forman: return "bf";
    case CurvatureKind::forman: return "forman";
    case CurvatureKind::ollivier: return "ollivier";
    case CurvatureKind::jost_liu: return "phi";
  }
  return "unknown";
}

inline CurvatureKind parse_curvature_kind(std::string_view s) {
  if (s == "bf" || s == "balanced_forman") return CurvatureKind::balanced_forman;
  if (s == "forman") return CurvatureKind::forman;
  if (s == "ollivier" || s == "kappa") return CurvatureKind::ollivier;
  if (s == "phi" || s == "jost_liu") return CurvatureKind::jost_liu;
  throw ParameterError("unknown curvature kind '" + std::string(s) + "'");
}

template <AdjacencyView G>
double curvature(const G& g, Node i, Node j, CurvatureKind kind) {
  switch (kind) {
    case CurvatureKind::balanced_forman: return balanced_forman(g, i, j);
    case CurvatureKind::forman: return forman(g, i, j);
    case CurvatureKind::ollivier: return ollivier_limit(g, i, j);
    case CurvatureKind::jost_liu: return jost_liu_lower_bound(g, i, j);
  }
  return 0.0;
}

inline constexpr std::size_t kHistogramBuckets = 20;

/// Per-kind summary. The histogram splits [min, max] into kHistogramBuckets equal bins, the
/// last one closed; when min == max every value lands in the first bin.
struct CurvatureSummary {
  CurvatureKind kind = CurvatureKind::balanced_forman;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  std::vector<std::size_t> histogram;
};

struct CurvatureRecord {
  Edge edge;
  std::vector<double> values;  // parallel to CurvatureReport::kinds
};

struct CurvatureReport {
  std::vector<CurvatureKind> kinds;
  std::vector<CurvatureRecord> records;  // ascending edge order
  std::vector<CurvatureSummary> summary;  // empty when there are no edges
};

inline CurvatureSummary summarize(CurvatureKind kind, const std::vector<double>& values) {
  CurvatureSummary s;
  s.kind = kind;
  s.histogram.assign(kHistogramBuckets, 0);
  if (values.empty()) return s;
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  double total = 0.0;
  for (double v : values) total += v;
  s.mean = total / static_cast<double>(values.size());
  const double width = (s.max - s.min) / static_cast<double>(kHistogramBuckets);
  for (double v : values) {
    std::size_t bin = 0;
    if (width > 0.0) {
      bin = std::min(kHistogramBuckets - 1, static_cast<std::size_t>((v - s.min) / width));
    }
    ++s.histogram[bin];
  }
  return s;
}

/// Evaluates each requested kind on every edge; edges are distributed over `jobs` workers
/// and the result does not depend on the worker count.
template <AdjacencyView G>
CurvatureReport curvature_report(const G& g, std::vector<CurvatureKind> kinds, std::size_t jobs = 1) {
  CurvatureReport report;
  report.kinds = std::move(kinds);
  for (Node i = 0; i < g.node_count(); ++i) {
    for (Node j : g.neighbors(i)) {
      if (i < j) report.records.push_back({Edge(i, j), {}});
    }
  }
  parallel_for(report.records.size(), jobs, [&](std::size_t t) {
    auto& rec = report.records[t];
    rec.values.reserve(report.kinds.size());
    for (CurvatureKind k : report.kinds) rec.values.push_back(curvature(g, rec.edge.u, rec.edge.v, k));
  });
  if (!report.records.empty()) {
    for (std::size_t c = 0; c < report.kinds.size(); ++c) {
      std::vector<double> column;
      column.reserve(report.records.size());
      for (const auto& rec : report.records) column.push_back(rec.values[c]);
      report.summary.push_back(summarize(report.kinds[c], column));
    }
  }
  return report;
}

struct SpectralOptions {
  std::size_t exhaustive_limit = kDefaultExhaustiveLimit;
  std::vector<double> ppr_alphas = {0.05, 0.15, 0.5};
  std::size_t concentration_k = 2;
};

namespace detail {
// Side of a cut with volume at most half the total (the given side on ties).
template <AdjacencyView G>
std::vector<Node> smaller_side(const G& g, const std::vector<Node>& side) {
  std::size_t total = 0;
  for (Node i = 0; i < g.node_count(); ++i) total += g.degree(i);
  if (2 * volume(g, std::span<const Node>(side)) <= total) return side;
  std::vector<bool> in(g.node_count(), false);
  for (Node i : side) in[i] = true;
  std::vector<Node> other;
  for (Node i = 0; i < g.node_count(); ++i) {
    if (!in[i]) other.push_back(i);
  }
  return other;
}
}  // namespace detail

/// λ₁, the Cheeger constant (exhaustive up to the limit, sweep beyond), and the bound checks:
/// the Cheeger sandwich, the positive-curvature lower bounds when min Ric > 0, and the PPR bounds
/// on the smaller side of the Cheeger cut for each α.
template <AdjacencyView G>
SpectralReport spectral_report(const G& g, const SpectralOptions& opts = {}) {
  SpectralReport r;
  r.lambda1 = spectral_gap(g);
  CheegerResult h = g.node_count() <= opts.exhaustive_limit ? cheeger_exact(g, opts.exhaustive_limit)
                                                           : cheeger_sweep(g);
  r.method = g.node_count() <= opts.exhaustive_limit ? CheegerMethod::exact : CheegerMethod::sweep;
  r.cheeger = h.value;
  r.cheeger_witness = h.witness;

  // With a sweep value h' >= h_G only the upper half of the sandwich remains implied.
  if (r.method == CheegerMethod::exact) {
    r.bound_checks.push_back(make_check("cheeger_upper", r.lambda1, 2.0 * r.cheeger, 1e-8));
    r.bound_checks.push_back(make_check("cheeger_lower", r.cheeger * r.cheeger / 2.0, r.lambda1, 1e-8));
  }

  double k = std::numeric_limits<double>::infinity();
  for (Node i = 0; i < g.node_count(); ++i) {
    for (Node j : g.neighbors(i)) {
      if (i < j) k = std::min(k, balanced_forman(g, i, j));
    }
  }
  if (r.method == CheegerMethod::exact && k > 0.0 && k != std::numeric_limits<double>::infinity()) {
    // h_G >= λ₁/2 >= k/2; the first half is the Cheeger sandwich, the second a lower bound on λ₁.
    r.bound_checks.push_back(make_check("curvature_spectral_lower", k / 2.0, r.lambda1 / 2.0, 1e-8));
    r.bound_checks.push_back(make_check("curvature_cheeger_lower", k / 2.0, r.cheeger, 1e-8));
  }

  const auto side = detail::smaller_side(g, h.witness);
  for (double alpha : opts.ppr_alphas) {
    auto check = check_digl_bound(g, side, alpha);
    check.name += "@alpha=" + format_number(alpha);
    r.bound_checks.push_back(check);
    const auto mass = ppr_mass_concentration(g, side, alpha, opts.concentration_k);
    r.bound_checks.push_back(make_check("ppr_mass_concentration@alpha=" + format_number(alpha),
                                        mass.violating_volume, mass.allowed_volume, 1e-12));
  }
  return r;
}

/// Betweenness, b_G and the per-edge over-squashing / Ω_j records. Without an explicit δ each
/// edge uses δ = Ric + 2, the smallest δ meeting the curvature condition; edges where that
/// value falls outside (0, 1) are reported as not applicable.
template <AdjacencyView G>
BottleneckReport bottleneck_report(const G& g, std::optional<double> delta = std::nullopt) {
  BottleneckReport r;
  r.betweenness = betweenness(g);
  r.bottleneck_value = bottleneck_value(g);
  for (Node i = 0; i < g.node_count(); ++i) {
    for (Node j : g.neighbors(i)) {
      if (j < i) continue;
      double d = delta ? *delta : balanced_forman(g, i, j) + 2.0;
      if (!(d > 0.0 && d < 1.0)) {
        Theorem3Record t;
        std::tie(t.i, t.j) = detail::orient_by_degree(g.degree(i), g.degree(j), i, j);
        t.delta = d;
        t.curvature = balanced_forman(g, i, j);
        r.theorem3.push_back(t);
        OmegaRecord o;
        o.i = t.i;
        o.j = t.j;
        o.delta = d;
        o.curvature = t.curvature;
        r.omega.push_back(o);
        continue;
      }
      r.theorem3.push_back(theorem3_check(g, i, j, d));
      r.omega.push_back(omega_betweenness_check(g, i, j, d, r.betweenness));
    }
  }
  return r;
}

}  // namespace graphcurv

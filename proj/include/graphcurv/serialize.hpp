#pragma once

#include <json.hpp>

#include <ostream>
#include <sstream>
#include <string>

#include "graphcurv/graph.hpp"
#include "graphcurv/metrics.hpp"
#include "graphcurv/report.hpp"
#include "graphcurv/rewiring.hpp"
#include "graphcurv/sensitivity.hpp"
#include "graphcurv/spectral.hpp"

namespace graphcurv {

using Json = nlohmann::ordered_json;

namespace detail {
inline Json json_number(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

template <class G>
Json node_list(const G& g, const std::vector<Node>& nodes) {
  Json out = Json::array();
  for (Node i : nodes) out.push_back(g.name(i));
  return out;
}
}  // namespace detail

// ---- curvature ----

inline void write_csv(std::ostream& os, const CurvatureReport& r, const Graph& g) {
  os << "i,j";
  for (auto k : r.kinds) os << ',' << to_string(k);
  os << '\n';
  for (const auto& rec : r.records) {
    os << g.name(rec.edge.u) << ',' << g.name(rec.edge.v);
    for (double v : rec.values) os << ',' << format_number(v);
    os << '\n';
  }
}

inline Json to_json(const CurvatureReport& r, const Graph& g) {
  Json out;
  out["kinds"] = Json::array();
  for (auto k : r.kinds) out["kinds"].push_back(std::string(to_string(k)));
  out["records"] = Json::array();
  for (const auto& rec : r.records) {
    Json row;
    row["i"] = g.name(rec.edge.u);
    row["j"] = g.name(rec.edge.v);
    for (std::size_t c = 0; c < r.kinds.size(); ++c) {
      row[std::string(to_string(r.kinds[c]))] = rec.values[c];
    }
    out["records"].push_back(row);
  }
  Json summary = Json::object();
  for (const auto& s : r.summary) {
    summary[std::string(to_string(s.kind))] = {
        {"min", s.min}, {"max", s.max}, {"mean", s.mean}, {"histogram", s.histogram}};
  }
  out["summary"] = summary;
  return out;
}

// ---- spectral ----

inline Json to_json(const BoundCheck& c) {
  return {{"name", c.name}, {"lhs", detail::json_number(c.lhs)}, {"rhs", detail::json_number(c.rhs)},
          {"holds", c.holds}};
}

inline Json to_json(const SpectralReport& r, const Graph& g) {
  Json out;
  out["lambda1"] = r.lambda1;
  out["cheeger"] = r.cheeger;
  out["cheeger_method"] = r.method == CheegerMethod::exact ? "exact" : "sweep";
  out["cheeger_witness"] = detail::node_list(g, r.cheeger_witness);
  out["bound_checks"] = Json::array();
  for (const auto& c : r.bound_checks) out["bound_checks"].push_back(to_json(c));
  return out;
}

// ---- sensitivity ----

inline Json to_json(const Theorem3Record& t, const Graph& g) {
  Json out = {{"i", g.name(t.i)},
              {"j", g.name(t.j)},
              {"delta", t.delta},
              {"curvature", t.curvature},
              {"gamma_max", t.gamma_max ? Json(*t.gamma_max) : Json(nullptr)},
              {"delta_below_degree_bound", t.delta_below_degree_bound},
              {"delta_below_gamma_bound", t.delta_below_gamma_bound},
              {"curvature_condition", t.curvature_condition},
              {"q_size", t.q_size},
              {"triangles", t.triangle_count},
              {"mean_two_hop", t.mean_two_hop},
              {"mean_bound", t.mean_bound},
              {"verdict", to_string(t.verdict)}};
  return out;
}

inline Json to_json(const OmegaRecord& o, const Graph& g) {
  return {{"i", g.name(o.i)},
          {"j", g.name(o.j)},
          {"delta", o.delta},
          {"curvature", o.curvature},
          {"delta_below_gamma_bound", o.delta_below_gamma_bound},
          {"curvature_condition", o.curvature_condition},
          {"omega", detail::node_list(g, o.omega)},
          {"mean_betweenness", o.mean_betweenness},
          {"verdict", to_string(o.verdict)}};
}

inline Json to_json(const BottleneckReport& r, const Graph& g) {
  Json out;
  out["bottleneck_value"] = r.bottleneck_value;
  Json b = Json::object();
  for (Node i = 0; i < r.betweenness.size(); ++i) b[g.name(i)] = r.betweenness[i];
  out["betweenness"] = b;
  out["theorem3"] = Json::array();
  for (const auto& t : r.theorem3) out["theorem3"].push_back(to_json(t, g));
  out["omega"] = Json::array();
  for (const auto& o : r.omega) out["omega"].push_back(to_json(o, g));
  return out;
}

/// One row per edge: the over-squashing and Ω_j verdicts side by side.
inline void write_checks_csv(std::ostream& os, const BottleneckReport& r, const Graph& g) {
  os << "i,j,delta,curvature,q_size,mean_two_hop,mean_bound,theorem3,omega_mean_betweenness,omega\n";
  for (std::size_t t = 0; t < r.theorem3.size(); ++t) {
    const auto& a = r.theorem3[t];
    const auto& b = r.omega[t];
    os << g.name(a.i) << ',' << g.name(a.j) << ',' << format_number(a.delta) << ','
       << format_number(a.curvature) << ',' << a.q_size << ',' << format_number(a.mean_two_hop) << ','
       << format_number(a.mean_bound) << ',' << to_string(a.verdict) << ','
       << format_number(b.mean_betweenness) << ',' << to_string(b.verdict) << '\n';
  }
}

// ---- metrics ----

inline Json to_json(const ComparisonReport& r) {
  Json out = {{"w1_degree", r.w1_degree}, {"pct_added", r.pct_added}, {"pct_removed", r.pct_removed}};
  out["homophily_before"] = r.homophily_before ? Json(*r.homophily_before) : Json(nullptr);
  out["homophily_after"] = r.homophily_after ? Json(*r.homophily_after) : Json(nullptr);
  return out;
}

inline std::string summary_text(const ComparisonReport& r) {
  std::ostringstream os;
  os << "degree W1 " << format_number(r.w1_degree) << ", edges added " << format_number(r.pct_added)
     << "%, removed " << format_number(r.pct_removed) << "%\n";
  if (r.homophily_before && r.homophily_after) {
    os << "homophily " << format_number(*r.homophily_before) << " -> "
       << format_number(*r.homophily_after) << '\n';
  } else {
    os << "homophily not computed (no labels)\n";
  }
  return os.str();
}

// ---- rewiring ----

inline Json to_json(const RewireEvent& e, const Graph& names) {
  Json out = {{"iteration", e.iteration},
              {"target", {names.name(e.target.u), names.name(e.target.v)}},
              {"min_curvature_before", e.min_curvature_before},
              {"added", {names.name(e.added.u), names.name(e.added.v)}},
              {"sampled_probability", e.sampled_probability}};
  out["removed"] = e.removed ? Json{names.name(e.removed->u), names.name(e.removed->v)} : Json(nullptr);
  out["removed_curvature"] = e.removed_curvature ? Json(*e.removed_curvature) : Json(nullptr);
  return out;
}

/// JSON Lines: one event per line, then a final {"termination": ...} line.
inline void write_trace(std::ostream& os, const RewireTrace& trace, const Graph& names) {
  for (const auto& e : trace.events) os << to_json(e, names).dump() << '\n';
  os << Json{{"termination", trace.termination == Termination::converged ? "converged" : "max_iterations"},
             {"events", trace.events.size()}}
            .dump()
     << '\n';
}

/// "u v w" per stored arc.
inline void write_weighted_edges(std::ostream& os, const WeightedGraph& w) {
  auto name = [&](Node i) { return w.names.empty() ? std::to_string(i) : w.names[i]; };
  for (const auto& e : w.entries) os << name(e.u) << ' ' << name(e.v) << ' ' << format_number(e.weight) << '\n';
}

}  // namespace graphcurv

#pragma once

// Edge-list text format:
//   one "u v" pair per line, whitespace separated, '#' starts a comment,
//   LF or CRLF line endings. Identifiers are arbitrary tokens, mapped to dense indices
//   in order of first appearance. An optional third weight column is accepted only when
//   the caller asks for it (it is then ignored: the graph is binarized).

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "graphcurv/errors.hpp"
#include "graphcurv/graph.hpp"

namespace graphcurv {

struct ParseOptions {
  bool directed = false;              // keep arcs as given; make_undirected closes them
  bool allow_weight_column = false;   // accept "u v w" and drop w
};

/// Counts of input lines that did not become edges.
struct LoadStats {
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
};

/// Directed arc set over named nodes; the intermediate form for directed input.
struct ArcList {
  std::vector<std::string> names;
  std::vector<std::pair<Node, Node>> arcs;
  LoadStats stats;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    tokens.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return tokens;
}

}  // namespace detail

/// Parses edge-list text into arcs. In undirected mode "a b" and "b a" count as duplicates.
inline ArcList parse_arcs(std::istream& in, const ParseOptions& options = {}) {
  ArcList out;
  std::unordered_map<std::string, Node> index;
  std::set<std::pair<Node, Node>> seen;
  auto intern = [&](std::string_view token) {
    auto [it, inserted] = index.try_emplace(std::string(token), out.names.size());
    if (inserted) out.names.emplace_back(token);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view(line);
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    const auto tokens = detail::split_ws(view);
    if (tokens.empty()) continue;
    const bool ok = tokens.size() == 2 || (options.allow_weight_column && tokens.size() == 3);
    if (!ok) {
      throw ParseError("expected 2 whitespace-separated node identifiers, found " +
                           std::to_string(tokens.size()) + " tokens",
                       line_no);
    }
    const Node u = intern(tokens[0]);
    const Node v = intern(tokens[1]);
    if (u == v) {
      ++out.stats.self_loops_dropped;
      continue;
    }
    const auto key = options.directed ? std::pair{u, v} : std::pair{std::min(u, v), std::max(u, v)};
    if (!seen.insert(key).second) {
      ++out.stats.duplicates_dropped;
      continue;
    }
    out.arcs.emplace_back(u, v);
  }
  if (out.names.empty()) throw ParseError("edge list is empty", 0);
  return out;
}

/// Symmetric closure of an arc set.
inline Graph make_undirected(const ArcList& arcs, LoadStats* stats = nullptr) {
  std::set<Edge> edges;
  std::size_t merged = 0;
  for (auto [u, v] : arcs.arcs) {
    if (u == v) continue;
    if (!edges.emplace(u, v).second) ++merged;
  }
  if (stats) {
    *stats = arcs.stats;
    stats->duplicates_dropped += merged;
  }
  std::vector<Edge> list(edges.begin(), edges.end());
  return Graph::from_edges(arcs.names.size(), list, arcs.names);
}

inline Graph load_edge_list(std::istream& in, const ParseOptions& options = {},
                            LoadStats* stats = nullptr) {
  return make_undirected(parse_arcs(in, options), stats);
}

inline Graph load_edge_list(std::string_view text, const ParseOptions& options = {},
                            LoadStats* stats = nullptr) {
  std::istringstream in{std::string(text)};
  return load_edge_list(in, options, stats);
}

/// Writes one "u v" line per edge, sorted by (min index, max index), using original names.
inline void save_edge_list(std::ostream& out, const Graph& g) {
  for (const Edge& e : g.edges()) out << g.name(e.u) << ' ' << g.name(e.v) << '\n';
}

inline std::string to_edge_list_text(const Graph& g) {
  std::ostringstream out;
  save_edge_list(out, g);
  return out.str();
}

/// Reads "node label" lines. Every node of `g` must receive exactly one integer label.
inline NodeLabeling load_labels(std::istream& in, const Graph& g) {
  std::unordered_map<std::string, Node> index;
  for (Node i = 0; i < g.node_count(); ++i) index.emplace(g.name(i), i);
  NodeLabeling out;
  out.labels.assign(g.node_count(), 0);
  std::vector<bool> assigned(g.node_count(), false);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view(line);
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    const auto tokens = detail::split_ws(view);
    if (tokens.empty()) continue;
    if (tokens.size() != 2) throw ParseError("expected \"node label\"", line_no);
    auto it = index.find(std::string(tokens[0]));
    if (it == index.end()) continue;  // labels for nodes filtered out of the graph
    int label = 0;
    try {
      std::size_t used = 0;
      label = std::stoi(std::string(tokens[1]), &used);
      if (used != tokens[1].size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ParseError("label is not an integer: " + std::string(tokens[1]), line_no);
    }
    out.labels[it->second] = label;
    assigned[it->second] = true;
  }
  for (Node i = 0; i < g.node_count(); ++i) {
    if (!assigned[i]) throw ParseError("no label for node " + g.name(i), 0);
  }
  return out;
}

}  // namespace graphcurv

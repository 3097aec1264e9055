#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "graphcurv/graphcurv.hpp"

namespace graphcurv::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kConsistency = 3 };

struct InputOptions {
  std::string path;
  bool directed = false;
  bool largest_component = false;
};

// Dropped self-loops and duplicates are reported on `err`.
inline Graph read_graph(const InputOptions& in, std::ostream& err) {
  std::ifstream file(in.path);
  if (!file) throw PreconditionError("cannot open graph file '" + in.path + "'");
  ParseOptions opts;
  opts.directed = in.directed;
  opts.allow_weight_column = true;
  Graph g;
  LoadStats stats;
  try {
    g = load_edge_list(file, opts, &stats);
  } catch (const ParseError& e) {
    throw ParseError(in.path + ": " + e.what(), 0);
  }
  if (stats.self_loops_dropped + stats.duplicates_dropped > 0) {
    err << in.path << ": dropped " << stats.self_loops_dropped << " self-loop(s) and "
        << stats.duplicates_dropped << " duplicate edge(s)\n";
  }
  return in.largest_component ? largest_component(g) : g;
}

// Writes through `write` to `path`, or to `fallback` when path is empty or "-".
template <class Write>
void emit(const std::string& path, std::ostream& fallback, Write&& write) {
  if (path.empty() || path == "-") {
    write(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw PreconditionError("cannot write '" + path + "'");
  write(file);
}

inline bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

inline std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

inline Node node_by_name(const Graph& g, const std::string& name) {
  for (Node i = 0; i < g.node_count(); ++i) {
    if (g.name(i) == name) return i;
  }
  throw PreconditionError("node '" + name + "' not in graph");
}

// Re-indexes `other` to follow `base`'s node names.
inline Graph align_to(const Graph& base, const Graph& other) {
  if (base.node_count() != other.node_count()) {
    throw PreconditionError("--against graph has " + std::to_string(other.node_count()) +
                            " nodes, expected " + std::to_string(base.node_count()));
  }
  std::map<std::string, Node> index;
  for (Node i = 0; i < base.node_count(); ++i) index.emplace(base.name(i), i);
  std::vector<Edge> edges;
  for (const Edge& e : other.edges()) {
    auto u = index.find(other.name(e.u));
    auto v = index.find(other.name(e.v));
    if (u == index.end() || v == index.end()) {
      throw PreconditionError("--against graph has node names absent from the input graph");
    }
    edges.emplace_back(u->second, v->second);
  }
  return Graph::from_edges(base.node_count(), edges, base.names());
}

inline Graph generate_family(const std::string& family, const std::vector<double>& p, std::uint64_t seed) {
  auto need = [&](std::size_t count) {
    if (p.size() != count) {
      throw ParameterError("family '" + family + "' takes " + std::to_string(count) + " parameter(s)");
    }
  };
  auto count = [&](std::size_t t) {
    if (p[t] < 0 || p[t] != static_cast<double>(static_cast<std::size_t>(p[t]))) {
      throw ParameterError("parameter " + std::to_string(t + 1) + " of '" + family +
                           "' must be a nonnegative integer");
    }
    return static_cast<std::size_t>(p[t]);
  };
  if (family == "path") return need(1), generate::path(count(0));
  if (family == "cycle") return need(1), generate::cycle(count(0));
  if (family == "complete") return need(1), generate::complete(count(0));
  if (family == "star") return need(1), generate::star(count(0));
  if (family == "grid") return need(2), generate::grid2d(count(0), count(1));
  if (family == "tree") return need(2), generate::tree(count(0), count(1));
  if (family == "regular-tree") return need(2), generate::regular_tree(count(0), count(1));
  if (family == "barbell") return need(1), generate::barbell(count(0));
  if (family == "er") return need(2), generate::erdos_renyi(count(0), p[1], seed);
  throw ParameterError("unknown family '" + family + "'");
}

inline double parse_real(const std::string& text, const char* flag) {
  if (text == "inf" || text == "infinity") return kInfinity;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParameterError(std::string(flag) + ": not a number: '" + text + "'");
}

/// Entry point shared by the executable and the end-to-end tests.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Curvature, over-squashing and rewiring analysis for undirected graphs"};
  app.require_subcommand(1);
  std::size_t jobs = 0;
  bool no_header = false;
  app.add_option("--jobs", jobs, "worker threads (0 = all cores); never changes output")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--no-header", no_header, "accepted for compatibility; outputs carry no header");

  InputOptions input;
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("graph", input.path, "edge list file")->required();
    sub->add_flag("--directed", input.directed, "input lines are arcs; take their symmetric closure");
    sub->add_flag("--largest-component", input.largest_component, "keep only the largest component");
  };
  std::string out_path;

  // generate
  auto* gen = app.add_subcommand("generate", "write a generated graph as an edge list");
  std::string family;
  std::vector<double> params;
  std::uint64_t seed = 0;
  gen->add_option("family", family,
                  "path N | cycle N | complete N | star LEAVES | grid R C | tree R H | "
                  "regular-tree D H | barbell N | er N P")
      ->required();
  gen->add_option("params", params, "family parameters");
  gen->add_option("--seed", seed, "seed for random families");
  gen->add_option("--out", out_path, "output path (default stdout)");

  // curvature
  auto* curv = app.add_subcommand("curvature", "per-edge curvature report");
  add_input(curv);
  std::string kinds_text = "bf";
  std::string format;
  curv->add_option("--kinds", kinds_text, "comma list of bf, forman, ollivier, phi");
  curv->add_option("--out", out_path, "output path; .json selects JSON, otherwise CSV");
  curv->add_option("--format", format, "csv or json (overrides the extension)")
      ->check(CLI::IsMember({"csv", "json"}));

  // rewire
  auto* rewire = app.add_subcommand("rewire", "rewire a graph");
  rewire->require_subcommand(1);
  auto* sdrf_cmd = rewire->add_subcommand("sdrf", "stochastic discrete Ricci flow");
  add_input(sdrf_cmd);
  std::string tau_text = "inf";
  std::string c_plus_text = "inf";
  std::string curvature_name = "bf";
  std::string trace_path;
  SdrfConfig sdrf_cfg;
  sdrf_cmd->add_option("--tau", tau_text, "softmax temperature, or inf for greedy");
  sdrf_cmd->add_option("--max-iter", sdrf_cfg.max_iterations, "iteration budget");
  sdrf_cmd->add_option("--c-plus", c_plus_text, "removal threshold C+, or inf to never remove");
  std::string floor_text = "0";
  sdrf_cmd->add_option("--floor", floor_text, "stop once min curvature exceeds this (inf: never)");
  sdrf_cmd->add_option("--seed", sdrf_cfg.seed, "sampling seed");
  sdrf_cmd->add_option("--curvature", curvature_name, "bf or forman")
      ->check(CLI::IsMember({"bf", "forman"}));
  sdrf_cmd->add_option("--out", out_path, "rewired edge list (default stdout)");
  sdrf_cmd->add_option("--trace", trace_path, "JSON Lines event trace");

  auto* digl_cmd = rewire->add_subcommand("digl", "personalized PageRank rewiring");
  add_input(digl_cmd);
  double alpha = 0.15;
  std::size_t top_k = 0;
  double eps = 0.0;
  bool symmetrize = false;
  bool binarize = false;
  digl_cmd->add_option("--alpha", alpha, "teleport probability in (0, 1]");
  auto* k_opt = digl_cmd->add_option("--top-k", top_k, "keep the k largest entries per row");
  auto* eps_opt = digl_cmd->add_option("--eps", eps, "keep entries >= eps");
  k_opt->excludes(eps_opt);
  digl_cmd->add_flag("--symmetrize", symmetrize, "average with the transpose");
  digl_cmd->add_flag("--binarize", binarize, "write the unweighted support as \"u v\" lines");
  digl_cmd->add_option("--out", out_path, "weighted edge list \"u v w\" (default stdout)");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "spectral, Cheeger and bottleneck analysis");
  add_input(analyze);
  std::string against_path;
  std::string labels_path;
  SpectralOptions spectral_opts;
  std::string alphas_text = "0.05,0.15,0.5";
  analyze->add_option("--against", against_path, "rewired graph to compare with");
  analyze->add_option("--labels", labels_path, "\"node label\" file for homophily");
  analyze->add_option("--exhaustive-limit", spectral_opts.exhaustive_limit,
                      "largest n for exact Cheeger");
  analyze->add_option("--alphas", alphas_text, "comma list of PPR teleport values to check");
  analyze->add_option("--out", out_path, "JSON report (default stdout)");

  // sensitivity
  auto* sens = app.add_subcommand("sensitivity", "Jacobian bounds, influence and bottleneck checks");
  add_input(sens);
  std::size_t depth = 2;
  std::string pairs_text = "all";
  double c_phi = 1.0;
  double c_psi = 1.0;
  std::optional<double> delta;
  std::string checks_path;
  sens->add_option("--depth", depth, "number of layers L >= 1")->check(CLI::PositiveNumber);
  sens->add_option("--pairs", pairs_text, "all, or i,s[;i,s...] by node name");
  sens->add_option("--c-phi", c_phi, "Lipschitz constant of the update");
  sens->add_option("--c-psi", c_psi, "Lipschitz constant of the message");
  sens->add_option("--delta", delta, "fixed delta for the edge checks (default Ric + 2 per edge)");
  sens->add_option("--out", out_path, "per-pair CSV (default stdout)");
  sens->add_option("--checks", checks_path, "per-edge over-squashing and Omega checks CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*gen) {
      const Graph g = generate_family(family, params, seed);
      emit(out_path, out, [&](std::ostream& os) { save_edge_list(os, g); });
    } else if (*curv) {
      std::vector<CurvatureKind> kinds;
      for (const auto& k : split_commas(kinds_text)) kinds.push_back(parse_curvature_kind(k));
      if (kinds.empty()) throw ParameterError("--kinds: no curvature kind given");
      const Graph g = read_graph(input, err);
      const auto report = curvature_report(g, kinds, jobs);
      const bool json = format == "json" || (format.empty() && ends_with(out_path, ".json"));
      emit(out_path, out, [&](std::ostream& os) {
        if (json) {
          os << to_json(report, g).dump(2) << '\n';
        } else {
          write_csv(os, report, g);
        }
      });
    } else if (*sdrf_cmd) {
      sdrf_cfg.tau = parse_real(tau_text, "--tau");
      sdrf_cfg.c_plus = parse_real(c_plus_text, "--c-plus");
      sdrf_cfg.convergence_floor = parse_real(floor_text, "--floor");
      sdrf_cfg.curvature_kind =
          curvature_name == "forman" ? RewireCurvature::forman : RewireCurvature::balanced_forman;
      const Graph g = read_graph(input, err);
      const auto [rewired, trace] = sdrf(g, sdrf_cfg);
      emit(out_path, out, [&](std::ostream& os) { save_edge_list(os, rewired); });
      if (!trace_path.empty()) {
        emit(trace_path, out, [&](std::ostream& os) { write_trace(os, trace, rewired); });
      }
    } else if (*digl_cmd) {
      if (k_opt->count() == 0 && eps_opt->count() == 0) {
        throw ParameterError("rewire digl: one of --top-k or --eps is required");
      }
      const Graph g = read_graph(input, err);
      std::variant<TopK, Epsilon> rule = k_opt->count() ? std::variant<TopK, Epsilon>(TopK{top_k})
                                                        : std::variant<TopK, Epsilon>(Epsilon{eps});
      const auto w = digl_rewire(g, alpha, rule, symmetrize);
      emit(out_path, out, [&](std::ostream& os) {
        if (binarize) {
          save_edge_list(os, w.binarize());
        } else {
          write_weighted_edges(os, w);
        }
      });
    } else if (*analyze) {
      spectral_opts.ppr_alphas.clear();
      for (const auto& a : split_commas(alphas_text)) {
        spectral_opts.ppr_alphas.push_back(parse_real(a, "--alphas"));
      }
      const Graph g = read_graph(input, err);
      Json report;
      report["nodes"] = g.node_count();
      report["edges"] = g.edge_count();
      report["spectral"] = to_json(spectral_report(g, spectral_opts), g);
      report["bottleneck_value"] = bottleneck_value(g);
      std::optional<NodeLabeling> labels;
      if (!labels_path.empty()) {
        std::ifstream lf(labels_path);
        if (!lf) throw PreconditionError("cannot open labels file '" + labels_path + "'");
        labels = load_labels(lf, g);
        report["homophily"] = homophily(g, *labels).value;
      }
      if (!against_path.empty()) {
        InputOptions other = input;
        other.path = against_path;
        other.largest_component = false;
        const Graph h = align_to(g, read_graph(other, err));
        const auto cmp = compare_graphs(g, h, labels ? &*labels : nullptr);
        report["comparison"] = to_json(cmp);
        err << summary_text(cmp);
      }
      emit(out_path, out, [&](std::ostream& os) { os << report.dump(2) << '\n'; });
    } else if (*sens) {
      const Graph g = read_graph(input, err);
      std::vector<std::pair<Node, Node>> pairs;
      if (pairs_text == "all") {
        for (Node i = 0; i < g.node_count(); ++i) {
          for (Node s = 0; s < g.node_count(); ++s) pairs.emplace_back(i, s);
        }
      } else {
        std::stringstream list(pairs_text);
        std::string item;
        while (std::getline(list, item, ';')) {
          const auto ends = split_commas(item);
          if (ends.size() != 2) throw ParameterError("--pairs: expected i,s but got '" + item + "'");
          pairs.emplace_back(node_by_name(g, ends[0]), node_by_name(g, ends[1]));
        }
      }
      struct Row {
        std::size_t distance;
        double power;
        double influence;
      };
      std::vector<Row> rows(pairs.size());
      parallel_for(pairs.size(), jobs, [&](std::size_t t) {
        const auto [i, s] = pairs[t];
        rows[t] = {bfs_distances(g, i)[s], power_entry(g, depth, i, s),
                   influence_score(g, depth - 1, i, s)};
      });
      const double scale = std::pow(c_phi * c_psi, static_cast<double>(depth));
      emit(out_path, out, [&](std::ostream& os) {
        os << "i,s,distance,power_entry,jacobian_bound,influence\n";
        for (std::size_t t = 0; t < pairs.size(); ++t) {
          const auto& r = rows[t];
          os << g.name(pairs[t].first) << ',' << g.name(pairs[t].second) << ','
             << (r.distance == kUnreachable ? std::string("inf") : std::to_string(r.distance)) << ','
             << format_number(r.power) << ',' << format_number(scale * r.power) << ','
             << format_number(r.influence) << '\n';
        }
      });
      if (!checks_path.empty()) {
        const auto report = bottleneck_report(g, delta);
        emit(checks_path, out, [&](std::ostream& os) { write_checks_csv(os, report, g); });
      }
    }
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "data error: " << e.what() << '\n';
    return kData;
  } catch (const PreconditionError& e) {
    err << "data error: " << e.what() << '\n';
    return kData;
  } catch (const ConsistencyError& e) {
    err << "consistency failure: " << e.what() << '\n';
    return kConsistency;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kConsistency;
  }
  return kOk;
}

}  // namespace graphcurv::cli

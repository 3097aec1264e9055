#include <gtest/gtest.h>

#include "corpus.hpp"
#include "graphcurv/graphcurv.hpp"
#include "oracles.hpp"

using namespace graphcurv;

namespace {
constexpr double kTol = 1e-9;

std::set<Edge> edge_set(const Graph& g) {
  const auto e = g.edges();
  return {e.begin(), e.end()};
}

std::size_t symmetric_difference(const Graph& a, const Graph& b) {
  const auto x = edge_set(a);
  const auto y = edge_set(b);
  std::vector<Edge> out;
  std::set_symmetric_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out.size();
}

bool connected(const Graph& g) { return is_connected(g); }

void expect_same_trace(const RewireTrace& a, const RewireTrace& b) {
  EXPECT_EQ(a.termination, b.termination);
  ASSERT_EQ(a.events.size(), b.events.size());
  for (std::size_t t = 0; t < a.events.size(); ++t) {
    const auto& x = a.events[t];
    const auto& y = b.events[t];
    EXPECT_EQ(x.iteration, y.iteration);
    EXPECT_EQ(x.target, y.target);
    EXPECT_EQ(x.added, y.added);
    EXPECT_EQ(x.removed, y.removed);
    EXPECT_NEAR(x.min_curvature_before, y.min_curvature_before, 1e-12);
    EXPECT_NEAR(x.sampled_probability, y.sampled_probability, 1e-12);
  }
}
}  // namespace

TEST(Candidates, PathOfFour) {
  const auto c = candidate_improvements(generate::path(4), 0, 1);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].edge, Edge(0, 2));
  EXPECT_NEAR(c[0].improvement, 1.5, kTol);
}

TEST(Candidates, CompleteGraphHasNone) {
  EXPECT_TRUE(candidate_improvements(generate::complete(4), 0, 1).empty());
}

TEST(Candidates, FourCycle) {
  const Graph c4 = generate::cycle(4);
  const auto c = candidate_improvements(c4, 0, 1);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].edge, Edge(0, 2));
  EXPECT_EQ(c[1].edge, Edge(1, 3));
  for (const auto& cand : c) {
    const Graph with = oracle::with_edge(c4, cand.edge);
    EXPECT_NEAR(cand.improvement, balanced_forman(with, 0, 1) - balanced_forman(c4, 0, 1), kTol);
  }
}

TEST(Candidates, NonEdge) {
  EXPECT_THROW(candidate_improvements(generate::path(4), 0, 2), PreconditionError);
}

TEST(Candidates, MatchBruteForceOnCorpus) {
  for (const auto& [name, g] : corpus::connected(40, 16, 12)) {
    for (const Edge& e : g.edges()) {
      for (auto kind : {RewireCurvature::balanced_forman, RewireCurvature::forman}) {
        const auto got = candidate_improvements(g, e.u, e.v, kind);
        std::set<Edge> want;
        for (Node k : ball(g, e.u, 1)) {
          for (Node l : ball(g, e.v, 1)) {
            if (k != l && !g.has_edge(k, l)) want.emplace(k, l);
          }
        }
        ASSERT_EQ(got.size(), want.size()) << name;
        auto it = want.begin();
        for (const auto& cand : got) {
          EXPECT_EQ(cand.edge, *it++) << name;
          const double before = edge_curvature(g, e.u, e.v, kind);
          const double after = edge_curvature(oracle::with_edge(g, cand.edge), e.u, e.v, kind);
          EXPECT_NEAR(cand.improvement, after - before, kTol) << name;
        }
      }
    }
  }
}

TEST(Softmax, Examples) {
  SplitMix64 rng(1);
  EXPECT_EQ(softmax_sample(std::vector<double>{0.0}, 3.0, rng), 0u);
  EXPECT_EQ(softmax_sample(std::vector<double>{1.0, 1.0}, kInfinity, rng), 0u);
  const double tau = 2.5;
  const auto p = softmax_probabilities(std::vector<double>{0.0, std::log(2.0) / tau}, tau);
  EXPECT_NEAR(p[0], 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(p[1], 2.0 / 3.0, 1e-12);
}

TEST(Softmax, Errors) {
  SplitMix64 rng(1);
  EXPECT_THROW(softmax_sample(std::vector<double>{}, 1.0, rng), PreconditionError);
  EXPECT_THROW(softmax_sample(std::vector<double>{1.0}, 0.0, rng), ParameterError);
}

TEST(Softmax, LargeInputsStayFinite) {
  const auto p = softmax_probabilities(std::vector<double>{1000.0, 999.0, -1000.0}, 10.0);
  EXPECT_NEAR(p[0] + p[1] + p[2], 1.0, 1e-12);
  EXPECT_GT(p[0], p[1]);
  EXPECT_EQ(p[2], 0.0);
}

TEST(Softmax, EmpiricalFrequencies) {
  SplitMix64 rng(2024);
  const double tau = 1.0;
  const std::vector<double> x{0.0, std::log(2.0)};
  int second = 0;
  const int draws = 30000;
  for (int t = 0; t < draws; ++t) second += softmax_sample(x, tau, rng) == 1 ? 1 : 0;
  EXPECT_NEAR(static_cast<double>(second) / draws, 2.0 / 3.0, 0.015);
}

TEST(Sdrf, PathOfFourAddsOneEdge) {
  SdrfConfig cfg;
  cfg.max_iterations = 1;
  const auto [out, trace] = sdrf(generate::path(4), cfg);
  EXPECT_EQ(edge_set(out), (std::set<Edge>{{0, 1}, {0, 2}, {1, 2}, {2, 3}}));
  ASSERT_EQ(trace.events.size(), 1u);
  EXPECT_EQ(trace.events[0].target, Edge(0, 1));
  EXPECT_EQ(trace.events[0].added, Edge(0, 2));
  EXPECT_FALSE(trace.events[0].removed.has_value());
  EXPECT_EQ(trace.events[0].sampled_probability, 1.0);
  EXPECT_EQ(trace.termination, Termination::max_iterations);
}

TEST(Sdrf, TriangleConverges) {
  const auto [out, trace] = sdrf(generate::complete(3), SdrfConfig{});
  EXPECT_TRUE(trace.events.empty());
  EXPECT_EQ(trace.termination, Termination::converged);
  EXPECT_EQ(edge_set(out), edge_set(generate::complete(3)));
}

TEST(Sdrf, ZeroIterations) {
  SdrfConfig cfg;
  cfg.max_iterations = 0;
  const auto [out, trace] = sdrf(generate::path(5), cfg);
  EXPECT_TRUE(trace.events.empty());
  EXPECT_EQ(trace.termination, Termination::max_iterations);
}

TEST(Sdrf, Errors) {
  EXPECT_THROW(sdrf(Graph::from_edges(3, std::vector<Edge>{}), SdrfConfig{}), PreconditionError);
  SdrfConfig cfg;
  cfg.tau = 0.0;
  EXPECT_THROW(sdrf(generate::path(3), cfg), ParameterError);
}

TEST(Sdrf, RemovalAboveUpperBound) {
  SdrfConfig cfg;
  cfg.max_iterations = 3;
  cfg.c_plus = 0.5;
  const auto [out, trace] = sdrf(generate::barbell(4), cfg);
  bool removed_any = false;
  for (const auto& ev : trace.events) {
    if (ev.removed) {
      removed_any = true;
      EXPECT_GT(*ev.removed_curvature, cfg.c_plus);
    }
  }
  EXPECT_TRUE(removed_any);
  EXPECT_TRUE(connected(out));
}

TEST(Sdrf, TraceInvariantsAndEditBound) {
  std::size_t runs = 0;
  for (const auto& [name, g] : corpus::connected(40, 30, 17, 6)) {
    if (g.edge_count() == 0) continue;
    for (double tau : {kInfinity, 2.0}) {
      SdrfConfig cfg;
      cfg.tau = tau;
      cfg.max_iterations = 8;
      cfg.c_plus = 1.0;
      cfg.seed = 99;
      const auto [out, trace] = sdrf(g, cfg);
      EXPECT_LE(trace.events.size(), cfg.max_iterations);
      EXPECT_LE(symmetric_difference(g, out), 2 * cfg.max_iterations) << name;
      // Replay the trace to check every edit against the graph state it was applied to.
      EditableGraph replay(g);
      for (const auto& ev : trace.events) {
        EXPECT_FALSE(replay.has_edge(ev.added.u, ev.added.v)) << name;
        replay.add_edge(ev.added.u, ev.added.v);
        if (ev.removed) {
          EXPECT_TRUE(replay.has_edge(ev.removed->u, ev.removed->v)) << name;
          replay.remove_edge(ev.removed->u, ev.removed->v);
          EXPECT_TRUE(connected(replay.freeze())) << name;
        }
      }
      EXPECT_EQ(edge_set(replay.freeze()), edge_set(out)) << name;
      ++runs;
    }
  }
  EXPECT_GE(runs, 60u);
}

TEST(Sdrf, DeterministicAndGreedySeedFree) {
  const Graph g = generate::erdos_renyi(30, 0.12, 5);
  SdrfConfig cfg;
  cfg.tau = 3.0;
  cfg.max_iterations = 15;
  cfg.seed = 7;
  const auto a = sdrf(g, cfg);
  const auto b = sdrf(g, cfg);
  EXPECT_EQ(edge_set(a.first), edge_set(b.first));
  expect_same_trace(a.second, b.second);

  cfg.tau = kInfinity;
  const auto c = sdrf(g, cfg);
  cfg.seed = 12345;
  const auto d = sdrf(g, cfg);
  EXPECT_EQ(edge_set(c.first), edge_set(d.first));
  expect_same_trace(c.second, d.second);
}

TEST(Sdrf, IncrementalMatchesFullRecompute) {
  std::size_t runs = 0;
  for (const auto& [name, g] : corpus::connected(30, 40, 23, 8)) {
    for (auto kind : {RewireCurvature::balanced_forman, RewireCurvature::forman}) {
      SdrfConfig cfg;
      cfg.tau = 1.5;
      cfg.max_iterations = 12;
      cfg.c_plus = 0.8;
      cfg.seed = 41 + runs;
      cfg.curvature_kind = kind;
      const auto fast = sdrf(g, cfg);
      const auto slow = oracle::naive_sdrf(g, cfg);
      EXPECT_EQ(edge_set(fast.first), edge_set(slow.first)) << name;
      expect_same_trace(fast.second, slow.second);
      ++runs;
    }
  }
  EXPECT_GE(runs, 60u);
}

TEST(CurvatureTableTest, RefreshEqualsRebuild) {
  SplitMix64 rng(3);
  for (const auto& [name, g] : corpus::connected(20, 30, 77, 8)) {
    EditableGraph work(g);
    CurvatureTable table(work, RewireCurvature::balanced_forman);
    const std::size_t n = g.node_count();
    for (int step = 0; step < 10; ++step) {
      const Node k = static_cast<Node>(rng.below(n));
      const Node l = static_cast<Node>(rng.below(n));
      if (k == l) continue;
      if (work.has_edge(k, l)) {
        const auto region = CurvatureTable::affected_region(work, k, l);
        work.remove_edge(k, l);
        table.erase(Edge(k, l));
        table.refresh(work, region);
      } else {
        work.add_edge(k, l);
        table.refresh(work, CurvatureTable::affected_region(work, k, l));
      }
      const CurvatureTable fresh(work, RewireCurvature::balanced_forman);
      ASSERT_EQ(table.size(), fresh.size()) << name;
      for (const auto& [e, v] : fresh.values()) EXPECT_EQ(table.at(e), v) << name;
    }
  }
}

TEST(Ppr, TwoNodes) {
  const auto r = ppr_matrix(generate::path(2), 0.5);
  EXPECT_NEAR(r(0, 0), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(r(0, 1), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(r(1, 0), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(r(1, 1), 2.0 / 3.0, 1e-12);
}

TEST(Ppr, AlphaOneIsIdentity) {
  const auto r = ppr_matrix(generate::cycle(5), 1.0);
  EXPECT_TRUE(r.isApprox(DenseMatrix::Identity(5, 5), 1e-14));
}

TEST(Ppr, Errors) {
  EXPECT_THROW(ppr_matrix(generate::path(3), 0.0), ParameterError);
  EXPECT_THROW(ppr_matrix(generate::path(3), 1.5), ParameterError);
  EXPECT_THROW(ppr_matrix(Graph::from_edges(3, std::vector<Edge>{{0, 1}}), 0.5), PreconditionError);
}

TEST(Ppr, StochasticAndMatchesSeries) {
  for (const auto& [name, g] : corpus::connected(30, 20, 4)) {
    for (double alpha : {0.05, 0.15, 0.5}) {
      const auto r = ppr_matrix(g, alpha);
      for (Eigen::Index i = 0; i < r.rows(); ++i) EXPECT_NEAR(r.row(i).sum(), 1.0, 1e-9) << name;
      // truncated series α Σ ((1-α) D⁻¹A)^k
      const auto n = static_cast<Eigen::Index>(g.node_count());
      DenseMatrix walk = DenseMatrix::Zero(n, n);
      for (Node i = 0; i < g.node_count(); ++i) {
        for (Node j : g.neighbors(i)) walk(i, j) = (1.0 - alpha) / static_cast<double>(g.degree(i));
      }
      DenseMatrix term = DenseMatrix::Identity(n, n) * alpha;
      DenseMatrix sum = term;
      for (int k = 0; k < 2000; ++k) {
        term = term * walk;
        sum += term;
      }
      EXPECT_LT((sum - r).cwiseAbs().maxCoeff(), 1e-9) << name << " " << alpha;
    }
  }
}

TEST(Digl, TwoNodeExamples) {
  const Graph k2 = generate::path(2);
  EXPECT_TRUE(digl_rewire(k2, 0.5, Epsilon{0.4}, false).entries.empty());
  const auto top = digl_rewire(k2, 0.5, TopK{1}, true);
  EXPECT_EQ(top.binarize().edge_count(), 1u);
  for (const auto& e : top.entries) EXPECT_NEAR(e.weight, 1.0 / 3.0, 1e-12);
  EXPECT_TRUE(digl_rewire(generate::cycle(6), 1.0, TopK{2}, false).entries.empty());
  EXPECT_TRUE(digl_rewire(generate::cycle(6), 1.0, Epsilon{1e-3}, true).entries.empty());
}

TEST(Digl, Errors) {
  EXPECT_THROW(digl_rewire(generate::cycle(4), 0.5, TopK{4}, false), ParameterError);
  EXPECT_THROW(digl_rewire(generate::cycle(4), 0.5, TopK{0}, false), ParameterError);
  EXPECT_THROW(digl_rewire(generate::cycle(4), 0.5, Epsilon{0.0}, false), ParameterError);
}

TEST(Digl, TopKTieBreakAndSymmetry) {
  // On C6 with α small, a node's two neighbours tie; top-1 keeps the smaller column.
  const auto w = digl_rewire(generate::cycle(6), 0.15, TopK{1}, false);
  ASSERT_EQ(w.entries.size(), 6u);
  EXPECT_EQ(w.entries[0].u, 0u);
  EXPECT_EQ(w.entries[0].v, 1u);
  for (const auto& [name, g] : corpus::connected(20, 20, 6)) {
    const auto s = digl_rewire(g, 0.15, TopK{2}, true);
    EXPECT_TRUE(s.symmetric) << name;
    std::map<std::pair<Node, Node>, double> m;
    for (const auto& e : s.entries) {
      EXPECT_GT(e.weight, 0.0);
      EXPECT_TRUE(std::isfinite(e.weight));
      m[{e.u, e.v}] = e.weight;
    }
    for (const auto& [key, v] : m) EXPECT_EQ(m.at({key.second, key.first}), v) << name;
  }
}

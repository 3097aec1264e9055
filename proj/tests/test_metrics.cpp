#include <gtest/gtest.h>

#include "corpus.hpp"
#include "graphcurv/graphcurv.hpp"
#include "oracles.hpp"

using namespace graphcurv;

namespace {
// W1 between degree samples: replicate both to a common size, then mean |sorted difference|.
double quantile_degree_w1(const Graph& a, const Graph& b) {
  const std::size_t na = a.node_count();
  const std::size_t nb = b.node_count();
  std::vector<double> xs;
  std::vector<double> ys;
  for (Node i = 0; i < na; ++i) xs.insert(xs.end(), nb, static_cast<double>(a.degree(i)));
  for (Node i = 0; i < nb; ++i) ys.insert(ys.end(), na, static_cast<double>(b.degree(i)));
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  double total = 0.0;
  for (std::size_t t = 0; t < xs.size(); ++t) total += std::abs(xs[t] - ys[t]);
  return total / static_cast<double>(xs.size());
}

// Triangle with one pendant per corner: degrees {3,3,3,1,1,1}.
Graph net() {
  return Graph::from_edges(6, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}, {0, 3}, {1, 4}, {2, 5}});
}
}  // namespace

TEST(DegreeW1, Examples) {
  const Graph c5 = generate::cycle(5);
  EXPECT_EQ(degree_w1(c5, c5), 0.0);
  // all-degree-2 vs all-degree-3 on eight nodes: C8 vs the cube graph
  std::vector<Edge> cube;
  for (Node v = 0; v < 8; ++v) {
    for (Node bit : {1u, 2u, 4u}) {
      if (v < (v ^ bit)) cube.emplace_back(v, v ^ bit);
    }
  }
  EXPECT_NEAR(degree_w1(generate::cycle(8), Graph::from_edges(8, cube)), 1.0, 1e-15);
  // degrees {1,3} vs {2,2} in equal proportion
  EXPECT_NEAR(degree_w1(net(), generate::cycle(6)), 1.0, 1e-15);
  EXPECT_NEAR(quantile_degree_w1(net(), generate::cycle(6)), 1.0, 1e-12);
  // star S3 {3,1,1,1} vs P4 {2,2,1,1}
  EXPECT_NEAR(degree_w1(generate::star(3), generate::path(4)), 0.5, 1e-15);
}

TEST(DegreeW1, DifferentNodeCounts) {
  EXPECT_NEAR(degree_w1(generate::path(3), generate::cycle(7)), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(quantile_degree_w1(generate::path(3), generate::cycle(7)), 2.0 / 3.0, 1e-12);
}

TEST(DegreeW1, Errors) {
  EXPECT_THROW(degree_w1(Graph::from_edges(0, std::vector<Edge>{}), generate::path(2)), PreconditionError);
}

TEST(DegreeW1, MetricAndMatchesQuantileCoupling) {
  const auto graphs = corpus::connected(45, 20, 131, 2);
  for (std::size_t t = 0; t + 2 < graphs.size(); t += 3) {
    const Graph& a = graphs[t].graph;
    const Graph& b = graphs[t + 1].graph;
    const Graph& c = graphs[t + 2].graph;
    const double ab = degree_w1(a, b);
    EXPECT_NEAR(ab, quantile_degree_w1(a, b), 1e-9);
    EXPECT_NEAR(ab, degree_w1(b, a), 1e-12);
    EXPECT_EQ(degree_w1(a, a), 0.0);
    EXPECT_LE(ab, degree_w1(a, c) + degree_w1(c, b) + 1e-12);
  }
}

TEST(EditStats, Examples) {
  const Graph c10 = generate::cycle(10);
  const auto same = edit_stats(c10, c10);
  EXPECT_EQ(same.pct_added, 0.0);
  EXPECT_EQ(same.pct_removed, 0.0);
  const auto added = edit_stats(c10, oracle::with_edge(c10, Edge(0, 5)));
  EXPECT_NEAR(added.pct_added, 10.0, 1e-12);
  EXPECT_EQ(added.pct_removed, 0.0);
  const auto removed = edit_stats(c10, generate::path(10));
  EXPECT_NEAR(removed.pct_removed, 10.0, 1e-12);
}

TEST(EditStats, Errors) {
  EXPECT_THROW(edit_stats(Graph::from_edges(3, std::vector<Edge>{}), generate::path(3)), PreconditionError);
  EXPECT_THROW(edit_stats(generate::path(3), generate::path(4)), PreconditionError);
}

TEST(EditStats, SdrfEditsBounded) {
  for (const auto& [name, g] : corpus::connected(30, 30, 141, 6)) {
    SdrfConfig cfg;
    cfg.max_iterations = 6;
    cfg.c_plus = 1.0;
    cfg.tau = 5.0;
    cfg.seed = 3;
    const auto [out, trace] = sdrf(g, cfg);
    const auto s = edit_stats(g, out);
    const double m = static_cast<double>(g.edge_count());
    EXPECT_LE(s.pct_added + s.pct_removed, 100.0 * 2.0 * cfg.max_iterations / m + 1e-9) << name;
    EXPECT_LE(degree_w1(g, out), 4.0 * cfg.max_iterations / static_cast<double>(g.node_count()) + 1e-12)
        << name;
  }
}

TEST(Homophily, Examples) {
  const Graph c4 = generate::cycle(4);
  EXPECT_EQ(homophily(c4, NodeLabeling{{7, 7, 7, 7}}).value, 1.0);
  EXPECT_EQ(homophily(c4, NodeLabeling{{0, 1, 0, 1}}).value, 0.0);
  EXPECT_NEAR(homophily(generate::path(3), NodeLabeling{{0, 0, 1}}).value, 0.5, 1e-15);
}

TEST(Homophily, IsolatedNodesAndErrors) {
  const Graph g = Graph::from_edges(4, std::vector<Edge>{{0, 1}, {1, 2}});
  const auto h = homophily(g, NodeLabeling{{0, 0, 1, 5}});
  EXPECT_EQ(h.isolated_skipped, 1u);
  EXPECT_NEAR(h.value, 0.5, 1e-15);
  EXPECT_THROW(homophily(g, NodeLabeling{{0, 0}}), PreconditionError);
  EXPECT_THROW(homophily(Graph::from_edges(2, std::vector<Edge>{}), NodeLabeling{{0, 1}}), PreconditionError);
}

TEST(Homophily, InUnitInterval) {
  SplitMix64 rng(15);
  for (const auto& [name, g] : corpus::connected(40, 25, 151, 2)) {
    NodeLabeling labels;
    for (Node i = 0; i < g.node_count(); ++i) labels.labels.push_back(static_cast<int>(rng.below(3)));
    const double h = homophily(g, labels).value;
    EXPECT_GE(h, 0.0) << name;
    EXPECT_LE(h, 1.0) << name;
  }
}

TEST(Comparison, ReportAndSummary) {
  const Graph c10 = generate::cycle(10);
  NodeLabeling labels;
  for (int i = 0; i < 10; ++i) labels.labels.push_back(i < 5 ? 0 : 1);
  const auto r = compare_graphs(c10, oracle::with_edge(c10, Edge(0, 5)), &labels);
  EXPECT_NEAR(r.pct_added, 10.0, 1e-12);
  EXPECT_NEAR(r.w1_degree, 0.2, 1e-15);
  ASSERT_TRUE(r.homophily_before.has_value());
  EXPECT_NEAR(*r.homophily_before, 0.8, 1e-15);
  const std::string text = summary_text(r);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
  const auto unlabeled = compare_graphs(c10, c10);
  EXPECT_FALSE(unlabeled.homophily_before.has_value());
  EXPECT_TRUE(to_json(unlabeled)["homophily_after"].is_null());
}

#include <gtest/gtest.h>

#include "corpus.hpp"
#include "graphcurv/graphcurv.hpp"
#include "oracles.hpp"

using namespace graphcurv;

namespace {
constexpr double kTol = 1e-9;

LocalMeasure point(Node v) { return {{v}, {1.0}}; }

void expect_marginals(const TransportPlan& plan, const LocalMeasure& mu, const LocalMeasure& nu) {
  for (std::size_t x = 0; x < mu.support.size(); ++x) {
    EXPECT_NEAR(plan.coupling.row(static_cast<Eigen::Index>(x)).sum(), mu.mass[x], kTol);
  }
  for (std::size_t y = 0; y < nu.support.size(); ++y) {
    EXPECT_NEAR(plan.coupling.col(static_cast<Eigen::Index>(y)).sum(), nu.mass[y], kTol);
  }
  EXPECT_GE(plan.coupling.minCoeff(), -kTol);
}

// Random measure on a few nodes, masses that are multiples of 1/12.
LocalMeasure random_measure(SplitMix64& rng, std::size_t n, std::size_t size) {
  std::vector<Node> nodes(n);
  std::iota(nodes.begin(), nodes.end(), Node{0});
  for (std::size_t k = 0; k + 1 < n; ++k) std::swap(nodes[k], nodes[k + rng.below(n - k)]);
  LocalMeasure m;
  m.support.assign(nodes.begin(), nodes.begin() + static_cast<std::ptrdiff_t>(size));
  std::vector<int> units(size, 1);
  for (int left = 12 - static_cast<int>(size); left > 0; --left) ++units[rng.below(size)];
  for (int u : units) m.mass.push_back(u / 12.0);
  return m;
}
}  // namespace

TEST(AlphaMeasure, Examples) {
  const auto k3 = alpha_measure(generate::complete(3), 0, 0.0);
  EXPECT_EQ(k3.support, (std::vector<Node>{0, 1, 2}));
  EXPECT_EQ(k3.mass, (std::vector<double>{0.0, 0.5, 0.5}));
  const auto p3 = alpha_measure(generate::path(3), 1, 0.5);
  EXPECT_EQ(p3.mass, (std::vector<double>{0.5, 0.25, 0.25}));
  const auto s5 = alpha_measure(generate::star(5), 0, 0.0);
  for (std::size_t k = 1; k <= 5; ++k) EXPECT_NEAR(s5.mass[k], 0.2, 1e-15);
}

TEST(AlphaMeasure, Errors) {
  const Graph g = Graph::from_edges(3, std::vector<Edge>{{0, 1}});
  EXPECT_THROW(alpha_measure(g, 2, 0.0), PreconditionError);
  EXPECT_THROW(alpha_measure(g, 0, 1.0), ParameterError);
  EXPECT_THROW(alpha_measure(g, 0, -0.1), ParameterError);
}

TEST(Wasserstein, Examples) {
  const Graph p3 = generate::path(3);
  const auto mu = alpha_measure(p3, 1, 0.5);
  EXPECT_NEAR(wasserstein1(p3, mu, mu).cost, 0.0, kTol);
  EXPECT_NEAR(wasserstein1(p3, point(0), point(2)).cost, 2.0, kTol);
  const LocalMeasure pair{{0, 1}, {0.5, 0.5}};
  const auto plan = wasserstein1(p3, pair, point(0));
  EXPECT_NEAR(plan.cost, 0.5, kTol);
  expect_marginals(plan, pair, point(0));
}

TEST(Wasserstein, UnreachableSupport) {
  const Graph g = Graph::from_edges(4, std::vector<Edge>{{0, 1}, {2, 3}});
  EXPECT_THROW(wasserstein1(g, point(0), point(3)), PreconditionError);
}

TEST(Wasserstein, InvalidMeasure) {
  const Graph g = generate::path(3);
  EXPECT_THROW(wasserstein1(g, LocalMeasure{{0, 1}, {0.5, 0.4}}, point(0)), PreconditionError);
  EXPECT_THROW(wasserstein1(g, LocalMeasure{{0, 0}, {0.5, 0.5}}, point(0)), PreconditionError);
}

TEST(Wasserstein, MatchesBruteForceLp) {
  SplitMix64 rng(77);
  std::size_t instances = 0;
  for (const auto& [name, g] : corpus::connected(60, 14, 31)) {
    const std::size_t n = g.node_count();
    for (int rep = 0; rep < 5; ++rep) {
      const std::size_t a = 1 + rng.below(std::min<std::size_t>(4, n));
      const std::size_t b = 1 + rng.below(std::min<std::size_t>(8 - a, n));
      const auto mu = random_measure(rng, n, a);
      const auto nu = random_measure(rng, n, b);
      const auto plan = wasserstein1(g, mu, nu);
      const auto cost = oracle::hop_costs(g, mu.support, nu.support);
      EXPECT_NEAR(plan.cost, oracle::brute_transport(mu.mass, nu.mass, cost), kTol) << name;
      EXPECT_NEAR(plan.cost, (plan.coupling.array() * cost.array()).sum(), kTol) << name;
      expect_marginals(plan, mu, nu);
      ++instances;
    }
  }
  EXPECT_GE(instances, 300u);
}

TEST(Wasserstein, MetricProperties) {
  SplitMix64 rng(5);
  for (const auto& [name, g] : corpus::connected(60, 20, 8)) {
    const std::size_t n = g.node_count();
    const auto a = random_measure(rng, n, std::min<std::size_t>(3, n));
    const auto b = random_measure(rng, n, std::min<std::size_t>(4, n));
    const auto c = random_measure(rng, n, std::min<std::size_t>(2, n));
    const double ab = wasserstein1(g, a, b).cost;
    EXPECT_NEAR(ab, wasserstein1(g, b, a).cost, kTol) << name;
    EXPECT_NEAR(wasserstein1(g, a, a).cost, 0.0, kTol) << name;
    EXPECT_LE(ab, wasserstein1(g, a, c).cost + wasserstein1(g, c, b).cost + kTol) << name;
  }
}

TEST(OllivierAlpha, Examples) {
  EXPECT_NEAR(ollivier_alpha(generate::complete(3), 0, 1, 0.0), 0.5, kTol);
  EXPECT_NEAR(ollivier_alpha(generate::path(2), 0, 1, 0.0), 0.0, kTol);
  EXPECT_THROW(ollivier_alpha(generate::path(3), 0, 2, 0.0), PreconditionError);
}

TEST(OllivierAlpha, ScaledValueNondecreasing) {
  for (const auto& [name, g] : corpus::connected(30, 16, 3)) {
    for (const Edge& e : g.edges()) {
      double prev = -std::numeric_limits<double>::infinity();
      for (double alpha : {0.0, 0.2, 0.4, 0.5, 0.6, 0.8, 0.9, 0.99}) {
        const double v = ollivier_alpha(g, e.u, e.v, alpha) / (1.0 - alpha);
        EXPECT_GE(v, prev - kTol) << name << " alpha " << alpha;
        prev = v;
      }
    }
  }
}

TEST(OllivierLimit, Examples) {
  EXPECT_NEAR(ollivier_limit(generate::complete(3), 0, 1), 1.5, 1e-6);
  EXPECT_GE(ollivier_limit(generate::cycle(6), 0, 1), -kTol);
  const Graph t = generate::regular_tree(3, 3);
  const Node child = t.neighbors(1).back();
  EXPECT_GE(ollivier_limit(t, 1, child), -2.0 / 3.0 - kTol);
}

TEST(OllivierLimit, BoundsFormanFamiliesOnCorpus) {
  auto graphs = corpus::erdos_renyi(200);
  for (auto& g : corpus::families()) graphs.push_back(g);
  std::size_t edges = 0;
  for (const auto& [name, g] : graphs) {
    for (const Edge& e : g.edges()) {
      const double kappa = ollivier_limit(g, e.u, e.v);
      EXPECT_GE(kappa, balanced_forman(g, e.u, e.v) - kTol) << name << " " << e.u << "-" << e.v;
      EXPECT_GE(ollivier_alpha(g, e.u, e.v, 0.0), jost_liu_lower_bound(g, e.u, e.v) - kTol) << name;
      ++edges;
    }
  }
  EXPECT_GT(edges, 5000u);
}

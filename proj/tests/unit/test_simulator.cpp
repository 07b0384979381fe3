#include <gtest/gtest.h>

#include <numbers>
#include <queue>

#include "prismconn/simulator.hpp"

using namespace prismconn;

namespace {

SimConfig house_config(double rho, std::uint64_t trials, unsigned threads = 1) {
  return {build_house(5.0), ConnectivityModel::mimo_mrc_2x2(1.0), rho, std::nullopt, trials,
          kDefaultSeed, threads};
}

}  // namespace

TEST(Config, NodeCountRoundsDensityTimesVolume) {
  EXPECT_EQ(house_config(1.0, 1).node_count(), 156u);
  EXPECT_EQ(house_config(0.8, 1).node_count(), 125u);
  SimConfig c = house_config(1.0, 1);
  c.density.reset();
  c.nodes = 7;
  EXPECT_EQ(c.node_count(), 7u);
}

TEST(Config, Validation) {
  SimConfig both = house_config(1.0, 10);
  both.nodes = 5;
  EXPECT_THROW(estimate(both), std::invalid_argument);
  EXPECT_THROW(estimate(house_config(1e-5, 10)), std::invalid_argument);  // N rounds to 0
  EXPECT_THROW(estimate(house_config(-1.0, 10)), std::invalid_argument);
  EXPECT_THROW(estimate(house_config(1.0, 0)), std::invalid_argument);
}

TEST(Trial, SingleNodeIsConnected) {
  SimConfig c = house_config(1.0, 5);
  c.density.reset();
  c.nodes = 1;
  EXPECT_TRUE(run_trial(c, 0).connected);
  EXPECT_EQ(estimate(c).fc_count, 5u);
}

TEST(Trial, ZeroRangeDiskNeverConnects) {
  SimConfig c = house_config(0.1, 20);
  c.model = ConnectivityModel::hard_disk(0.0);
  const SimResult r = estimate(c);
  EXPECT_EQ(r.fc_count, 0u);
  EXPECT_EQ(r.min_deg_ge1_count, 0u);
}

TEST(Trial, HugeDiskAlwaysConnects) {
  SimConfig c = house_config(0.1, 20);
  c.model = ConnectivityModel::hard_disk(100.0);
  EXPECT_EQ(estimate(c).fc_count, 20u);
}

// N = 5 with a fixed sub-seed: union-find against plain BFS on the same
// sampled adjacency.
TEST(Trial, SmallGraphMatchesBfs) {
  SimConfig c = house_config(1.0, 1);
  c.density.reset();
  c.nodes = 5;
  c.model = ConnectivityModel::mimo_mrc_2x2(0.05);
  for (std::uint64_t t = 0; t < 200; ++t) {
    const Graph g = sample_graph(c, t);
    std::vector<std::vector<int>> adj(5);
    for (const auto& e : g.edges) {
      adj[e.a].push_back(static_cast<int>(e.b));
      adj[e.b].push_back(static_cast<int>(e.a));
    }
    std::vector<bool> seen(5, false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    int reached = 1;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = true;
          ++reached;
          q.push(w);
        }
    }
    ASSERT_EQ(run_trial(c, t).connected, reached == 5) << "trial " << t;
  }
}

TEST(Trial, PositionsAreInsideDomain) {
  const SimConfig c = house_config(1.0, 1);
  std::vector<Point3> pts;
  sample_graph(c, 3, &pts);
  ASSERT_EQ(pts.size(), 156u);
  for (const auto& p : pts) EXPECT_TRUE(c.domain.contains(p));
}

TEST(Estimate, DeterministicAndThreadIndependent) {
  const SimResult a = estimate(house_config(0.6, 300, 1));
  const SimResult b = estimate(house_config(0.6, 300, 1));
  const SimResult c = estimate(house_config(0.6, 300, 4));
  EXPECT_TRUE(a.same_outcome(b));
  EXPECT_TRUE(a.same_outcome(c));
  EXPECT_EQ(a.implication_violations, 0u);
}

TEST(Estimate, ConnectedImpliesMinDegree) {
  const SimResult r = estimate(house_config(0.5, 2000));
  EXPECT_LE(r.p_fc_hat, r.p_min_deg_hat);
  EXPECT_EQ(r.implication_violations, 0u);
  EXPECT_GT(r.fc_count, 0u);
  EXPECT_LT(r.fc_count, r.n_trials);
}

TEST(Estimate, StdErrIsBinomial) {
  const SimResult r = estimate(house_config(0.5, 500));
  EXPECT_NEAR(r.std_err, std::sqrt(r.p_fc_hat * (1 - r.p_fc_hat) / 500), 1e-15);
}

// Shared seeds couple hard-disk runs: every link present at r0 is present
// at any larger r0, so p_fc_hat cannot decrease.
TEST(Sweep, HardDiskCouplingIsMonotone) {
  SimConfig c = house_config(0.5, 400);
  std::uint64_t prev = 0;
  for (double r0 = 0.8; r0 <= 2.4; r0 += 0.2) {
    c.model = ConnectivityModel::hard_disk(r0);
    const SimResult r = estimate(c);
    EXPECT_GE(r.fc_count, prev) << "r0 " << r0;
    prev = r.fc_count;
  }
}

TEST(Sweep, OutageDecreasesWithDensity) {
  const auto rs = sweep(house_config(0.4, 1500), {0.4, 0.6, 0.8, 1.0, 1.2, 1.4});
  ASSERT_EQ(rs.size(), 6u);
  for (std::size_t i = 1; i < rs.size(); ++i) {
    const double allowance = 3 * std::hypot(rs[i].std_err, rs[i - 1].std_err);
    EXPECT_LE(rs[i].p_out_hat(), rs[i - 1].p_out_hat() + allowance) << rs[i].rho;
  }
  EXPECT_THROW(sweep(house_config(0.4, 10), {1.0, 0.5}), std::invalid_argument);
  EXPECT_THROW(sweep(house_config(0.4, 10), {}), std::invalid_argument);
}

TEST(Sweep, NodeCounts) {
  const auto rs = sweep(house_config(0.4, 50), {10, 20}, true);
  EXPECT_EQ(rs[0].nodes, 10u);
  EXPECT_EQ(rs[1].nodes, 20u);
  EXPECT_THROW(sweep(house_config(0.4, 10), {1.5}, true), std::invalid_argument);
}

TEST(Link, RateAtFixedDistance) {
  const auto m = ConnectivityModel::mimo_mrc_2x2(1.0);
  RandomStream rng = trial_stream(5, 5);
  const int n = 100000;
  for (double r : {0.5, 1.0, 1.5}) {
    int hits = 0;
    for (int i = 0; i < n; ++i) hits += sample_link(m, r, rng);
    const double p = m.h(r);
    EXPECT_NEAR(static_cast<double>(hits) / n, p, 4 * std::sqrt(p * (1 - p) / n)) << r;
  }
}

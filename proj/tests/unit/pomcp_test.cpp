#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "ecplan/domains/rocksample.hpp"
#include "ecplan/solvers/pomcp.hpp"

using namespace ecplan;

namespace {

/// Two-armed bandit: action 1 pays 1, action 0 pays 0, then terminal.
struct Bandit {
  using State = int;
  int arms = 2;
  [[nodiscard]] int action_count() const { return arms; }
  [[nodiscard]] double discount() const { return 0.95; }
  [[nodiscard]] StepOutcome<int> step(int s, int a, Rng&) const { return {s, 0, a == arms - 1 ? 1.0 : 0.0, true}; }
  [[nodiscard]] int sample_initial_state(Rng&) const { return 0; }
};

/// Chain of length 3 with noisy rewards, used to check running means.
struct Chain {
  using State = int;
  [[nodiscard]] int action_count() const { return 2; }
  [[nodiscard]] double discount() const { return 0.9; }
  [[nodiscard]] StepOutcome<int> step(int s, int a, Rng& rng) const {
    const double r = a == 1 ? rng.uniform() : 0.5 * rng.uniform();
    return {s + 1, s % 2, r, s + 1 >= 3};
  }
  [[nodiscard]] int sample_initial_state(Rng&) const { return 0; }
};

CoverageTable shipped_coverage() {
  CoverageTable cov(4);
  cov.set(kNorth, 0.96);
  cov.set(kEast, 0.89);
  cov.set(kSouth, 0.83);
  cov.set(kWest, 0.99);
  return cov;
}

}  // namespace

TEST(Uct, Values) {
  EXPECT_DOUBLE_EQ(uct_value(7.3, 50, 3, 0.0), 7.3);
  EXPECT_DOUBLE_EQ(uct_value(0.0, 1, 1, 1.0), 0.0);
  EXPECT_NEAR(uct_value(5.0, 10, 2, 1.0), 6.0730, 1e-3);
  EXPECT_TRUE(std::isinf(uct_value(-1e300, 10, 0, 1.0)));
  EXPECT_GT(uct_value(0, 10, 0, 0), uct_value(1e300, 10, 1, 1e10));
}

TEST(RolloutWeights, ShippedCoverageEast) {
  const auto w = rollout_weights(4, {kEast}, shipped_coverage());
  EXPECT_NEAR(w[kEast], 0.89 / 3.38, 1e-12);
  EXPECT_NEAR(w[kEast], 0.2633, 1e-4);
  EXPECT_NEAR(w[kNorth], 0.83 / 3.38, 1e-12);
  EXPECT_NEAR(w[kWest], 0.83 / 3.38, 1e-12);
}

TEST(RolloutWeights, UniformCases) {
  for (double x : rollout_weights(4, {}, shipped_coverage())) EXPECT_DOUBLE_EQ(x, 0.25);
  CoverageTable flat(5);
  for (int a = 0; a < 5; ++a) flat.set(a, 0.75);
  for (double x : rollout_weights(5, {1, 3}, flat)) EXPECT_NEAR(x, 0.2, 1e-15);
}

TEST(RolloutWeights, PositiveAndNormalized) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + rng.below(12);
    CoverageTable cov(n);
    for (int a = 0; a < n; ++a) cov.set(a, 0.01 + 0.99 * rng.uniform());
    std::vector<int> suggested;
    for (int a = 0; a < n; ++a)
      if (rng.bernoulli(0.4)) suggested.push_back(a);
    const auto w = rollout_weights(n, suggested, cov);
    EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-12);
    for (double x : w) EXPECT_GT(x, 0.0);
  }
}

TEST(Pomcp, SingleAction) {
  const Bandit one{1};
  Rng rng(1);
  const auto belief = sample_initial_belief(one, 4, rng);
  Pomcp<Bandit> pomcp(one, {.simulations = 3});
  EXPECT_EQ(pomcp.search(belief, rng), 0);
}

TEST(Pomcp, PicksBetterArm) {
  const Bandit bandit{3};
  Rng rng(1);
  const auto belief = sample_initial_belief(bandit, 4, rng);
  Pomcp<Bandit> pomcp(bandit, {.simulations = 50});
  EXPECT_EQ(pomcp.search(belief, rng), 2);
  EXPECT_EQ(pomcp.root().visits, 50);
}

TEST(Pomcp, RunningMeanWithoutSeeding) {
  const Chain chain;
  Rng rng(7);
  const auto belief = sample_initial_belief(chain, 4, rng);
  Pomcp<Chain> pomcp(chain, {.simulations = 300, .exploration = 0.5, .discount = 0.9, .max_depth = 10});
  pomcp.search(belief, rng);
  // Every backed-up visit of the root passes through exactly one action.
  int total = 0;
  for (const auto& st : pomcp.root().actions) total += st.visits;
  EXPECT_EQ(total, pomcp.root().visits);
  // Each interior node: visits equals the sum of its action visits plus the
  // expanding visit.
  for (std::size_t i = 1; i < pomcp.nodes().size(); ++i) {
    const auto& node = pomcp.nodes()[i];
    int sum = 0;
    for (const auto& st : node.actions) sum += st.visits;
    EXPECT_EQ(sum + 1, node.visits);
  }
}

TEST(Pomcp, RunningMeanMatchesReplay) {
  // With max_depth 1 every simulation backs up exactly one immediate reward,
  // so V(ha) is checkable against an external running mean.
  const Chain chain;
  Rng rng(11);
  const auto belief = sample_initial_belief(chain, 4, rng);
  Pomcp<Chain> pomcp(chain, {.simulations = 200, .exploration = 2.0, .discount = 0.9, .max_depth = 1});
  pomcp.reset(belief);
  std::vector<double> sums(2, 0.0);
  std::vector<int> counts(2, 0);
  for (int i = 0; i < 200; ++i) {
    Rng copy = rng;
    std::vector<int> before;
    for (const auto& st : pomcp.root().actions) before.push_back(st.visits);
    pomcp.simulate(rng);
    for (int a = 0; a < 2; ++a) {
      if (pomcp.root().actions[static_cast<std::size_t>(a)].visits != before[static_cast<std::size_t>(a)]) {
        (void)copy.below(1);  // particle draw
        const double r = chain.step(0, a, copy).reward;
        sums[static_cast<std::size_t>(a)] += r;
        ++counts[static_cast<std::size_t>(a)];
      }
    }
  }
  for (int a = 0; a < 2; ++a) {
    ASSERT_GT(counts[static_cast<std::size_t>(a)], 0);
    EXPECT_NEAR(pomcp.root().actions[static_cast<std::size_t>(a)].value,
                sums[static_cast<std::size_t>(a)] / counts[static_cast<std::size_t>(a)], 1e-12);
  }
}

TEST(Pomcp, SeedingAtRoot) {
  const Rocksample model(5, std::vector<Cell>{{3, 2}, {0, 0}}, 0.95);
  Rng rng(2);
  const auto belief = sample_initial_belief(model, 50, rng);
  const MacroSet macros{{kNorth, 0}, {kEast, 2}, {kSouth, 0}, {kWest, 0}};
  CoverageTable cov(model.action_count());
  const PomcpHeuristic heuristic{&macros, 0, &cov};
  Pomcp<Rocksample> pomcp(model, {.simulations = 64, .heuristic_enabled = true});
  pomcp.reset(belief, &heuristic);
  const auto& east = pomcp.root().actions[kEast];
  EXPECT_EQ(east.visits, 10);
  EXPECT_TRUE(east.seeded);
  EXPECT_EQ(pomcp.root().actions[kNorth].visits, 0);
  EXPECT_EQ(pomcp.root().visits, 0);
  pomcp.simulate(rng);
  EXPECT_EQ(pomcp.root().actions[kEast].visits, 11);
  EXPECT_FALSE(pomcp.root().actions[kEast].seeded);
}

TEST(Pomcp, SeedingFollowsWindowDepth) {
  const Rocksample model(5, std::vector<Cell>{{3, 2}, {0, 0}}, 0.95);
  Rng rng(2);
  const auto belief = sample_initial_belief(model, 50, rng);
  const MacroSet macros{{kNorth, 0}, {kEast, 2}, {kSouth, 0}, {kWest, 0}};
  // At t = 2 the east macro is spent: nothing is seeded.
  const PomcpHeuristic spent{&macros, 2, nullptr};
  Pomcp<Rocksample> pomcp(model, {.simulations = 64, .heuristic_enabled = true});
  pomcp.reset(belief, &spent);
  for (const auto& st : pomcp.root().actions) EXPECT_EQ(st.visits, 0);
  // Disabled heuristic ignores the window.
  const PomcpHeuristic fresh{&macros, 0, nullptr};
  Pomcp<Rocksample> off(model, {.simulations = 64});
  off.reset(belief, &fresh);
  EXPECT_EQ(off.root().actions[kEast].visits, 0);
}

TEST(Pomcp, Deterministic) {
  const Rocksample model(7, 4, 5);
  for (bool heuristic : {false, true}) {
    const MacroSet macros{{kNorth, 0}, {kEast, 3}, {kSouth, 1}, {kWest, 0}};
    CoverageTable cov(model.action_count());
    const PomcpHeuristic h{&macros, 0, &cov};
    std::vector<double> values[2];
    int actions[2];
    for (int run = 0; run < 2; ++run) {
      Rng rng(99);
      const auto belief = sample_initial_belief(model, 100, rng);
      Pomcp<Rocksample> pomcp(model, {.simulations = 256, .exploration = 20, .heuristic_enabled = heuristic});
      actions[run] = pomcp.search(belief, rng, &h);
      for (const auto& st : pomcp.root().actions) values[run].push_back(st.value);
    }
    EXPECT_EQ(actions[0], actions[1]);
    EXPECT_EQ(values[0], values[1]);
  }
}

TEST(Pomcp, LegalActionsOnly) {
  const Rocksample model(7, 4, 5);
  Rng rng(4);
  const auto belief = sample_initial_belief(model, 100, rng);
  const MacroSet macros{{kNorth, 5}, {kEast, 0}, {kSouth, 0}, {kWest, 5}};
  CoverageTable cov(model.action_count());
  const PomcpHeuristic h{&macros, 0, &cov};
  for (int i = 0; i < 10; ++i) {
    Pomcp<Rocksample> pomcp(model, {.simulations = 32, .exploration = 20, .heuristic_enabled = i % 2 == 0});
    const int a = pomcp.search(belief, rng, &h);
    EXPECT_GE(a, 0);
    EXPECT_LT(a, model.action_count());
  }
}

#include <doctest.h>

#include <cmath>

#include "pfab/aspiration.hpp"
#include "pfab/baselines.hpp"
#include "pfab/elimination.hpp"
#include "pfab/errors.hpp"
#include "support.hpp"

using namespace pfab;
using pfab::test::ScriptedStream;
using Turn = EliminationState::Turn;

TEST_CASE("elimination with M=1 settles on a certain arm after one play") {
  EliminationAgent agent({2, 1, 1000});
  const BernoulliBandit b({1.0, 0.0});
  SeededStream rng(1);
  const auto e = play(agent, b, 500, rng);
  CHECK(agent.state().winner == 1);
  CHECK(agent.comparisons() == 1);
  for (Arm a : e.actions) CHECK(a == 1);
}

TEST_CASE("elimination alternates champion and challenger") {
  EliminationAgent agent({3, 20, 1000});
  const BernoulliBandit b({0.5, 0.5, 0.5});
  SeededStream rng(2);
  const auto e = play(agent, b, 20, rng);
  for (std::size_t t = 0; t < e.actions.size(); ++t) CHECK(e.actions[t] == (t % 2 == 0 ? 1 : 2));
}

TEST_CASE("a stopped comparison tied at zero keeps the champion") {
  EliminationAgent agent({2, 20, 1});
  const BernoulliBandit b({0.0, 0.0});
  SeededStream rng(3);
  play(agent, b, 2, rng);
  CHECK(agent.state().winner == 1);
}

TEST_CASE("a stopped comparison goes to the leader") {
  EliminationAgent agent({3, 20, 1});
  const BernoulliBandit b({0.0, 1.0, 0.0});
  SeededStream rng(4);
  play(agent, b, 2, rng);
  CHECK(agent.state().champion == 2);
  CHECK(agent.state().challenger == 3);
  CHECK(agent.state().counter == 0);
  CHECK(agent.state().turn == Turn::Champion);
}

TEST_CASE("the stop coin has probability 1/N and follows the challenger's play") {
  EliminationAgent agent({2, 20, 1000});
  const BernoulliBandit b({0.5, 0.5});
  ScriptedStream rng;
  play(agent, b, 2, rng);
  REQUIRE(rng.coins().size() == 3);
  CHECK(rng.coins()[0] == 0.5);
  CHECK(rng.coins()[1] == 0.5);
  CHECK(std::abs(rng.coins()[2] - 0.001) < 1e-18);
}

TEST_CASE("reaching -M hands the comparison to the challenger") {
  EliminationAgent agent({3, 2, 1'000'000});
  const BernoulliBandit b({0.0, 1.0, 0.0});
  SeededStream rng(5);
  play(agent, b, 4, rng);
  CHECK(agent.state().champion == 2);
  CHECK(agent.state().challenger == 3);
}

TEST_CASE("elimination needs two arms and positive parameters") {
  CHECK_THROWS_AS(EliminationAgent({1, 20, 1000}), StructuralError);
  CHECK_THROWS_AS(EliminationAgent({3, 0, 1000}), StructuralError);
  CHECK_THROWS_AS(EliminationAgent({3, 20, 0}), StructuralError);
}

TEST_CASE("an elimination run makes at most K-1 comparisons with rising challengers") {
  SeededStream gen(77);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto bandit = sample_bandit(6, gen);
    EliminationAgent agent({6, 3, 10});
    SeededStream rng(seed);
    std::optional<Arm> settled;
    for (int t = 0; t < 3000; ++t) {
      const auto before = agent.state();
      const Arm a = agent.choose(rng);
      if (settled) CHECK(a == *settled);
      agent.observe(a, bandit.pull(a, rng), rng);
      const auto& after = agent.state();
      CHECK(after.challenger >= before.challenger);
      CHECK(after.champion < after.challenger);
      if (!after.winner) CHECK(std::abs(after.counter) < 3);
      if (after.winner) settled = after.winner;
    }
    CHECK(agent.comparisons() <= 5);
  }
}

TEST_CASE("explore-then-exploit commits to the better sample") {
  ExploreThenExploitAgent agent(2, 1);
  const BernoulliBandit b({1.0, 0.0});
  SeededStream rng(1);
  play(agent, b, 2, rng);
  CHECK(agent.committed() == 1);
}

TEST_CASE("explore-then-exploit breaks ties toward the lowest index") {
  ExploreThenExploitAgent agent(3, 2);
  SeededStream rng(1);
  play(agent, BernoulliBandit({0.0, 0.0, 0.0}), 6, rng);
  CHECK(agent.committed() == 1);
}

TEST_CASE("explore-then-exploit explores round-robin for exactly K*N steps") {
  ExploreThenExploitAgent agent(3, 4);
  const BernoulliBandit b({0.2, 0.9, 0.4});
  SeededStream rng(8);
  for (int t = 0; t < 12; ++t) {
    CHECK_FALSE(agent.committed());
    const Arm a = agent.choose(rng);
    CHECK(a == t % 3 + 1);
    agent.observe(a, b.pull(a, rng), rng);
  }
  REQUIRE(agent.committed());
  const Arm k = *agent.committed();
  const auto e = play(agent, b, 200, rng);
  for (Arm a : e.actions) CHECK(a == k);
}

TEST_CASE("epsilon-greedy with epsilon 0 is greedy after exploration") {
  EpsilonGreedyAgent agent(2, 1, 0.0);
  SeededStream rng(1);
  const auto e = play(agent, BernoulliBandit({0.0, 1.0}), 100, rng);
  for (std::size_t t = 2; t < e.actions.size(); ++t) CHECK(e.actions[t] == 2);
}

TEST_CASE("epsilon-greedy with epsilon 1 plays uniformly") {
  EpsilonGreedyAgent agent(4, 1, 1.0);
  SeededStream rng(2);
  const auto e = play(agent, BernoulliBandit({0.1, 0.2, 0.3, 0.4}), 40'004, rng);
  std::vector<int> counts(4, 0);
  for (std::size_t t = 4; t < e.actions.size(); ++t) ++counts[static_cast<std::size_t>(e.actions[t] - 1)];
  std::vector<double> probs(4, 0.25);
  std::vector<std::size_t> c(counts.begin(), counts.end());
  CHECK(test::chi_square_accepts(probs, c, 0.001));
}

TEST_CASE("epsilon-greedy plays a non-optimal arm at least (K-1)epsilon/K of the time") {
  const double eps = 0.2;
  EpsilonGreedyAgent agent(4, 50, eps);
  const BernoulliBandit b({0.9, 0.1, 0.1, 0.1});
  SeededStream rng(3);
  const std::size_t explore = 200, tail = 100'000;
  const auto e = play(agent, b, explore + tail, rng);
  REQUIRE(agent.exploit_choice() == 1);
  std::size_t off = 0;
  for (std::size_t t = explore; t < e.actions.size(); ++t) off += e.actions[t] != 1;
  const double bound = 3.0 * eps / 4.0;
  const double se = std::sqrt(bound * (1 - bound) / static_cast<double>(tail));
  CHECK(static_cast<double>(off) / static_cast<double>(tail) >= bound - 3 * se);
}

TEST_CASE("epsilon-greedy exploit distribution mixes the greedy arm with uniform play") {
  EpsilonGreedyAgent agent(4, 1, 0.2);
  SeededStream rng(4);
  play(agent, BernoulliBandit({0.0, 0.0, 1.0, 0.0}), 4, rng);
  const auto dist = agent.exploit_distribution();
  REQUIRE(dist.size() == 4);
  double total = 0.0;
  for (const auto& w : dist) {
    total += w.probability;
    CHECK(w.probability == doctest::Approx(w.value == 3 ? 0.85 : 0.05));
  }
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("committing agents report a point-mass exploit distribution") {
  ExploreThenExploitAgent agent(3, 1);
  const auto dist = agent.exploit_distribution();
  REQUIRE(dist.size() == 1);
  CHECK(dist[0].probability == 1.0);
}

TEST_CASE("posterior means use uniform priors") {
  CountEstimates c(2);
  CHECK(c.posterior_mean(1) == doctest::Approx(0.5));
  c.record(1, 1);
  CHECK(c.posterior_mean(1) == doctest::Approx(2.0 / 3.0));
  c.record(2, 0);
  CHECK(c.posterior_mean(2) == doctest::Approx(1.0 / 3.0));
  CHECK(c.empirical_mean(1) == 1.0);
  CHECK(c.posterior_argmax() == 1);
}

TEST_CASE("Thompson sampling plays the 0.9 arm almost always late in the run") {
  const BernoulliBandit b({0.9, 0.1});
  double fraction = 0.0;
  for (std::uint64_t rep = 0; rep < 100; ++rep) {
    ThompsonAgent agent(2);
    SeededStream rng(replication_seed(1, rep));
    const auto e = play(agent, b, 10'000, rng);
    int best = 0;
    for (std::size_t t = 9000; t < 10'000; ++t) best += e.actions[t] == 1;
    fraction += best / 1000.0;
  }
  CHECK(fraction / 100.0 >= 0.95);
}

TEST_CASE("the beta sampler matches Beta(2,1) moments") {
  SeededStream rng(6);
  std::vector<double> xs;
  for (int i = 0; i < 50'000; ++i) xs.push_back(rng.beta(2.0, 1.0));
  double m = 0.0;
  for (double x : xs) {
    CHECK(x >= 0.0);
    CHECK(x <= 1.0);
    m += x;
  }
  m /= static_cast<double>(xs.size());
  // sd of Beta(2,1) is sqrt(1/18)
  CHECK(std::abs(m - 2.0 / 3.0) <= 4 * std::sqrt(1.0 / 18.0 / 50'000.0));
}

TEST_CASE("agents enforce choose/observe alternation") {
  SeededStream rng(1);
  ThompsonAgent agent(3);
  CHECK_THROWS_AS(agent.observe(1, 1, rng), StructuralError);
  const Arm a = agent.choose(rng);
  CHECK_THROWS_AS(agent.choose(rng), StructuralError);
  CHECK_THROWS_AS(agent.observe(a % 3 + 1, 1, rng), StructuralError);
  CHECK_THROWS_AS(agent.observe(a, 2, rng), StructuralError);
  agent.observe(a, 1, rng);
  CHECK(agent.steps() == 1);
}

TEST_CASE("play rejects an arm-count mismatch") {
  SeededStream rng(1);
  AspirationAgent agent({3, 10, 5, 2});
  CHECK_THROWS_AS(play(agent, BernoulliBandit({0.5, 0.4}), 10, rng), StructuralError);
}

TEST_CASE("clones continue independently from the same state") {
  AspirationAgent agent({3, 10, 5, 2});
  const BernoulliBandit b({0.2, 0.5, 0.8});
  SeededStream warm(3);
  play(agent, b, 100, warm);
  auto copy = agent.clone();
  SeededStream r1(9), r2(9);
  const auto e1 = play(agent, b, 500, r1);
  const auto e2 = play(*copy, b, 500, r2);
  CHECK(e1.actions == e2.actions);
}

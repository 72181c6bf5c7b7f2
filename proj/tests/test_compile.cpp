#include <doctest.h>

#include "pfab/aspiration.hpp"
#include "pfab/baselines.hpp"
#include "pfab/compile.hpp"
#include "pfab/elimination.hpp"
#include "pfab/errors.hpp"
#include "support.hpp"

using namespace pfab;

namespace {

void check_aspiration_equivalence(const AspirationParams& p, const BernoulliBandit& b, std::size_t horizon) {
  const Pfa pfa = compile_aspiration(p);
  const auto direct = test::enumerate_agent([&] { return std::make_unique<AspirationAgent>(p); }, b, horizon);
  const auto compiled = test::enumerate_pfa(pfa, b, horizon);
  CHECK(test::total_mass(direct) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(test::law_distance(direct, compiled) <= 1e-12);
}

void check_elimination_equivalence(const EliminationParams& p, const BernoulliBandit& b, std::size_t horizon) {
  const Pfa pfa = compile_elimination(p);
  const auto direct = test::enumerate_agent([&] { return std::make_unique<EliminationAgent>(p); }, b, horizon);
  const auto compiled = test::enumerate_pfa(pfa, b, horizon);
  CHECK(test::total_mass(direct) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(test::law_distance(direct, compiled) <= 1e-12);
}

}  // namespace

TEST_CASE("compiled aspiration matches the agent exactly on the smallest instance") {
  check_aspiration_equivalence({2, 2, 1, 1}, BernoulliBandit({0.5, 0.5}), 3);
}

TEST_CASE("compiled aspiration matches the agent on skewed bandits and longer runs") {
  check_aspiration_equivalence({2, 2, 1, 1}, BernoulliBandit({0.3, 0.8}), 5);
  check_aspiration_equivalence({3, 3, 2, 1}, BernoulliBandit({0.1, 0.6, 0.35}), 5);
  check_aspiration_equivalence({2, 4, 2, 2}, BernoulliBandit({0.7, 0.2}), 6);
}

TEST_CASE("compiled elimination matches the agent exactly") {
  check_elimination_equivalence({2, 1, 2}, BernoulliBandit({0.5, 0.5}), 5);
  check_elimination_equivalence({3, 1, 2}, BernoulliBandit({0.3, 0.8, 0.5}), 6);
  check_elimination_equivalence({3, 2, 3}, BernoulliBandit({0.6, 0.2, 0.9}), 7);
  check_elimination_equivalence({4, 1, 1}, BernoulliBandit({0.4, 0.1, 0.7, 0.5}), 8);
}

TEST_CASE("compiled explore-then-exploit matches the agent exactly") {
  for (auto [k, n, h] : {std::tuple{2, 1, 4}, {2, 2, 6}, {3, 1, 5}, {3, 2, 8}}) {
    std::vector<double> means;
    for (int a = 0; a < k; ++a) means.push_back(0.2 + 0.25 * a);
    const BernoulliBandit b(means);
    const Pfa pfa = compile_explore_then_exploit(k, n);
    const auto direct = test::enumerate_agent(
        [k = k, n = n] { return std::make_unique<ExploreThenExploitAgent>(k, n); }, b, static_cast<std::size_t>(h));
    CHECK(test::law_distance(direct, test::enumerate_pfa(pfa, b, static_cast<std::size_t>(h))) <= 1e-12);
  }
}

TEST_CASE("compiled aspiration starts by playing arm 1") {
  const Pfa pfa = compile_aspiration({5, 100, 20, 3});
  CHECK(pfa.label(pfa.start()) == "(100,1,0)");
  SeededStream rng(1);
  CHECK(act(pfa, pfa.start(), rng) == 1);
}

TEST_CASE("aspiration state ids round-trip") {
  const AspirationParams p{3, 4, 2, 3};
  for (int r = 1; r <= 4; ++r)
    for (Arm k = 1; k <= 3; ++k)
      for (int c = -2; c <= 2; ++c) {
        const auto s = aspiration_state_of(p, aspiration_state_id(p, r, k, c));
        CHECK(s.rank == r);
        CHECK(s.arm == k);
        CHECK(s.counter == c);
        CHECK(s.committed.has_value() == (c == 2));
      }
  CHECK_THROWS_AS(aspiration_state_id(p, 1, 1, -3), StructuralError);
}

TEST_CASE("closed-form state counts equal reachable counts") {
  for (int k = 1; k <= 3; ++k)
    for (int m = 1; m <= 4; ++m)
      for (int m1 = 1; m1 <= 3; ++m1)
        for (int m2 = 1; m2 <= 3; ++m2) {
          const AspirationParams p{k, m, m1, m2};
          CHECK(reachable_state_count(compile_aspiration(p)) == aspiration_state_formula(p));
        }
  for (int k = 2; k <= 5; ++k)
    for (int m = 1; m <= 4; ++m) {
      const EliminationParams p{k, m, 10};
      const Pfa pfa = compile_elimination(p);
      CHECK(pfa.state_count() == elimination_state_formula(p));
      // With M=1 a stop can never leave the challenger ahead, so one
      // decided state per pair is unreachable.
      const auto pairs = static_cast<std::uint64_t>(k * (k - 1) / 2);
      CHECK(reachable_state_count(pfa) == elimination_state_formula(p) - (m == 1 ? pairs : 0));
    }
  for (int k = 1; k <= 3; ++k)
    for (int n = 1; n <= 3; ++n) {
      CHECK(reachable_state_count(compile_explore_then_exploit(k, n)) ==
            *explore_then_exploit_state_formula(k, n));
    }
}

TEST_CASE("elimination state count for K=50, M=20") {
  const EliminationParams p{50, 20, 1000};
  CHECK(elimination_state_formula(p) == 100'450);
}

TEST_CASE("explore-then-exploit compilation refuses oversized instances") {
  CHECK_THROWS_AS(compile_explore_then_exploit(50, 100), StructuralError);
  CHECK_FALSE(explore_then_exploit_state_formula(50, 100).has_value());
  CHECK(explore_then_exploit_state_formula(3, 3) == 159);
}

TEST_CASE("decided elimination states of the last pair are absorbing") {
  const EliminationParams p{3, 2, 5};
  const Pfa pfa = compile_elimination(p);
  const auto q = elimination_state_id(p, 2, 3, EliminationState::Turn::Champion, -2);
  const auto gamma = pfa.action(q);
  REQUIRE(gamma.size() == 1);
  CHECK(gamma[0].value == 3);
  for (int h : {0, 1}) {
    const auto succ = pfa.delta(q, {3, h});
    REQUIRE(succ.size() == 1);
    CHECK(succ[0].value == q);
  }
}

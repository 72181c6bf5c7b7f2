#include <doctest.h>

#include <string>

#include "pfab/compile.hpp"
#include "pfab/errors.hpp"
#include "pfab/pfa.hpp"
#include "pfab/pfa_document.hpp"
#include "support.hpp"

using namespace pfab;
using pfab::test::ScriptedStream;

namespace {

// One state playing `arm` forever.
Pfa constant_pfa(int arms, Arm arm) {
  PfaBuilder b(test::arms_upto(arms));
  const auto q = b.add_state("only");
  b.set_start(q);
  b.set_action(q, {{arm, 1.0}});
  for (int h : {0, 1}) b.set_transition(q, {arm, h}, {{q, 1.0}});
  return std::move(b).build();
}

// Start mixes arms 1 and 2 and falls into an absorbing state that plays 2.
Pfa pfa_with_trap() {
  PfaBuilder b({1, 2});
  const auto s = b.add_state("start");
  const auto trap = b.add_state("trap");
  b.set_start(s);
  b.set_action(s, {{1, 0.5}, {2, 0.5}});
  b.set_action(trap, {{2, 1.0}});
  for (Arm k : {1, 2}) {
    for (int h : {0, 1}) b.set_transition(s, {k, h}, {{s, 0.7}, {trap, 0.3}});
  }
  for (int h : {0, 1}) b.set_transition(trap, {2, h}, {{trap, 1.0}});
  return std::move(b).build();
}

const AspirationParams kAsp100{3, 100, 20, 3};

}  // namespace

TEST_CASE("act plays the arm under test of an aspiration state") {
  const Pfa pfa = compile_aspiration(kAsp100);
  const auto q = pfa.find("(100,3,5)");
  REQUIRE(q);
  SeededStream rng(7);
  for (int i = 0; i < 100; ++i) CHECK(act(pfa, *q, rng) == 3);
}

TEST_CASE("a degenerate action distribution returns its symbol without drawing") {
  const Pfa pfa = constant_pfa(4, 3);
  ScriptedStream rng;
  CHECK(act(pfa, pfa.start(), rng) == 3);
  CHECK(rng.coins().empty());
}

TEST_CASE("act samples an even two-arm distribution at its weights") {
  const Pfa pfa = pfa_with_trap();
  SeededStream rng(11);
  int ones = 0;
  for (int i = 0; i < 10'000; ++i) ones += act(pfa, pfa.start(), rng) == 1;
  CHECK(std::abs(ones / 10'000.0 - 0.5) <= 0.02);
}

TEST_CASE("act rejects an unknown state") {
  const Pfa pfa = constant_pfa(2, 1);
  SeededStream rng(1);
  CHECK_THROWS_AS(act(pfa, 5, rng), StructuralError);
}

TEST_CASE("aspiration success at rank 100 raises the counter with probability 0.005") {
  const AspirationParams p{2, 100, 20, 3};
  const Pfa pfa = compile_aspiration(p);
  const auto from = *pfa.find("(100,1,0)");
  const auto up = *pfa.find("(100,1,1)");
  const auto succ = pfa.delta(from, {1, 1});
  REQUIRE(succ.size() == 2);
  double to_up = 0.0, stay = 0.0;
  for (const auto& w : succ) {
    if (w.value == up) to_up = w.probability;
    if (w.value == from) stay = w.probability;
  }
  CHECK(std::abs(to_up - (1.0 - 99.5 / 100.0)) < 1e-15);
  CHECK(std::abs(stay - 99.5 / 100.0) < 1e-15);

  SeededStream rng(3);
  const int n = 100'000;
  int moved = 0;
  for (int i = 0; i < n; ++i) moved += step(pfa, from, {1, 1}, rng) == up;
  const double se = std::sqrt(0.005 * 0.995 / n);
  CHECK(std::abs(moved / double(n) - 0.005) <= 4 * se);
}

TEST_CASE("a committed aspiration state never moves") {
  const Pfa pfa = compile_aspiration(kAsp100);
  const auto q = *pfa.find("(40,2,20)");
  SeededStream rng(5);
  for (const auto& o : pfa.defined_inputs(q)) {
    for (int i = 0; i < 50; ++i) CHECK(step(pfa, q, o, rng) == q);
  }
}

TEST_CASE("a degenerate transition has a unique successor") {
  const Pfa pfa = constant_pfa(2, 2);
  ScriptedStream rng;
  CHECK(step(pfa, pfa.start(), {2, 1}, rng) == pfa.start());
  CHECK(rng.coins().empty());
}

TEST_CASE("step rejects an undefined transition") {
  const Pfa pfa = constant_pfa(2, 1);
  SeededStream rng(1);
  CHECK_FALSE(pfa.has_transition(pfa.start(), {2, 0}));
  CHECK_THROWS_AS(step(pfa, pfa.start(), {2, 0}, rng), StructuralError);
  CHECK_THROWS_AS(pfa.delta(pfa.start(), {2, 0}), StructuralError);
}

TEST_CASE("run with horizon 0 returns an empty trace at the start state") {
  const Pfa pfa = pfa_with_trap();
  SeededStream rng(1);
  const auto t = run(pfa, BernoulliBandit({0.2, 0.4}), 0, rng);
  CHECK(t.actions.empty());
  CHECK(t.rewards.empty());
  CHECK(t.final_state == pfa.start());
}

TEST_CASE("a one-state PFA on a 0.3 arm earns 0.3 per step") {
  const Pfa pfa = constant_pfa(1, 1);
  const BernoulliBandit bandit({0.3});
  double total = 0.0;
  for (std::uint64_t rep = 0; rep < 1000; ++rep) {
    SeededStream rng(replication_seed(100, rep));
    const auto t = run(pfa, bandit, 1000, rng);
    for (int r : t.rewards) total += r;
  }
  CHECK(std::abs(total / 1e6 - 0.3) <= 0.01);
}

TEST_CASE("run traces have horizon entries of valid arms and rewards") {
  SeededStream gen(21);
  for (int trial = 0; trial < 20; ++trial) {
    const int arms = 1 + static_cast<int>(gen.index(4));
    const Pfa pfa = test::random_pfa(1 + gen.index(6), arms, gen);
    std::vector<double> means;
    for (int k = 0; k < arms; ++k) means.push_back(gen.uniform());
    SeededStream rng(static_cast<std::uint64_t>(trial));
    const auto t = run(pfa, BernoulliBandit(means), 200, rng);
    REQUIRE(t.actions.size() == 200);
    REQUIRE(t.rewards.size() == 200);
    for (std::size_t i = 0; i < 200; ++i) {
      CHECK(t.actions[i] >= 1);
      CHECK(t.actions[i] <= arms);
      CHECK((t.rewards[i] == 0 || t.rewards[i] == 1));
    }
    CHECK(t.final_state < pfa.state_count());
  }
}

TEST_CASE("run is bit-identical under the same seed") {
  const Pfa pfa = compile_aspiration({3, 10, 4, 2});
  const BernoulliBandit bandit({0.3, 0.55, 0.7});
  SeededStream a(99), b(99);
  const auto ta = run(pfa, bandit, 5000, a);
  const auto tb = run(pfa, bandit, 5000, b);
  CHECK(ta.actions == tb.actions);
  CHECK(ta.rewards == tb.rewards);
  CHECK(ta.final_state == tb.final_state);
}

TEST_CASE("run rejects a bandit whose arms differ from the outputs") {
  const Pfa pfa = constant_pfa(2, 1);
  SeededStream rng(1);
  CHECK_THROWS_AS(run(pfa, BernoulliBandit({0.5, 0.5, 0.5}), 10, rng), StructuralError);
}

TEST_CASE("once inside an absorbing state the same arm is played forever") {
  const Pfa pfa = pfa_with_trap();
  const auto trap = *pfa.find("trap");
  const BernoulliBandit bandit({0.4, 0.6});
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    SeededStream rng(seed);
    StateId q = pfa.start();
    std::optional<Arm> locked;
    for (int t = 0; t < 100; ++t) {
      const Arm a = act(pfa, q, rng);
      if (locked) {
        CHECK(a == *locked);
        CHECK(q == trap);
      }
      const int h = bandit.pull(a, rng);
      q = step(pfa, q, {a, h}, rng);
      if (q == trap && !locked) locked = 2;
    }
  }
}

TEST_CASE("sampled actions and successors pass chi-square tests at 0.001") {
  // One goodness-of-fit test per distribution; the family may show the
  // rejections a correct sampler produces by chance, and no more.
  SeededStream gen(2024);
  std::size_t tests = 0, rejected = 0;
  const auto check = [&](const std::vector<double>& probs, const std::vector<std::size_t>& counts) {
    ++tests;
    rejected += !test::chi_square_accepts(probs, counts, 0.001);
  };
  for (int trial = 0; trial < 3; ++trial) {
    const Pfa pfa = test::random_pfa(4, 2, gen);
    SeededStream rng(static_cast<std::uint64_t>(500 + trial));
    for (StateId q = 0; q < pfa.state_count(); ++q) {
      const auto gamma = pfa.action(q);
      if (gamma.size() > 1) {
        std::vector<double> probs;
        std::vector<std::size_t> counts(gamma.size(), 0);
        for (const auto& w : gamma) probs.push_back(w.probability);
        for (int i = 0; i < 10'000; ++i) {
          const Arm a = act(pfa, q, rng);
          for (std::size_t j = 0; j < gamma.size(); ++j) counts[j] += gamma[j].value == a;
        }
        check(probs, counts);
      }
      for (const auto& o : pfa.defined_inputs(q)) {
        const auto succ = pfa.delta(q, o);
        if (succ.size() < 2) continue;
        std::vector<double> probs;
        std::vector<std::size_t> counts(succ.size(), 0);
        for (const auto& w : succ) probs.push_back(w.probability);
        for (int i = 0; i < 10'000; ++i) {
          const StateId s = step(pfa, q, o, rng);
          for (std::size_t j = 0; j < succ.size(); ++j) counts[j] += succ[j].value == s;
        }
        check(probs, counts);
      }
    }
  }
  REQUIRE(tests >= 30);
  CHECK(rejected <= test::allowed_rejections(tests, 0.001));
}

TEST_CASE("a chi-square test rejects a sampler with the wrong weights") {
  SeededStream rng(12);
  std::vector<std::size_t> counts(2, 0);
  for (int i = 0; i < 10'000; ++i) ++counts[rng.bernoulli(0.55) ? 0 : 1];
  CHECK_FALSE(test::chi_square_accepts({0.5, 0.5}, counts, 0.001));
}

TEST_CASE("reachable state counts") {
  CHECK(reachable_state_count(constant_pfa(3, 2)) == 1);
  CHECK(reachable_state_count(compile_aspiration({3, 4, 2, 2})) == 3 * 4 * 4);

  PfaBuilder b({1});
  const auto a = b.add_state("a");
  const auto c = b.add_state("b");
  const auto orphan = b.add_state("orphan");
  b.set_start(a);
  for (auto q : {a, c, orphan}) b.set_action(q, {{1, 1.0}});
  b.set_transition(a, {1, 0}, {{a, 1.0}});
  b.set_transition(a, {1, 1}, {{c, 1.0}});
  for (int h : {0, 1}) {
    b.set_transition(c, {1, h}, {{c, 1.0}});
    b.set_transition(orphan, {1, h}, {{a, 1.0}});
  }
  CHECK(reachable_state_count(std::move(b).build()) == 2);
}

TEST_CASE("zero-probability transitions do not make states reachable") {
  PfaBuilder b({1});
  const auto a = b.add_state("a");
  const auto c = b.add_state("b");
  b.set_start(a);
  b.set_action(a, {{1, 1.0}});
  b.set_action(c, {{1, 1.0}});
  for (int h : {0, 1}) {
    b.set_transition(a, {1, h}, {{a, 1.0}, {c, 0.0}});
    b.set_transition(c, {1, h}, {{c, 1.0}});
  }
  CHECK(reachable_state_count(std::move(b).build()) == 1);
}

TEST_CASE("reachable count never exceeds the state count") {
  SeededStream gen(8);
  for (int trial = 0; trial < 50; ++trial) {
    const Pfa pfa = test::random_pfa(1 + gen.index(10), 1 + static_cast<int>(gen.index(3)), gen);
    const auto n = reachable_state_count(pfa);
    CHECK(n >= 1);
    CHECK(n <= pfa.state_count());
  }
}

TEST_CASE("builder rejects invalid distributions") {
  auto base = [] {
    PfaBuilder b({1, 2});
    b.set_start(b.add_state("q"));
    return b;
  };
  {
    auto b = base();
    b.set_action(0, {{1, 0.6}, {2, 0.3}});
    for (Arm k : {1, 2})
      for (int h : {0, 1}) b.set_transition(0, {k, h}, {{0, 1.0}});
    CHECK_THROWS_AS(std::move(b).build(), StructuralError);
  }
  {
    auto b = base();
    b.set_action(0, {{1, 1.2}, {2, -0.2}});
    for (Arm k : {1, 2})
      for (int h : {0, 1}) b.set_transition(0, {k, h}, {{0, 1.0}});
    CHECK_THROWS_AS(std::move(b).build(), StructuralError);
  }
  {
    auto b = base();
    b.set_action(0, {{1, 1.0}});
    b.set_transition(0, {1, 0}, {{0, 1.0}});
    CHECK_THROWS_AS(std::move(b).build(), StructuralError);
  }
  CHECK_THROWS_AS(PfaBuilder({1}).build(), StructuralError);
}

TEST_CASE("serialization round-trips compiled and random PFAs") {
  const Pfa asp = compile_aspiration({3, 5, 3, 2});
  CHECK(deserialize(serialize(asp)) == asp);
  const Pfa elim = compile_elimination({3, 2, 5});
  CHECK(deserialize(serialize(elim)) == elim);
  SeededStream gen(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Pfa p = test::random_pfa(1 + gen.index(5), 1 + static_cast<int>(gen.index(3)), gen);
    CHECK(deserialize(serialize(p)) == p);
  }
}

TEST_CASE("input symbols are arm:reward") {
  CHECK(input_symbol({3, 1}) == "3:1");
  CHECK(input_symbol({12, 0}) == "12:0");
}

TEST_CASE("deserialize rejects malformed documents") {
  const std::string short_sum = R"({
    "outputs": [1], "inputs": ["1:0", "1:1"], "start": "q0", "states": ["q0"],
    "action": {"q0": [[1, 0.9]]},
    "delta": {"q0": {"1:0": [["q0", 1.0]], "1:1": [["q0", 1.0]]}}})";
  try {
    deserialize(short_sum);
    FAIL("accepted a distribution summing to 0.9");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("q0") != std::string::npos);
  }

  const std::string no_states = R"({
    "outputs": [1], "inputs": ["1:0", "1:1"], "start": "q0", "states": [],
    "action": {}, "delta": {}})";
  CHECK_THROWS_AS(deserialize(no_states), ParseError);

  const std::string unknown_target = R"({
    "outputs": [1], "inputs": ["1:0", "1:1"], "start": "q0", "states": ["q0"],
    "action": {"q0": [[1, 1.0]]},
    "delta": {"q0": {"1:0": [["q9", 1.0]], "1:1": [["q0", 1.0]]}}})";
  CHECK_THROWS_AS(deserialize(unknown_target), ParseError);

  CHECK_THROWS_AS(deserialize("{not json"), ParseError);
  CHECK_THROWS_AS(deserialize(R"({"outputs": [1]})"), ParseError);
}

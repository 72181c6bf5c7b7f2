#include "pfab/compile.hpp"

#include <map>
#include <numeric>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "pfab/errors.hpp"

namespace pfab {

namespace {

std::vector<Arm> arm_alphabet(int arms) {
  std::vector<Arm> out(static_cast<std::size_t>(arms));
  std::iota(out.begin(), out.end(), 1);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Aspiration

StateId aspiration_state_id(const AspirationParams& p, int rank, Arm arm, int counter) {
  const int width = p.win_threshold + p.lose_threshold;
  if (rank < 1 || rank > p.ranks || arm < 1 || arm > p.arms || counter <= -p.lose_threshold ||
      counter > p.win_threshold) {
    throw StructuralError(fmt::format("no aspiration state ({},{},{})", rank, arm, counter));
  }
  return static_cast<StateId>(((rank - 1) * p.arms + (arm - 1)) * width + (counter + p.lose_threshold - 1));
}

AspirationState aspiration_state_of(const AspirationParams& p, StateId id) {
  const auto width = static_cast<StateId>(p.win_threshold + p.lose_threshold);
  AspirationState s;
  s.counter = static_cast<int>(id % width) - p.lose_threshold + 1;
  id /= width;
  s.arm = static_cast<Arm>(id % static_cast<StateId>(p.arms)) + 1;
  s.rank = static_cast<int>(id / static_cast<StateId>(p.arms)) + 1;
  if (s.counter == p.win_threshold) s.committed = s.arm;
  return s;
}

Pfa compile_aspiration(const AspirationParams& p) {
  p.validate();
  PfaBuilder builder(arm_alphabet(p.arms));
  builder.reserve(static_cast<std::size_t>(aspiration_state_formula(p)));
  for (int r = 1; r <= p.ranks; ++r) {
    for (Arm k = 1; k <= p.arms; ++k) {
      for (int c = -p.lose_threshold + 1; c <= p.win_threshold; ++c) {
        builder.add_state(fmt::format("({},{},{})", r, k, c));
      }
    }
  }
  builder.set_start(aspiration_state_id(p, p.ranks, 1, 0));

  for (int r = 1; r <= p.ranks; ++r) {
    const double virtual_success = (r - 0.5) / p.ranks;
    for (Arm k = 1; k <= p.arms; ++k) {
      for (int c = -p.lose_threshold + 1; c <= p.win_threshold; ++c) {
        const StateId q = aspiration_state_id(p, r, k, c);
        builder.set_action(q, {{k, 1.0}});
        if (c == p.win_threshold) {
          builder.set_transition(q, {k, 0}, {{q, 1.0}});
          builder.set_transition(q, {k, 1}, {{q, 1.0}});
          continue;
        }
        // Success: the virtual arm failed with probability 1 - p.
        builder.set_transition(q, {k, 1},
                               {{aspiration_state_id(p, r, k, c + 1), 1.0 - virtual_success},
                                {q, virtual_success}});
        // Failure: the virtual arm succeeded with probability p.
        StateId lower = 0;
        if (c - 1 > -p.lose_threshold) {
          lower = aspiration_state_id(p, r, k, c - 1);
        } else if (k < p.arms) {
          lower = aspiration_state_id(p, r, k + 1, 0);
        } else {
          lower = aspiration_state_id(p, r > 1 ? r - 1 : 1, 1, 0);
        }
        builder.set_transition(q, {k, 0}, {{lower, virtual_success}, {q, 1.0 - virtual_success}});
      }
    }
  }
  return std::move(builder).build();
}

std::uint64_t aspiration_state_formula(const AspirationParams& p) {
  return static_cast<std::uint64_t>(p.arms) * static_cast<std::uint64_t>(p.ranks) *
         static_cast<std::uint64_t>(p.win_threshold + p.lose_threshold);
}

// ---------------------------------------------------------------------------
// Elimination

namespace {

// Index of the pair (i, j), i < j, in lexicographic order.
std::uint64_t pair_index(int arms, Arm i, Arm j) {
  const auto K = static_cast<std::uint64_t>(arms);
  const auto a = static_cast<std::uint64_t>(i - 1);
  // Pairs whose first element is below i, then offset within row i.
  return a * K - a * (a + 1) / 2 + static_cast<std::uint64_t>(j - i - 1);
}

const char* turn_name(EliminationState::Turn t) {
  return t == EliminationState::Turn::Champion ? "champion" : "challenger";
}

}  // namespace

StateId elimination_state_id(const EliminationParams& p, Arm champion, Arm challenger,
                             EliminationState::Turn turn, int counter) {
  if (champion < 1 || champion >= challenger || challenger > p.arms || counter < -p.threshold ||
      counter > p.threshold) {
    throw StructuralError(fmt::format("no elimination state ({},{},{},{})", champion, challenger,
                                      turn_name(turn), counter));
  }
  const auto span = static_cast<std::uint64_t>(2 * p.threshold + 1);
  const auto t = turn == EliminationState::Turn::Champion ? 0u : 1u;
  return static_cast<StateId>((pair_index(p.arms, champion, challenger) * 2 + t) * span +
                              static_cast<std::uint64_t>(counter + p.threshold));
}

Pfa compile_elimination(const EliminationParams& p) {
  p.validate();
  using Turn = EliminationState::Turn;
  const int M = p.threshold;
  const double stop = 1.0 / p.stop_scale;
  const auto id = [&](Arm i, Arm j, Turn t, int c) { return elimination_state_id(p, i, j, t, c); };

  PfaBuilder builder(arm_alphabet(p.arms));
  builder.reserve(static_cast<std::size_t>(elimination_state_formula(p)));
  for (Arm i = 1; i <= p.arms; ++i) {
    for (Arm j = i + 1; j <= p.arms; ++j) {
      for (Turn t : {Turn::Champion, Turn::Challenger}) {
        for (int c = -M; c <= M; ++c) builder.add_state(fmt::format("({},{},{},{})", i, j, turn_name(t), c));
      }
    }
  }
  builder.set_start(id(1, 2, Turn::Champion, 0));

  for (Arm i = 1; i <= p.arms; ++i) {
    for (Arm j = i + 1; j <= p.arms; ++j) {
      for (Turn t : {Turn::Champion, Turn::Challenger}) {
        for (int c = -M; c <= M; ++c) {
          const StateId q = id(i, j, t, c);
          if (c == M || c == -M) {
            const Arm survivor = c == M ? i : j;
            builder.set_action(q, {{survivor, 1.0}});
            for (int h : {0, 1}) {
              if (j == p.arms) {
                builder.set_transition(q, {survivor, h}, {{q, 1.0}});
              } else {
                // The survivor just played as champion of (survivor, j+1).
                builder.set_transition(q, {survivor, h}, {{id(survivor, j + 1, Turn::Challenger, h), 1.0}});
              }
            }
            continue;
          }
          if (t == Turn::Champion) {
            builder.set_action(q, {{i, 1.0}});
            builder.set_transition(q, {i, 0}, {{id(i, j, Turn::Challenger, c), 1.0}});
            builder.set_transition(q, {i, 1}, {{id(i, j, Turn::Challenger, c + 1), 1.0}});
            continue;
          }
          builder.set_action(q, {{j, 1.0}});
          for (int h : {0, 1}) {
            const int next = c - h;
            if (next == -M) {
              builder.set_transition(q, {j, h}, {{id(i, j, Turn::Champion, -M), 1.0}});
              continue;
            }
            const StateId stopped = next >= 0 ? id(i, j, Turn::Champion, M) : id(i, j, Turn::Challenger, -M);
            builder.set_transition(q, {j, h}, {{id(i, j, Turn::Champion, next), 1.0 - stop}, {stopped, stop}});
          }
        }
      }
    }
  }
  return std::move(builder).build();
}

std::uint64_t elimination_state_formula(const EliminationParams& p) {
  const auto K = static_cast<std::uint64_t>(p.arms);
  return K * (K - 1) / 2 * 2 * static_cast<std::uint64_t>(2 * p.threshold + 1);
}

// ---------------------------------------------------------------------------
// Explore-then-exploit

namespace {

// Plays of arm k (1-based) among the first t round-robin steps.
std::uint64_t plays_before(int arms, std::uint64_t t, Arm k) {
  const auto K = static_cast<std::uint64_t>(arms);
  return t / K + (static_cast<std::uint64_t>(k - 1) < t % K ? 1 : 0);
}

}  // namespace

std::optional<std::uint64_t> explore_then_exploit_state_formula(int arms, int pulls_per_arm) {
  if (arms < 1 || pulls_per_arm < 1) throw StructuralError("ete: needs K >= 1 and N >= 1");
  const auto steps = static_cast<std::uint64_t>(arms) * static_cast<std::uint64_t>(pulls_per_arm);
  std::uint64_t total = static_cast<std::uint64_t>(arms);
  for (std::uint64_t t = 0; t < steps; ++t) {
    std::uint64_t product = 1;
    for (Arm k = 1; k <= arms; ++k) {
      if (__builtin_mul_overflow(product, plays_before(arms, t, k) + 1, &product)) return std::nullopt;
    }
    if (__builtin_add_overflow(total, product, &total)) return std::nullopt;
  }
  return total;
}

Pfa compile_explore_then_exploit(int arms, int pulls_per_arm, std::uint64_t state_limit) {
  const auto formula = explore_then_exploit_state_formula(arms, pulls_per_arm);
  if (!formula || *formula > state_limit) {
    throw StructuralError(fmt::format("ete(K={}, N={}) needs more than {} states", arms, pulls_per_arm, state_limit));
  }
  const auto K = static_cast<std::size_t>(arms);
  const auto steps = K * static_cast<std::size_t>(pulls_per_arm);

  PfaBuilder builder(arm_alphabet(arms));
  builder.reserve(static_cast<std::size_t>(*formula));
  std::vector<StateId> commit(K);
  for (std::size_t k = 0; k < K; ++k) commit[k] = builder.add_state(fmt::format("commit {}", k + 1));
  for (std::size_t k = 0; k < K; ++k) {
    const Arm arm = static_cast<Arm>(k) + 1;
    builder.set_action(commit[k], {{arm, 1.0}});
    builder.set_transition(commit[k], {arm, 0}, {{commit[k], 1.0}});
    builder.set_transition(commit[k], {arm, 1}, {{commit[k], 1.0}});
  }

  using Key = std::pair<std::size_t, std::vector<std::uint32_t>>;
  std::map<Key, StateId> ids;
  std::vector<Key> pending;
  const auto intern = [&](Key key) {
    const auto [it, inserted] = ids.try_emplace(key, 0);
    if (inserted) {
      it->second = builder.add_state(fmt::format("({};{})", key.first, fmt::join(key.second, ",")));
      pending.push_back(std::move(key));
    }
    return it->second;
  };
  const auto decide = [&](const std::vector<std::uint32_t>& successes) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < K; ++k) {
      if (successes[k] > successes[best]) best = k;
    }
    return commit[best];
  };

  builder.set_start(intern({0, std::vector<std::uint32_t>(K, 0)}));
  while (!pending.empty()) {
    Key key = std::move(pending.back());
    pending.pop_back();
    const StateId q = ids.at(key);
    const auto [t, successes] = key;
    const Arm arm = static_cast<Arm>(t % K) + 1;
    builder.set_action(q, {{arm, 1.0}});
    for (int h : {0, 1}) {
      auto next = successes;
      next[static_cast<std::size_t>(arm - 1)] += static_cast<std::uint32_t>(h);
      // Every arm has the same play count at the end, so comparing success
      // counts compares empirical means.
      const StateId target = t + 1 == steps ? decide(next) : intern({t + 1, next});
      builder.set_transition(q, {arm, h}, {{target, 1.0}});
    }
  }
  return std::move(builder).build();
}

}  // namespace pfab

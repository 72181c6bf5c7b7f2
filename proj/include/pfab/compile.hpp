#pragma once

#include <cstdint>
#include <optional>

#include "pfab/aspiration.hpp"
#include "pfab/elimination.hpp"
#include "pfab/pfa.hpp"

namespace pfab {

// Explicit PFA over every (r, k, c) with 1<=r<=m, 1<=k<=K, -M2<c<=M1,
// labelled "(r,k,c)". States with c = M1 are absorbing and play k.
Pfa compile_aspiration(const AspirationParams& params);
StateId aspiration_state_id(const AspirationParams& params, int rank, Arm arm, int counter);
AspirationState aspiration_state_of(const AspirationParams& params, StateId id);

// Explicit PFA over (champion i, challenger j, turn, c) for i < j,
// c in [-M, M], labelled "(i,j,champion|challenger,c)". With |c| < M the
// turn says who plays next. |c| = M is a decided comparison that plays the
// survivor; its turn bit records how the verdict was reached: the natural
// post-play turn for a threshold hit, the opposite turn for a 1/N stop.
// The survivor's play is the first champion play of the next comparison;
// decided states of the last pair are absorbing.
Pfa compile_elimination(const EliminationParams& params);
StateId elimination_state_id(const EliminationParams& params, Arm champion, Arm challenger,
                             EliminationState::Turn turn, int counter);

// Explicit PFA for explore-then-exploit over its reachable states only:
// exploration states "(t;s_1,...,s_K)" (step t, successes per arm) and
// commitment states "commit k". Throws StructuralError if the closed-form
// count exceeds `state_limit`.
Pfa compile_explore_then_exploit(int arms, int pulls_per_arm, std::uint64_t state_limit = 2'000'000);

// Closed-form state counts.
std::uint64_t aspiration_state_formula(const AspirationParams& params);
std::uint64_t elimination_state_formula(const EliminationParams& params);
// nullopt when the count does not fit in 64 bits.
std::optional<std::uint64_t> explore_then_exploit_state_formula(int arms, int pulls_per_arm);

}  // namespace pfab

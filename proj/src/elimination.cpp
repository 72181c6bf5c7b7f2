#include "pfab/elimination.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "pfab/errors.hpp"

namespace pfab {

void EliminationParams::validate() const {
  if (arms < 2) throw StructuralError(fmt::format("elimination: needs K >= 2 arms, got {}", arms));
  if (threshold < 1) throw StructuralError(fmt::format("elimination: M must be >= 1, got {}", threshold));
  if (stop_scale < 1) throw StructuralError(fmt::format("elimination: N must be >= 1, got {}", stop_scale));
}

EliminationAgent::EliminationAgent(const EliminationParams& params)
    : Agent(static_cast<std::size_t>(std::max(params.arms, 1))), params_(params) {
  params_.validate();
}

Arm EliminationAgent::exploit_choice() const {
  if (state_.winner) return *state_.winner;
  return state_.counter < 0 ? state_.challenger : state_.champion;
}

Arm EliminationAgent::select(RandomStream&) {
  if (state_.winner) return *state_.winner;
  return state_.turn == EliminationState::Turn::Champion ? state_.champion : state_.challenger;
}

void EliminationAgent::update(Arm, int reward, RandomStream& rng) {
  if (state_.winner) return;
  const int m = params_.threshold;
  if (state_.turn == EliminationState::Turn::Champion) {
    state_.counter += reward;
    state_.turn = EliminationState::Turn::Challenger;
    if (state_.counter == m) resolve(state_.champion);
    return;
  }
  state_.counter -= reward;
  state_.turn = EliminationState::Turn::Champion;
  if (state_.counter == -m) {
    resolve(state_.challenger);
  } else if (rng.bernoulli(1.0 / static_cast<double>(params_.stop_scale))) {
    resolve(state_.counter >= 0 ? state_.champion : state_.challenger);
  }
}

void EliminationAgent::resolve(Arm survivor) {
  ++comparisons_;
  if (state_.challenger == params_.arms) {
    state_.winner = survivor;
    return;
  }
  state_.champion = survivor;
  state_.challenger += 1;
  state_.counter = 0;
  state_.turn = EliminationState::Turn::Champion;
}

}  // namespace pfab

#include "pfab/aspiration.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "pfab/errors.hpp"

namespace pfab {

namespace {

enum class Verdict { Pending, ArmWins, VirtualWins };

// One observation of the arm-vs-virtual comparison.
Verdict compare(AspirationState& s, int ranks, int win, int lose, int reward, RandomStream& rng) {
  const double p = virtual_arm_probability(s.rank, ranks);
  if (reward == 1) {
    if (rng.bernoulli(1.0 - p)) ++s.counter;
  } else {
    if (rng.bernoulli(p)) --s.counter;
  }
  if (s.counter >= win) return Verdict::ArmWins;
  if (s.counter <= -lose) return Verdict::VirtualWins;
  return Verdict::Pending;
}

// Next arm, or lower the rank by `rank_step` after the last arm.
void advance(AspirationState& s, int arms, int rank_step) {
  s.counter = 0;
  if (s.arm < arms) {
    ++s.arm;
  } else {
    s.arm = 1;
    s.rank = std::max(s.rank - rank_step, 1);
  }
}

}  // namespace

void AspirationParams::validate() const {
  if (arms < 1) throw StructuralError(fmt::format("aspiration: arms must be >= 1, got {}", arms));
  if (ranks < 1) throw StructuralError(fmt::format("aspiration: m must be >= 1, got {}", ranks));
  if (win_threshold < 1) throw StructuralError(fmt::format("aspiration: M1 must be >= 1, got {}", win_threshold));
  if (lose_threshold < 1) {
    throw StructuralError(fmt::format("aspiration: M2 must be >= 1, got {}", lose_threshold));
  }
}

AspirationAgent::AspirationAgent(const AspirationParams& params)
    : AspirationAgent(params, AspirationState{params.ranks, 1, 0, std::nullopt}) {}

AspirationAgent::AspirationAgent(const AspirationParams& params, const AspirationState& initial)
    : Agent(static_cast<std::size_t>(std::max(params.arms, 1))), params_(params), state_(initial) {
  params_.validate();
  const auto& s = state_;
  if (s.rank < 1 || s.rank > params_.ranks || s.arm < 1 || s.arm > params_.arms ||
      s.counter <= -params_.lose_threshold || s.counter > params_.win_threshold) {
    throw StructuralError(fmt::format("invalid aspiration state ({},{},{})", s.rank, s.arm, s.counter));
  }
  if (s.counter == params_.win_threshold && !s.committed) state_.committed = s.arm;
}

void AspirationAgent::update(Arm, int reward, RandomStream& rng) {
  if (state_.committed) return;
  switch (compare(state_, params_.ranks, params_.win_threshold, params_.lose_threshold, reward, rng)) {
    case Verdict::ArmWins:
      state_.committed = state_.arm;
      break;
    case Verdict::VirtualWins:
      advance(state_, params_.arms, 1);
      break;
    case Verdict::Pending:
      break;
  }
}

int TwoPhaseParams::coarse_step() const {
  return std::max(1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(fine.ranks)))));
}

void TwoPhaseParams::validate() const {
  fine.validate();
  if (coarse_win_threshold < 1 || coarse_lose_threshold < 1) {
    throw StructuralError("aspiration2: coarse thresholds must be >= 1");
  }
}

TwoPhaseAspirationAgent::TwoPhaseAspirationAgent(const TwoPhaseParams& params)
    : Agent(static_cast<std::size_t>(std::max(params.fine.arms, 1))),
      params_(params),
      state_{params.fine.ranks, 1, 0, std::nullopt} {
  params_.validate();
}

TwoPhaseAspirationAgent::TwoPhaseAspirationAgent(const TwoPhaseParams& params, Phase phase,
                                                 const AspirationState& initial)
    : TwoPhaseAspirationAgent(params) {
  phase_ = phase;
  state_ = initial;
  const int win = phase == Phase::Coarse ? params_.coarse_win_threshold : params_.fine.win_threshold;
  const int lose = phase == Phase::Coarse ? params_.coarse_lose_threshold : params_.fine.lose_threshold;
  if (state_.rank < 1 || state_.rank > params_.fine.ranks || state_.arm < 1 || state_.arm > params_.fine.arms ||
      state_.counter <= -lose || state_.counter >= win || state_.committed) {
    throw StructuralError(
        fmt::format("invalid two-phase state ({},{},{})", state_.rank, state_.arm, state_.counter));
  }
}

void TwoPhaseAspirationAgent::update(Arm, int reward, RandomStream& rng) {
  if (state_.committed) return;
  const auto& fine = params_.fine;
  if (phase_ == Phase::Coarse) {
    switch (compare(state_, fine.ranks, params_.coarse_win_threshold, params_.coarse_lose_threshold,
                    reward, rng)) {
      case Verdict::ArmWins:
        phase_ = Phase::Fine;
        state_ = AspirationState{std::min(fine.ranks, state_.rank + params_.coarse_step()), 1, 0,
                                 std::nullopt};
        break;
      case Verdict::VirtualWins:
        advance(state_, fine.arms, params_.coarse_step());
        break;
      case Verdict::Pending:
        break;
    }
    return;
  }
  switch (compare(state_, fine.ranks, fine.win_threshold, fine.lose_threshold, reward, rng)) {
    case Verdict::ArmWins:
      state_.committed = state_.arm;
      break;
    case Verdict::VirtualWins:
      advance(state_, fine.arms, 1);
      break;
    case Verdict::Pending:
      break;
  }
}

}  // namespace pfab

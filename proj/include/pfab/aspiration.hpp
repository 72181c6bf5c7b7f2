#pragma once

#include <optional>

#include "pfab/agent.hpp"

namespace pfab {

// Aspiration-level protocol: test one arm at a time against a virtual arm
// of success probability (r - 0.5) / m. The counter moves up on a real
// success the virtual arm would have missed, down on a real failure the
// virtual arm would have matched with a success. Reaching `win_threshold`
// commits to the arm; reaching -`lose_threshold` moves to the next arm,
// and after arm K lowers the rank (never below 1) and restarts at arm 1.
struct AspirationParams {
  int arms = 2;
  int ranks = 100;          // m
  int win_threshold = 20;   // M1
  int lose_threshold = 3;   // M2, stored as a positive magnitude

  void validate() const;
};

struct AspirationState {
  int rank = 1;      // r in 1..m
  Arm arm = 1;       // k in 1..K
  int counter = 0;   // c in (-M2, M1]
  std::optional<Arm> committed;

  friend bool operator==(const AspirationState&, const AspirationState&) = default;
};

inline double virtual_arm_probability(int rank, int ranks) {
  return (static_cast<double>(rank) - 0.5) / static_cast<double>(ranks);
}

class AspirationAgent final : public Agent {
 public:
  explicit AspirationAgent(const AspirationParams& params);
  // Starts from an arbitrary valid state (tests, replays).
  AspirationAgent(const AspirationParams& params, const AspirationState& initial);

  const AspirationState& state() const { return state_; }
  const AspirationParams& params() const { return params_; }

  Arm exploit_choice() const override { return state_.committed.value_or(state_.arm); }
  std::unique_ptr<Agent> clone() const override { return std::make_unique<AspirationAgent>(*this); }

 private:
  Arm select(RandomStream&) override { return exploit_choice(); }
  void update(Arm arm, int reward, RandomStream& rng) override;

  AspirationParams params_;
  AspirationState state_;
};

// Two-phase variant: a coarse pass lowers the rank by floor(sqrt(m)) per
// failed sweep with loose thresholds; the first coarse winner at rank r
// restarts a fine search at min(m, r + floor(sqrt(m))) with the regular
// thresholds and unit rank steps. Only a fine-phase win commits.
struct TwoPhaseParams {
  AspirationParams fine;
  int coarse_win_threshold = 5;
  int coarse_lose_threshold = 1;

  int coarse_step() const;
  void validate() const;
};

class TwoPhaseAspirationAgent final : public Agent {
 public:
  enum class Phase { Coarse, Fine };

  explicit TwoPhaseAspirationAgent(const TwoPhaseParams& params);
  TwoPhaseAspirationAgent(const TwoPhaseParams& params, Phase phase, const AspirationState& initial);

  Phase phase() const { return phase_; }
  const AspirationState& state() const { return state_; }

  Arm exploit_choice() const override { return state_.committed.value_or(state_.arm); }
  std::unique_ptr<Agent> clone() const override {
    return std::make_unique<TwoPhaseAspirationAgent>(*this);
  }

 private:
  Arm select(RandomStream&) override { return exploit_choice(); }
  void update(Arm arm, int reward, RandomStream& rng) override;

  TwoPhaseParams params_;
  Phase phase_ = Phase::Coarse;
  AspirationState state_;
};

}  // namespace pfab

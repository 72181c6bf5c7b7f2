#pragma once

#include <optional>

#include "pfab/agent.hpp"

namespace pfab {

// Elimination tournament. The champion (initially arm 1) and challenger
// (initially arm 2) alternate plays, champion first. A champion success
// raises the counter, a challenger success lowers it. At +M the challenger
// is eliminated, at -M the challenger becomes champion. After every
// completed round (champion play then challenger play) that did not hit a
// threshold, the comparison stops with probability 1/N and the leader by
// counter sign survives, the champion on a tie. The survivor meets the next
// arm by index; the survivor of the last comparison is played forever.
struct EliminationParams {
  int arms = 2;
  int threshold = 20;    // M
  int stop_scale = 1000; // N

  void validate() const;
};

struct EliminationState {
  enum class Turn { Champion, Challenger };

  Arm champion = 1;
  Arm challenger = 2;
  Turn turn = Turn::Champion;
  int counter = 0;
  std::optional<Arm> winner;

  friend bool operator==(const EliminationState&, const EliminationState&) = default;
};

class EliminationAgent final : public Agent {
 public:
  explicit EliminationAgent(const EliminationParams& params);

  const EliminationState& state() const { return state_; }
  // Comparisons finished so far.
  int comparisons() const { return comparisons_; }

  // Winner if decided, else the current leader (champion on a tie).
  Arm exploit_choice() const override;
  std::unique_ptr<Agent> clone() const override { return std::make_unique<EliminationAgent>(*this); }

 private:
  Arm select(RandomStream&) override;
  void update(Arm arm, int reward, RandomStream& rng) override;
  void resolve(Arm survivor);

  EliminationParams params_;
  EliminationState state_;
  int comparisons_ = 0;
};

}  // namespace pfab

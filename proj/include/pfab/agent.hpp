#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pfab/bandit.hpp"
#include "pfab/distribution.hpp"
#include "pfab/rng.hpp"

namespace pfab {

// A bandit-playing protocol. Calls must alternate choose() / observe() with
// observe() reporting the arm just chosen; anything else throws
// StructuralError.
class Agent {
 public:
  explicit Agent(std::size_t arms);
  virtual ~Agent() = default;

  Arm choose(RandomStream& rng);
  void observe(Arm arm, int reward, RandomStream& rng);

  // The arm the agent would commit to now.
  virtual Arm exploit_choice() const = 0;
  // Distribution of the arm the agent plays from now on, if it stopped
  // learning; a point mass on exploit_choice() unless the protocol keeps
  // randomizing (epsilon-greedy). The final-gap metric averages over it.
  virtual std::vector<Weighted<Arm>> exploit_distribution() const { return {{exploit_choice(), 1.0}}; }
  virtual std::unique_ptr<Agent> clone() const = 0;

  std::size_t arms() const { return arms_; }
  std::size_t steps() const { return steps_; }

 protected:
  Agent(const Agent&) = default;

  virtual Arm select(RandomStream& rng) = 0;
  virtual void update(Arm arm, int reward, RandomStream& rng) = 0;

 private:
  std::size_t arms_;
  std::size_t steps_ = 0;
  std::optional<Arm> pending_;
};

// Runs `agent` against `bandit` for `horizon` steps, appending to the
// supplied sequences.
struct Episode {
  std::vector<Arm> actions;
  std::vector<int> rewards;
};
Episode play(Agent& agent, const BernoulliBandit& bandit, std::size_t horizon, RandomStream& rng);

}  // namespace pfab

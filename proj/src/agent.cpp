#include "pfab/agent.hpp"

#include <fmt/format.h>

#include "pfab/errors.hpp"

namespace pfab {

Agent::Agent(std::size_t arms) : arms_(arms) {
  if (arms == 0) throw StructuralError("agent needs at least one arm");
}

Arm Agent::choose(RandomStream& rng) {
  if (pending_) throw StructuralError("choose() called twice without observe()");
  const Arm arm = select(rng);
  if (arm < 1 || static_cast<std::size_t>(arm) > arms_) {
    throw StructuralError(fmt::format("agent chose arm {} outside 1..{}", arm, arms_));
  }
  pending_ = arm;
  return arm;
}

void Agent::observe(Arm arm, int reward, RandomStream& rng) {
  if (!pending_) throw StructuralError("observe() called before choose()");
  if (arm != *pending_) {
    throw StructuralError(fmt::format("observe() reported arm {} but arm {} was chosen", arm, *pending_));
  }
  if (reward != 0 && reward != 1) throw StructuralError(fmt::format("reward {} not in {{0,1}}", reward));
  pending_.reset();
  ++steps_;
  update(arm, reward, rng);
}

Episode play(Agent& agent, const BernoulliBandit& bandit, std::size_t horizon, RandomStream& rng) {
  if (agent.arms() != bandit.arms()) {
    throw StructuralError(fmt::format("{}-armed agent on {}-armed bandit", agent.arms(), bandit.arms()));
  }
  Episode e;
  e.actions.reserve(horizon);
  e.rewards.reserve(horizon);
  for (std::size_t t = 0; t < horizon; ++t) {
    const Arm a = agent.choose(rng);
    const int r = bandit.pull(a, rng);
    agent.observe(a, r, rng);
    e.actions.push_back(a);
    e.rewards.push_back(r);
  }
  return e;
}

}  // namespace pfab

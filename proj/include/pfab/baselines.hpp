#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pfab/agent.hpp"

namespace pfab {

// Per-arm success/failure tallies.
class CountEstimates {
 public:
  explicit CountEstimates(std::size_t arms) : successes_(arms, 0), failures_(arms, 0) {}

  void record(Arm arm, int reward);
  std::uint64_t successes(Arm arm) const { return successes_[static_cast<std::size_t>(arm - 1)]; }
  std::uint64_t failures(Arm arm) const { return failures_[static_cast<std::size_t>(arm - 1)]; }
  std::uint64_t plays(Arm arm) const { return successes(arm) + failures(arm); }

  // Empirical mean; 0 for an unplayed arm.
  double empirical_mean(Arm arm) const;
  // Mean of the Beta(s+1, f+1) posterior.
  double posterior_mean(Arm arm) const;

  // Lowest-indexed arm with the highest empirical mean.
  Arm empirical_argmax() const;
  Arm posterior_argmax() const;

  std::size_t arms() const { return successes_.size(); }

 private:
  std::vector<std::uint64_t> successes_;
  std::vector<std::uint64_t> failures_;
};

// Plays arms round-robin until each has `pulls_per_arm` plays, then commits
// to the best empirical mean (lowest index on ties).
class ExploreThenExploitAgent final : public Agent {
 public:
  ExploreThenExploitAgent(int arms, int pulls_per_arm);

  std::optional<Arm> committed() const { return committed_; }
  const CountEstimates& counts() const { return counts_; }

  Arm exploit_choice() const override { return committed_.value_or(counts_.empirical_argmax()); }
  std::unique_ptr<Agent> clone() const override {
    return std::make_unique<ExploreThenExploitAgent>(*this);
  }

 private:
  Arm select(RandomStream&) override;
  void update(Arm arm, int reward, RandomStream&) override;

  int pulls_per_arm_;
  std::size_t observed_ = 0;
  CountEstimates counts_;
  std::optional<Arm> committed_;
};

// Round-robin exploration for K*N steps, then the empirical argmax with
// probability 1-epsilon and a uniformly random arm otherwise.
class EpsilonGreedyAgent final : public Agent {
 public:
  EpsilonGreedyAgent(int arms, int pulls_per_arm, double epsilon);

  const CountEstimates& counts() const { return counts_; }
  bool exploring() const;

  Arm exploit_choice() const override { return counts_.empirical_argmax(); }
  // Empirical argmax with probability 1-epsilon+epsilon/K, every other arm epsilon/K.
  std::vector<Weighted<Arm>> exploit_distribution() const override;
  std::unique_ptr<Agent> clone() const override { return std::make_unique<EpsilonGreedyAgent>(*this); }

 private:
  Arm select(RandomStream& rng) override;
  void update(Arm arm, int reward, RandomStream&) override;

  int pulls_per_arm_;
  double epsilon_;
  std::size_t observed_ = 0;
  CountEstimates counts_;
};

// Thompson Sampling with independent uniform Beta(1,1) priors: each step
// draws one posterior sample per arm and plays the argmax.
class ThompsonAgent final : public Agent {
 public:
  explicit ThompsonAgent(int arms);

  const CountEstimates& counts() const { return counts_; }

  Arm exploit_choice() const override { return counts_.posterior_argmax(); }
  std::unique_ptr<Agent> clone() const override { return std::make_unique<ThompsonAgent>(*this); }

 private:
  Arm select(RandomStream& rng) override;
  void update(Arm arm, int reward, RandomStream&) override;

  CountEstimates counts_;
};

}  // namespace pfab

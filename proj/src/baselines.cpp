#include "pfab/baselines.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "pfab/errors.hpp"

namespace pfab {

namespace {

std::size_t checked_arms(int arms) {
  if (arms < 1) throw StructuralError(fmt::format("needs at least one arm, got {}", arms));
  return static_cast<std::size_t>(arms);
}

template <class Score>
Arm argmax(std::size_t arms, Score score) {
  Arm best = 1;
  double best_score = score(1);
  for (Arm k = 2; static_cast<std::size_t>(k) <= arms; ++k) {
    const double s = score(k);
    if (s > best_score) {
      best = k;
      best_score = s;
    }
  }
  return best;
}

}  // namespace

void CountEstimates::record(Arm arm, int reward) {
  auto& tally = reward ? successes_ : failures_;
  ++tally[static_cast<std::size_t>(arm - 1)];
}

double CountEstimates::empirical_mean(Arm arm) const {
  const auto n = plays(arm);
  return n == 0 ? 0.0 : static_cast<double>(successes(arm)) / static_cast<double>(n);
}

double CountEstimates::posterior_mean(Arm arm) const {
  return (static_cast<double>(successes(arm)) + 1.0) / (static_cast<double>(plays(arm)) + 2.0);
}

Arm CountEstimates::empirical_argmax() const {
  return argmax(arms(), [this](Arm k) { return empirical_mean(k); });
}

Arm CountEstimates::posterior_argmax() const {
  return argmax(arms(), [this](Arm k) { return posterior_mean(k); });
}

ExploreThenExploitAgent::ExploreThenExploitAgent(int arms, int pulls_per_arm)
    : Agent(checked_arms(arms)), pulls_per_arm_(pulls_per_arm), counts_(checked_arms(arms)) {
  if (pulls_per_arm < 1) throw StructuralError(fmt::format("ete: N must be >= 1, got {}", pulls_per_arm));
}

Arm ExploreThenExploitAgent::select(RandomStream&) {
  if (committed_) return *committed_;
  return static_cast<Arm>(observed_ % this->arms()) + 1;
}

void ExploreThenExploitAgent::update(Arm arm, int reward, RandomStream&) {
  if (committed_) return;
  counts_.record(arm, reward);
  ++observed_;
  if (observed_ == this->arms() * static_cast<std::size_t>(pulls_per_arm_)) {
    committed_ = counts_.empirical_argmax();
  }
}

EpsilonGreedyAgent::EpsilonGreedyAgent(int arms, int pulls_per_arm, double epsilon)
    : Agent(checked_arms(arms)),
      pulls_per_arm_(pulls_per_arm),
      epsilon_(epsilon),
      counts_(checked_arms(arms)) {
  if (pulls_per_arm < 0) throw StructuralError("egreedy: N must be >= 0");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw StructuralError(fmt::format("egreedy: epsilon {} outside [0,1]", epsilon));
  }
}

bool EpsilonGreedyAgent::exploring() const {
  return observed_ < this->arms() * static_cast<std::size_t>(pulls_per_arm_);
}

Arm EpsilonGreedyAgent::select(RandomStream& rng) {
  if (exploring()) return static_cast<Arm>(observed_ % this->arms()) + 1;
  if (rng.bernoulli(epsilon_)) return static_cast<Arm>(rng.index(this->arms())) + 1;
  return counts_.empirical_argmax();
}

std::vector<Weighted<Arm>> EpsilonGreedyAgent::exploit_distribution() const {
  const auto K = static_cast<double>(this->arms());
  const Arm greedy = exploit_choice();
  std::vector<Weighted<Arm>> out;
  for (Arm k = 1; static_cast<std::size_t>(k) <= this->arms(); ++k) {
    out.push_back({k, epsilon_ / K + (k == greedy ? 1.0 - epsilon_ : 0.0)});
  }
  return out;
}

void EpsilonGreedyAgent::update(Arm arm, int reward, RandomStream&) {
  counts_.record(arm, reward);
  ++observed_;
}

ThompsonAgent::ThompsonAgent(int arms) : Agent(checked_arms(arms)), counts_(checked_arms(arms)) {}

Arm ThompsonAgent::select(RandomStream& rng) {
  return argmax(this->arms(), [&](Arm k) {
    return rng.beta(static_cast<double>(counts_.successes(k)) + 1.0,
                    static_cast<double>(counts_.failures(k)) + 1.0);
  });
}

void ThompsonAgent::update(Arm arm, int reward, RandomStream&) { counts_.record(arm, reward); }

}  // namespace pfab

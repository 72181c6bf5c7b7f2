#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pfab/rng.hpp"

namespace pfab {

// Arms are numbered 1..K throughout.
using Arm = int;

class BernoulliBandit {
 public:
  explicit BernoulliBandit(std::vector<double> means);

  std::size_t arms() const { return means_.size(); }
  double mean(Arm k) const;
  std::span<const double> means() const { return means_; }

  // 1 with probability mean(k), else 0.
  int pull(Arm k, RandomStream& rng) const;

  double best_mean() const { return best_; }
  // Lowest-indexed arm attaining best_mean().
  Arm best_arm() const;

  friend bool operator==(const BernoulliBandit&, const BernoulliBandit&) = default;

 private:
  std::vector<double> means_;
  double best_ = 0.0;
};

// alpha ~ U[0,1), then each mean ~ U[0, alpha) independently.
BernoulliBandit sample_bandit(std::size_t arms, RandomStream& rng);
// Same generator with alpha fixed.
BernoulliBandit sample_bandit_with_alpha(std::size_t arms, double alpha, RandomStream& rng);

// Returns the first violated genericity clause, or nullopt if generic.
std::optional<std::string> genericity_violation(const BernoulliBandit& bandit);
inline bool is_generic(const BernoulliBandit& bandit) {
  return !genericity_violation(bandit).has_value();
}

// Bijection rho on 1..K.
class Permutation {
 public:
  explicit Permutation(std::vector<Arm> mapping);
  static Permutation identity(std::size_t size);

  std::size_t size() const { return mapping_.size(); }
  Arm operator()(Arm k) const;
  Permutation inverse() const;
  std::span<const Arm> mapping() const { return mapping_; }

 private:
  std::vector<Arm> mapping_;
};

// B' with mu_k = mu'_{rho(k)}: arm k of `bandit` becomes arm rho(k).
BernoulliBandit permute(const BernoulliBandit& bandit, const Permutation& rho);

// All K! permutations in lexicographic order.
std::vector<Permutation> all_permutations(std::size_t size);

}  // namespace pfab

#include "pfab/bandit.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "pfab/errors.hpp"

namespace pfab {

BernoulliBandit::BernoulliBandit(std::vector<double> means) : means_(std::move(means)) {
  if (means_.empty()) throw StructuralError("bandit needs at least one arm");
  for (std::size_t i = 0; i < means_.size(); ++i) {
    const double mu = means_[i];
    if (!(mu >= 0.0 && mu <= 1.0)) {
      throw StructuralError(fmt::format("arm {} mean {} outside [0,1]", i + 1, mu));
    }
  }
  best_ = *std::max_element(means_.begin(), means_.end());
}

double BernoulliBandit::mean(Arm k) const {
  if (k < 1 || static_cast<std::size_t>(k) > means_.size()) {
    throw StructuralError(fmt::format("arm {} out of range 1..{}", k, means_.size()));
  }
  return means_[static_cast<std::size_t>(k - 1)];
}

int BernoulliBandit::pull(Arm k, RandomStream& rng) const {
  return rng.bernoulli(mean(k)) ? 1 : 0;
}

Arm BernoulliBandit::best_arm() const {
  const auto it = std::max_element(means_.begin(), means_.end());
  return static_cast<Arm>(it - means_.begin()) + 1;
}

BernoulliBandit sample_bandit(std::size_t arms, RandomStream& rng) {
  const double alpha = rng.uniform();
  return sample_bandit_with_alpha(arms, alpha, rng);
}

BernoulliBandit sample_bandit_with_alpha(std::size_t arms, double alpha, RandomStream& rng) {
  if (arms == 0) throw StructuralError("bandit needs at least one arm");
  std::vector<double> means(arms);
  for (auto& mu : means) mu = alpha * rng.uniform();
  return BernoulliBandit(std::move(means));
}

std::optional<std::string> genericity_violation(const BernoulliBandit& bandit) {
  if (bandit.best_mean() >= 1.0) return "best mean must be < 1";
  std::vector<double> sorted(bandit.means().begin(), bandit.means().end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    return "means must be pairwise distinct";
  }
  if (bandit.arms() == 2 && sorted.front() <= 0.0) {
    return "two-armed bandit needs both means > 0";
  }
  return std::nullopt;
}

Permutation::Permutation(std::vector<Arm> mapping) : mapping_(std::move(mapping)) {
  std::vector<bool> seen(mapping_.size(), false);
  for (Arm k : mapping_) {
    if (k < 1 || static_cast<std::size_t>(k) > mapping_.size() || seen[k - 1]) {
      throw StructuralError("permutation is not a bijection on 1..K");
    }
    seen[k - 1] = true;
  }
}

Permutation Permutation::identity(std::size_t size) {
  std::vector<Arm> mapping(size);
  std::iota(mapping.begin(), mapping.end(), 1);
  return Permutation(std::move(mapping));
}

Arm Permutation::operator()(Arm k) const {
  if (k < 1 || static_cast<std::size_t>(k) > mapping_.size()) {
    throw StructuralError(fmt::format("permutation applied to arm {} of {}", k, mapping_.size()));
  }
  return mapping_[static_cast<std::size_t>(k - 1)];
}

Permutation Permutation::inverse() const {
  std::vector<Arm> inv(mapping_.size());
  for (std::size_t i = 0; i < mapping_.size(); ++i) {
    inv[static_cast<std::size_t>(mapping_[i] - 1)] = static_cast<Arm>(i) + 1;
  }
  return Permutation(std::move(inv));
}

BernoulliBandit permute(const BernoulliBandit& bandit, const Permutation& rho) {
  if (rho.size() != bandit.arms()) {
    throw StructuralError(
        fmt::format("permutation of size {} applied to {}-armed bandit", rho.size(), bandit.arms()));
  }
  std::vector<double> out(bandit.arms());
  for (std::size_t k = 1; k <= bandit.arms(); ++k) {
    out[static_cast<std::size_t>(rho(static_cast<Arm>(k)) - 1)] = bandit.mean(static_cast<Arm>(k));
  }
  return BernoulliBandit(std::move(out));
}

std::vector<Permutation> all_permutations(std::size_t size) {
  std::vector<Arm> mapping(size);
  std::iota(mapping.begin(), mapping.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(mapping);
  } while (std::next_permutation(mapping.begin(), mapping.end()));
  return out;
}

}  // namespace pfab

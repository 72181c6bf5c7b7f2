#include "pfab/harness/nonoptimal.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "pfab/errors.hpp"
#include "pfab/harness/experiment.hpp"

namespace pfab::harness {

namespace {

bool factorial_exceeds(std::size_t n, std::size_t limit) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    f *= i;
    if (f > limit) return true;
  }
  return false;
}

std::vector<Permutation> sampled_permutations(std::size_t size, std::size_t count, std::uint64_t seed) {
  SeededStream rng(seed);
  std::vector<Permutation> out;
  std::vector<Arm> mapping(size);
  for (std::size_t c = 0; c < count; ++c) {
    std::iota(mapping.begin(), mapping.end(), 1);
    for (std::size_t i = size - 1; i > 0; --i) std::swap(mapping[i], mapping[rng.index(i + 1)]);
    out.emplace_back(mapping);
  }
  return out;
}

}  // namespace

NonoptimalityReport nonoptimality_demo(const Pfa& pfa, const BernoulliBandit& bandit,
                                       std::vector<std::size_t> horizons, std::size_t reps,
                                       std::uint64_t seed) {
  if (const auto violation = genericity_violation(bandit)) {
    throw ValidationError(fmt::format("bandit is not generic: {}", *violation));
  }
  if (horizons.empty()) throw ValidationError("horizons: at least one horizon required");
  if (reps == 0) throw ValidationError("reps: must be >= 1");
  std::sort(horizons.begin(), horizons.end());
  horizons.erase(std::unique(horizons.begin(), horizons.end()), horizons.end());
  if (horizons.front() == 0) throw ValidationError("horizons: must be >= 1");

  NonoptimalityReport report;
  report.horizons = horizons;
  report.exhaustive = !factorial_exceeds(bandit.arms(), kMaxDemoPermutations);
  const auto permutations = report.exhaustive
                                ? all_permutations(bandit.arms())
                                : sampled_permutations(bandit.arms(), kMaxDemoPermutations, seed);
  const auto horizon = horizons.back();

  for (const auto& rho : permutations) {
    const auto permuted = permute(bandit, rho);
    std::vector<std::vector<double>> areg(horizons.size(), std::vector<double>(reps));
    parallel_for(reps, 0, [&](std::size_t rep) {
      SeededStream rng(replication_seed(seed, rep));
      const auto trace = run(pfa, permuted, horizon, rng);
      double regret = 0.0;
      std::size_t h = 0;
      for (std::size_t t = 0; t < horizon; ++t) {
        regret += permuted.best_mean() - permuted.mean(trace.actions[t]);
        if (t + 1 == horizons[h]) {
          areg[h][rep] = regret / static_cast<double>(horizons[h]);
          ++h;
        }
      }
    });
    PermutationCurve curve{rho, permuted, {}};
    for (const auto& column : areg) curve.average_regret.push_back(mean_and_error(column));
    report.curves.push_back(std::move(curve));
  }

  for (std::size_t i = 1; i < report.curves.size(); ++i) {
    if (report.curves[i].average_regret.back().mean > report.curves[report.worst].average_regret.back().mean) {
      report.worst = i;
    }
  }
  const auto& worst = report.worst_curve().average_regret;
  if (horizons.size() == 1) {
    report.plateau = worst.back().mean;
  } else {
    const auto n = horizons.size();
    const double last = worst[n - 1].mean * static_cast<double>(horizons[n - 1]);
    const double prev = worst[n - 2].mean * static_cast<double>(horizons[n - 2]);
    report.plateau = (last - prev) / static_cast<double>(horizons[n - 1] - horizons[n - 2]);
  }
  return report;
}

}  // namespace pfab::harness

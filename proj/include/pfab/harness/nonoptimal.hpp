#pragma once

#include <cstdint>
#include <vector>

#include "pfab/metrics.hpp"
#include "pfab/pfa.hpp"

namespace pfab::harness {

inline constexpr std::size_t kMaxDemoPermutations = 120;

struct PermutationCurve {
  Permutation rho;
  BernoulliBandit bandit;                     // permute(original, rho)
  std::vector<MeanAndError> average_regret;  // one per horizon
};

struct NonoptimalityReport {
  std::vector<std::size_t> horizons;  // ascending
  bool exhaustive = false;            // every permutation was checked
  std::vector<PermutationCurve> curves;
  std::size_t worst = 0;  // index into curves: largest AReg at the last horizon
  // Slope of the worst curve's cumulative regret between the last two
  // horizons (its AReg when only one horizon is given).
  double plateau = 0.0;

  const PermutationCurve& worst_curve() const { return curves[worst]; }
};

// Runs the PFA on every permutation of the bandit (or 120 seeded random
// ones when K! > 120) and estimates AReg at each horizon from `reps`
// replications. Throws ValidationError naming the genericity clause the
// bandit violates.
NonoptimalityReport nonoptimality_demo(const Pfa& pfa, const BernoulliBandit& bandit,
                                       std::vector<std::size_t> horizons, std::size_t reps,
                                       std::uint64_t seed);

}  // namespace pfab::harness

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pfab/agent.hpp"
#include "pfab/bandit.hpp"

namespace pfab {

// N * mu* - sum_{t<=N} mu_{a_t}, over the first `steps` actions.
double pseudo_regret(std::span<const Arm> actions, const BernoulliBandit& bandit, std::size_t steps);
double average_regret(std::span<const Arm> actions, const BernoulliBandit& bandit, std::size_t steps);

// mu* - mu of the arm the agent would exploit now, averaged over its
// exploit distribution.
double final_gap(const Agent& agent, const BernoulliBandit& bandit);

// Per-step record of one replication. Pseudo-regret increments use arm
// means; realized rewards are kept for diagnostics.
struct RegretTrace {
  std::vector<Arm> arms;
  std::vector<double> increments;
  std::vector<double> cumulative;
  std::vector<int> rewards;

  static RegretTrace record(std::span<const Arm> actions, std::span<const int> rewards,
                            const BernoulliBandit& bandit);

  std::size_t horizon() const { return arms.size(); }
  // N * mu* - realized reward total.
  double realized_regret(const BernoulliBandit& bandit) const;
};

struct MeanAndError {
  double mean = 0.0;
  double std_error = 0.0;
};

// Sample standard deviation over sqrt(n); zero for n == 1. Throws on empty input.
MeanAndError mean_and_error(std::span<const double> values);

struct AggregateCurve {
  std::vector<std::size_t> steps;  // 1-based step numbers
  std::vector<double> mean;
  std::vector<double> std_error;
  std::size_t replications = 0;
};

// Pointwise mean and standard error of cumulative pseudo-regret at steps
// stride, 2*stride, ..., always including the horizon.
AggregateCurve aggregate(std::span<const RegretTrace> traces, std::size_t stride = 1);

// Same, over pre-sampled curves: samples[r][i] is replication r's
// cumulative regret at steps[i].
AggregateCurve aggregate_samples(std::vector<std::size_t> steps,
                                 std::span<const std::vector<double>> samples);

// The step grid used by aggregate(): multiples of stride plus the horizon.
std::vector<std::size_t> sample_grid(std::size_t horizon, std::size_t stride);

}  // namespace pfab

#include "pfab/metrics.hpp"

#include <cmath>

#include <fmt/format.h>

#include "pfab/errors.hpp"

namespace pfab {

double pseudo_regret(std::span<const Arm> actions, const BernoulliBandit& bandit, std::size_t steps) {
  if (steps > actions.size()) {
    throw StructuralError(fmt::format("pseudo_regret over {} steps of a {}-step sequence", steps, actions.size()));
  }
  double regret = 0.0;
  for (std::size_t t = 0; t < steps; ++t) regret += bandit.best_mean() - bandit.mean(actions[t]);
  return regret;
}

double average_regret(std::span<const Arm> actions, const BernoulliBandit& bandit, std::size_t steps) {
  if (steps == 0) throw StructuralError("average regret over zero steps");
  return pseudo_regret(actions, bandit, steps) / static_cast<double>(steps);
}

double final_gap(const Agent& agent, const BernoulliBandit& bandit) {
  double gap = 0.0;
  for (const auto& w : agent.exploit_distribution()) gap += w.probability * (bandit.best_mean() - bandit.mean(w.value));
  return gap;
}

RegretTrace RegretTrace::record(std::span<const Arm> actions, std::span<const int> rewards,
                                const BernoulliBandit& bandit) {
  if (actions.size() != rewards.size()) throw StructuralError("actions and rewards differ in length");
  RegretTrace trace;
  trace.arms.assign(actions.begin(), actions.end());
  trace.rewards.assign(rewards.begin(), rewards.end());
  trace.increments.reserve(actions.size());
  trace.cumulative.reserve(actions.size());
  double total = 0.0;
  for (Arm a : actions) {
    const double inc = bandit.best_mean() - bandit.mean(a);
    total += inc;
    trace.increments.push_back(inc);
    trace.cumulative.push_back(total);
  }
  return trace;
}

double RegretTrace::realized_regret(const BernoulliBandit& bandit) const {
  double reward = 0.0;
  for (int r : rewards) reward += r;
  return static_cast<double>(horizon()) * bandit.best_mean() - reward;
}

MeanAndError mean_and_error(std::span<const double> values) {
  if (values.empty()) throw StructuralError("mean of an empty set");
  const auto n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  if (values.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0)) / std::sqrt(n)};
}

std::vector<std::size_t> sample_grid(std::size_t horizon, std::size_t stride) {
  if (stride == 0) throw StructuralError("sample stride must be >= 1");
  std::vector<std::size_t> grid;
  for (std::size_t s = stride; s <= horizon; s += stride) grid.push_back(s);
  if (horizon > 0 && (grid.empty() || grid.back() != horizon)) grid.push_back(horizon);
  return grid;
}

AggregateCurve aggregate_samples(std::vector<std::size_t> steps, std::span<const std::vector<double>> samples) {
  if (samples.empty()) throw StructuralError("aggregate over an empty set of traces");
  for (const auto& s : samples) {
    if (s.size() != steps.size()) throw StructuralError("traces do not share a horizon");
  }
  AggregateCurve curve;
  curve.replications = samples.size();
  curve.mean.reserve(steps.size());
  curve.std_error.reserve(steps.size());
  std::vector<double> column(samples.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    for (std::size_t r = 0; r < samples.size(); ++r) column[r] = samples[r][i];
    const auto stats = mean_and_error(column);
    curve.mean.push_back(stats.mean);
    curve.std_error.push_back(stats.std_error);
  }
  curve.steps = std::move(steps);
  return curve;
}

AggregateCurve aggregate(std::span<const RegretTrace> traces, std::size_t stride) {
  if (traces.empty()) throw StructuralError("aggregate over an empty set of traces");
  const auto horizon = traces.front().horizon();
  auto grid = sample_grid(horizon, stride);
  std::vector<std::vector<double>> samples;
  samples.reserve(traces.size());
  for (const auto& t : traces) {
    if (t.horizon() != horizon) throw StructuralError("traces do not share a horizon");
    std::vector<double> row;
    row.reserve(grid.size());
    for (auto s : grid) row.push_back(t.cumulative[s - 1]);
    samples.push_back(std::move(row));
  }
  return aggregate_samples(std::move(grid), samples);
}

}  // namespace pfab

#include "pfab/harness/experiment.hpp"

#include <fstream>

#include <fmt/format.h>
#include <json.hpp>

#include "pfab/errors.hpp"

namespace pfab::harness {

ReplicationOutcome run_replication(const ExperimentConfig& config, std::size_t rep,
                                   std::span<const std::size_t> grid) {
  SeededStream rng(replication_seed(config.seed, rep));
  const BernoulliBandit bandit =
      config.means ? BernoulliBandit(*config.means) : sample_bandit(static_cast<std::size_t>(config.arms), rng);
  auto agent = make_agent(config.protocol, config.arms);

  ReplicationOutcome out;
  out.cumulative.reserve(grid.size());
  const double best = bandit.best_mean();
  double regret = 0.0;
  double reward_total = 0.0;
  std::size_t next_sample = 0;
  for (std::size_t t = 1; t <= config.horizon; ++t) {
    const Arm a = agent->choose(rng);
    const int r = bandit.pull(a, rng);
    agent->observe(a, r, rng);
    regret += best - bandit.mean(a);
    reward_total += r;
    if (next_sample < grid.size() && grid[next_sample] == t) {
      out.cumulative.push_back(regret);
      ++next_sample;
    }
  }
  out.final_gap = final_gap(*agent, bandit);
  out.realized_regret = static_cast<double>(config.horizon) * best - reward_total;
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  const auto grid = sample_grid(config.horizon, config.effective_stride());
  std::vector<ReplicationOutcome> outcomes(config.reps);
  parallel_for(config.reps, threads, [&](std::size_t rep) { outcomes[rep] = run_replication(config, rep, grid); });

  ExperimentResult result;
  result.config = config;
  std::vector<std::vector<double>> samples;
  std::vector<double> realized;
  samples.reserve(outcomes.size());
  for (auto& o : outcomes) {
    result.gaps.push_back(o.final_gap);
    realized.push_back(o.realized_regret);
    samples.push_back(std::move(o.cumulative));
  }
  result.curve = aggregate_samples(grid, samples);
  result.gap = mean_and_error(result.gaps);
  result.realized_regret = mean_and_error(realized);
  return result;
}

std::string curve_csv(const AggregateCurve& curve) {
  std::string out(kCurveHeader);
  out += '\n';
  for (std::size_t i = 0; i < curve.steps.size(); ++i) {
    out += fmt::format("{},{},{},{}\n", curve.steps[i], curve.mean[i], curve.std_error[i], curve.replications);
  }
  return out;
}

std::string summary_csv(std::span<const ExperimentResult> results) {
  std::string out(kSummaryHeader);
  out += '\n';
  for (const auto& r : results) {
    out += fmt::format("{},{},{},{},{},{},{}\n", protocol_name(r.config.protocol.kind), r.config.protocol.params(),
                       r.gap.mean, r.gap.std_error, r.curve.mean.back(), r.curve.replications, r.config.seed);
  }
  return out;
}

std::string metadata_json(const ExperimentConfig& config) {
  nlohmann::ordered_json meta;
  meta["protocol"] = std::string(protocol_name(config.protocol.kind));
  meta["params"] = config.protocol.params();
  meta["arms"] = config.arms;
  meta["horizon"] = config.horizon;
  meta["reps"] = config.reps;
  meta["seed"] = config.seed;
  meta["seed_rule"] = "replication r uses seed + r";
  meta["bandit"] = config.means ? nlohmann::ordered_json(*config.means) : nlohmann::ordered_json("uniform-alpha");
  meta["stride"] = config.effective_stride();
  meta["rng"] = std::string(SeededStream::kAlgorithm);
  return meta.dump(1) + "\n";
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  out << text;
  if (!out) throw std::runtime_error(fmt::format("error writing {}", path.string()));
}

void write_results(const ExperimentResult& result) {
  const auto& dir = result.config.out;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error(fmt::format("cannot create output directory {}: {}", dir.string(), ec.message()));
  write_text(dir / "curve.csv", curve_csv(result.curve));
  write_text(dir / "summary.csv", summary_csv(std::span(&result, 1)));
  write_text(dir / "meta.json", metadata_json(result.config));
}

}  // namespace pfab::harness

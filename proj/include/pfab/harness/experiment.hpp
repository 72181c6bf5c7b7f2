#pragma once

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "pfab/harness/config.hpp"
#include "pfab/metrics.hpp"

namespace pfab::harness {

inline constexpr std::string_view kCurveHeader = "step,mean_cum_regret,stderr,reps";
inline constexpr std::string_view kSummaryHeader =
    "protocol,params,mean_final_gap,gap_stderr,mean_cum_regret_at_horizon,reps,seed";

struct ReplicationOutcome {
  std::vector<double> cumulative;  // pseudo-regret at each grid step
  double final_gap = 0.0;
  double realized_regret = 0.0;
};

// Replication `rep` draws everything from SeededStream(seed + rep): first the
// bandit (when generated), then the agent's and the pulls' randomness.
ReplicationOutcome run_replication(const ExperimentConfig& config, std::size_t rep,
                                   std::span<const std::size_t> grid);

struct ExperimentResult {
  ExperimentConfig config;
  AggregateCurve curve;
  MeanAndError gap;
  std::vector<double> gaps;  // per replication
  MeanAndError realized_regret;
};

// threads == 0 uses the hardware concurrency.
ExperimentResult run_experiment(const ExperimentConfig& config, unsigned threads = 0);

std::string curve_csv(const AggregateCurve& curve);
std::string summary_csv(std::span<const ExperimentResult> results);
std::string metadata_json(const ExperimentConfig& config);

// Writes curve.csv, summary.csv and meta.json into config.out.
void write_results(const ExperimentResult& result);

void write_text(const std::filesystem::path& path, std::string_view text);

// Runs body(i) for i in [0, n) on a worker pool. Results must be written to
// per-index slots so the merge order never depends on scheduling.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n && !failed; i = next++) {
        try {
          body(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace pfab::harness

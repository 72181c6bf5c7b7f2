#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

#include "pfab/harness/experiment.hpp"

namespace pfab::harness {

enum class Figure { RankSweep, ThresholdSweep, EliminationSweep, Compare };

// "m", "thresholds", "elimination", "compare".
Figure parse_figure(std::string_view name);
std::string_view figure_name(Figure figure);

struct SweepOptions {
  std::size_t reps = 100;
  std::size_t horizon = 50'000;
  std::uint64_t seed = 1;
  int arms = 50;
  unsigned threads = 0;

  // 20 replications of 10,000 steps.
  static SweepOptions quick();
};

// Protocol settings making up each figure:
//   m           aspiration, m in {50,100,200,500}, (M1,M2) = (20,3)
//   thresholds  aspiration, m = 100, (M1,M2) in {(10,2),(20,3),(30,4),(40,5)}
//   elimination (N,M) in {(1000,10),(1000,20),(1000,100),(100,10),(100,20)}
//   compare     elimination(M=20,N=1000), aspiration2(100,20,3,5,1),
//               egreedy(N=100, epsilon=0.1), thompson
std::vector<ProtocolSpec> figure_settings(Figure figure);

// Every setting runs on the same seeds, so replication r faces the same
// generated bandit across settings.
std::vector<ExperimentResult> figure_sweep(Figure figure, const SweepOptions& options);

// One curve_<protocol>_<params>.csv per setting plus summary.csv.
void write_sweep(const std::vector<ExperimentResult>& results, const std::filesystem::path& dir);
std::string curve_file_name(const ProtocolSpec& spec);

}  // namespace pfab::harness

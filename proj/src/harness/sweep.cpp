#include "pfab/harness/sweep.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "pfab/errors.hpp"

namespace pfab::harness {

Figure parse_figure(std::string_view name) {
  for (auto f : {Figure::RankSweep, Figure::ThresholdSweep, Figure::EliminationSweep, Figure::Compare}) {
    if (figure_name(f) == name) return f;
  }
  throw ValidationError(fmt::format("figure: unknown figure '{}'", name));
}

std::string_view figure_name(Figure figure) {
  switch (figure) {
    case Figure::RankSweep: return "m";
    case Figure::ThresholdSweep: return "thresholds";
    case Figure::EliminationSweep: return "elimination";
    case Figure::Compare: return "compare";
  }
  return "?";
}

SweepOptions SweepOptions::quick() {
  SweepOptions o;
  o.reps = 20;
  o.horizon = 10'000;
  return o;
}

std::vector<ProtocolSpec> figure_settings(Figure figure) {
  std::vector<ProtocolSpec> out;
  switch (figure) {
    case Figure::RankSweep:
      for (int m : {50, 100, 200, 500}) {
        ProtocolSpec s;
        s.kind = ProtocolKind::Aspiration;
        s.m = m;
        out.push_back(s);
      }
      break;
    case Figure::ThresholdSweep:
      for (auto [m1, m2] : {std::pair{10, 2}, {20, 3}, {30, 4}, {40, 5}}) {
        ProtocolSpec s;
        s.kind = ProtocolKind::Aspiration;
        s.m1 = m1;
        s.m2 = m2;
        out.push_back(s);
      }
      break;
    case Figure::EliminationSweep:
      for (auto [n, m] : {std::pair{1000, 10}, {1000, 20}, {1000, 100}, {100, 10}, {100, 20}}) {
        ProtocolSpec s;
        s.kind = ProtocolKind::Elimination;
        s.N = n;
        s.M = m;
        out.push_back(s);
      }
      break;
    case Figure::Compare: {
      ProtocolSpec elimination;
      elimination.kind = ProtocolKind::Elimination;
      elimination.M = 20;
      elimination.N = 1000;
      ProtocolSpec aspiration;
      aspiration.kind = ProtocolKind::Aspiration2;
      ProtocolSpec egreedy;
      egreedy.kind = ProtocolKind::EpsilonGreedy;
      egreedy.N = 100;
      egreedy.epsilon = 0.1;
      ProtocolSpec thompson;
      thompson.kind = ProtocolKind::Thompson;
      out = {elimination, aspiration, egreedy, thompson};
      break;
    }
  }
  return out;
}

std::vector<ExperimentResult> figure_sweep(Figure figure, const SweepOptions& options) {
  std::vector<ExperimentResult> results;
  for (const auto& spec : figure_settings(figure)) {
    ExperimentConfig config;
    config.protocol = spec;
    config.arms = options.arms;
    config.horizon = options.horizon;
    config.reps = options.reps;
    config.seed = options.seed;
    results.push_back(run_experiment(config, options.threads));
  }
  return results;
}

std::string curve_file_name(const ProtocolSpec& spec) {
  auto params = spec.params();
  std::replace(params.begin(), params.end(), ';', '_');
  std::replace(params.begin(), params.end(), '=', '-');
  return params.empty() ? fmt::format("curve_{}.csv", protocol_name(spec.kind))
                        : fmt::format("curve_{}_{}.csv", protocol_name(spec.kind), params);
}

void write_sweep(const std::vector<ExperimentResult>& results, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error(fmt::format("cannot create output directory {}: {}", dir.string(), ec.message()));
  for (const auto& r : results) write_text(dir / curve_file_name(r.config.protocol), curve_csv(r.curve));
  write_text(dir / "summary.csv", summary_csv(results));
}

}  // namespace pfab::harness

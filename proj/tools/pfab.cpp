// Command-line front end: simulate, sweep, states, compile, demo-nonoptimal, plot.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "pfab/compile.hpp"
#include "pfab/errors.hpp"
#include "pfab/harness/config.hpp"
#include "pfab/harness/experiment.hpp"
#include "pfab/harness/nonoptimal.hpp"
#include "pfab/harness/plot.hpp"
#include "pfab/harness/state_report.hpp"
#include "pfab/harness/sweep.hpp"
#include "pfab/pfa_document.hpp"

namespace {

using namespace pfab;
using namespace pfab::harness;

struct ProtocolOptions {
  std::string protocol = "aspiration";
  int arms = 50;
  ProtocolSpec spec;
  int n = 0;

  void add_to(CLI::App& app) {
    app.add_option("--protocol", protocol, "aspiration|aspiration2|elimination|ete|egreedy|thompson");
    app.add_option("--arms", arms, "number of arms K");
    app.add_option("--m", spec.m, "aspiration ranks");
    app.add_option("--m1", spec.m1, "aspiration win threshold");
    app.add_option("--m2", spec.m2, "aspiration lose threshold (magnitude)");
    app.add_option("--m1c", spec.m1c, "coarse-phase win threshold");
    app.add_option("--m2c", spec.m2c, "coarse-phase lose threshold");
    app.add_option("--M", spec.M, "elimination counter threshold");
    app.add_option("--N", n, "elimination stop scale / pulls per arm");
    app.add_option("--epsilon", spec.epsilon, "egreedy exploration rate");
  }

  ProtocolSpec resolve() const {
    auto s = spec;
    s.kind = parse_protocol(protocol);
    if (n > 0) s.N = n;
    return s;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot read {}", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::size_t> to_horizons(const std::vector<double>& values) {
  std::vector<std::size_t> out;
  for (double v : values) {
    if (v < 1 || v != static_cast<double>(static_cast<std::size_t>(v))) {
      throw ValidationError(fmt::format("horizons: {} is not a positive integer", v));
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

void print_summary(const std::vector<ExperimentResult>& results) {
  for (const auto& r : results) {
    fmt::print("{:<12} {:<40} gap {:.5f} +- {:.5f}  regret@{} {:.2f} +- {:.2f}\n",
               protocol_name(r.config.protocol.kind), r.config.protocol.params(), r.gap.mean, r.gap.std_error,
               r.curve.steps.back(), r.curve.mean.back(), r.curve.std_error.back());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-state bandit protocols and simulation harness"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = hardware concurrency)");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "run one experiment");
  std::string config_path;
  ProtocolOptions sim_protocol;
  std::size_t horizon = 50'000, reps = 100, stride = 0;
  std::uint64_t seed = 1;
  std::string out = "out", means;
  simulate->add_option("--config", config_path, "flat key = value config file");
  sim_protocol.add_to(*simulate);
  simulate->add_option("--horizon", horizon, "steps per replication");
  simulate->add_option("--reps", reps, "replications");
  simulate->add_option("--seed", seed, "base seed; replication r uses seed + r");
  simulate->add_option("--stride", stride, "steps between curve samples (default horizon/500)");
  simulate->add_option("--means", means, "comma-separated arm means (default: generated)");
  simulate->add_option("--out", out, "output directory");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "reproduce a parameter sweep");
  std::string figure;
  std::string sweep_out = "sweep";
  bool quick = false;
  SweepOptions sweep_options;
  sweep->add_option("--figure", figure, "m|thresholds|elimination|compare")->required();
  sweep->add_option("--out", sweep_out, "output directory")->required();
  sweep->add_flag("--quick", quick, "20 replications of 10,000 steps");
  sweep->add_option("--reps", sweep_options.reps, "replications per setting");
  sweep->add_option("--horizon", sweep_options.horizon, "steps per replication");
  sweep->add_option("--seed", sweep_options.seed, "base seed");

  // states
  auto* states = app.add_subcommand("states", "count reachable states of a compiled protocol");
  ProtocolOptions state_protocol;
  state_protocol.add_to(*states);

  // compile
  auto* compile = app.add_subcommand("compile", "emit the PFA document of a finite-state protocol");
  ProtocolOptions compile_protocol;
  std::string compile_out;
  compile_protocol.add_to(*compile);
  compile->add_option("--out", compile_out, "output file")->required();

  // demo-nonoptimal
  auto* demo = app.add_subcommand("demo-nonoptimal", "worst-permutation average regret of a PFA");
  std::string pfa_path, demo_means, demo_horizons;
  std::size_t demo_reps = 1000;
  std::uint64_t demo_seed = 1;
  demo->add_option("--pfa", pfa_path, "PFA document")->required();
  demo->add_option("--means", demo_means, "comma-separated arm means")->required();
  demo->add_option("--horizons", demo_horizons, "comma-separated horizons")->required();
  demo->add_option("--reps", demo_reps, "replications per permutation");
  demo->add_option("--seed", demo_seed, "base seed");

  // plot
  auto* plot = app.add_subcommand("plot", "render curve CSVs of a directory to SVG");
  std::string plot_in, plot_out, plot_title = "Cumulative regret";
  plot->add_option("--in", plot_in, "directory with curve*.csv")->required();
  plot->add_option("--out", plot_out, "SVG file")->required();
  plot->add_option("--title", plot_title, "chart title");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      ExperimentConfig config;
      if (!config_path.empty()) {
        config = load_config(config_path);
      } else {
        config.protocol = sim_protocol.resolve();
        config.arms = sim_protocol.arms;
        config.horizon = horizon;
        config.reps = reps;
        config.seed = seed;
        config.stride = stride;
        config.out = out;
        if (!means.empty()) {
          config.means = parse_number_list(means);
          if (simulate->count("--arms") == 0) config.arms = static_cast<int>(config.means->size());
        }
      }
      const auto result = run_experiment(config, threads);
      write_results(result);
      print_summary({result});
    } else if (*sweep) {
      auto options = quick ? SweepOptions::quick() : sweep_options;
      if (quick) options.seed = sweep_options.seed;
      options.threads = threads;
      const auto results = figure_sweep(parse_figure(figure), options);
      write_sweep(results, sweep_out);
      print_summary(results);
    } else if (*states) {
      const auto row = state_count_report(state_protocol.resolve(), state_protocol.arms);
      std::cout << format_state_table(std::span(&row, 1));
    } else if (*compile) {
      const auto spec = compile_protocol.resolve();
      const int K = compile_protocol.arms;
      Pfa pfa = [&] {
        switch (spec.kind) {
          case ProtocolKind::Aspiration: return compile_aspiration({K, spec.m, spec.m1, spec.m2});
          case ProtocolKind::Elimination: return compile_elimination({K, spec.M, spec.n_or_default()});
          case ProtocolKind::ExploreThenExploit: return compile_explore_then_exploit(K, spec.n_or_default());
          default:
            throw ValidationError(fmt::format("protocol: {} has no finite-state compilation",
                                              protocol_name(spec.kind)));
        }
      }();
      write_text(compile_out, serialize(pfa));
      fmt::print("{} states written to {}\n", pfa.state_count(), compile_out);
    } else if (*demo) {
      const Pfa pfa = deserialize(read_file(pfa_path));
      const BernoulliBandit bandit(parse_number_list(demo_means));
      const auto report =
          nonoptimality_demo(pfa, bandit, to_horizons(parse_number_list(demo_horizons)), demo_reps, demo_seed);
      fmt::print("permutations checked: {}{}\n", report.curves.size(), report.exhaustive ? " (all)" : " (sampled)");
      const auto& worst = report.worst_curve();
      fmt::print("worst permutation: means [{}]\n", fmt::join(worst.bandit.means(), ", "));
      fmt::print("{:>10} {:>12} {:>12}\n", "horizon", "AReg", "stderr");
      for (std::size_t i = 0; i < report.horizons.size(); ++i) {
        fmt::print("{:>10} {:>12.6f} {:>12.6f}\n", report.horizons[i], worst.average_regret[i].mean,
                   worst.average_regret[i].std_error);
      }
      fmt::print("plateau estimate: {:.6f}\n", report.plateau);
    } else if (*plot) {
      std::vector<LabelledCurve> curves;
      std::vector<std::filesystem::path> files;
      for (const auto& entry : std::filesystem::directory_iterator(plot_in)) {
        const auto name = entry.path().filename().string();
        if (name.starts_with("curve") && entry.path().extension() == ".csv") files.push_back(entry.path());
      }
      std::sort(files.begin(), files.end());
      for (const auto& f : files) curves.emplace_back(f.stem().string(), read_curve_csv(f));
      write_text(plot_out, render_svg(curves, plot_title));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return EXIT_FAILURE;
  }
  return EXIT_SUCCESS;
}

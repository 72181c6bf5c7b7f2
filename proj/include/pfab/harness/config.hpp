#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pfab/agent.hpp"

namespace pfab::harness {

enum class ProtocolKind { Aspiration, Aspiration2, Elimination, ExploreThenExploit, EpsilonGreedy, Thompson };

std::string_view protocol_name(ProtocolKind kind);
// Accepts aspiration, aspiration2, elimination, ete, egreedy, thompson.
ProtocolKind parse_protocol(std::string_view name);

struct ProtocolSpec {
  ProtocolKind kind = ProtocolKind::Aspiration;
  int m = 100;
  int m1 = 20;
  int m2 = 3;
  int m1c = 5;
  int m2c = 1;
  int M = 20;
  std::optional<int> N;  // elimination: 1000; ete, egreedy: 100
  double epsilon = 0.1;

  int n_or_default() const;
  // "key=value;..." listing only the parameters the protocol uses.
  std::string params() const;
  bool finite_state() const;
};

std::unique_ptr<Agent> make_agent(const ProtocolSpec& spec, int arms);

struct ExperimentConfig {
  ProtocolSpec protocol;
  int arms = 50;
  std::size_t horizon = 50'000;
  std::size_t reps = 100;
  std::uint64_t seed = 1;
  std::optional<std::vector<double>> means;  // fixed instance; generated otherwise
  std::filesystem::path out = "out";
  std::size_t stride = 0;  // 0: horizon / 500, at least 1

  std::size_t effective_stride() const;
  // Throws ValidationError naming the offending field.
  void validate() const;
};

// Flat "key = value" lines; '#' starts a comment; unknown keys are errors.
// Keys: protocol arms horizon reps seed out stride generator means
//       m m1 m2 m1c m2c M N epsilon
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

std::vector<double> parse_number_list(std::string_view text);

}  // namespace pfab::harness

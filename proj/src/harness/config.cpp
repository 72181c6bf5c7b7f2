#include "pfab/harness/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "pfab/aspiration.hpp"
#include "pfab/baselines.hpp"
#include "pfab/elimination.hpp"
#include "pfab/errors.hpp"

namespace pfab::harness {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError(fmt::format("{}: '{}' is not a valid number", key, text));
  }
  return value;
}

}  // namespace

std::string_view protocol_name(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::Aspiration: return "aspiration";
    case ProtocolKind::Aspiration2: return "aspiration2";
    case ProtocolKind::Elimination: return "elimination";
    case ProtocolKind::ExploreThenExploit: return "ete";
    case ProtocolKind::EpsilonGreedy: return "egreedy";
    case ProtocolKind::Thompson: return "thompson";
  }
  return "?";
}

ProtocolKind parse_protocol(std::string_view name) {
  for (auto kind : {ProtocolKind::Aspiration, ProtocolKind::Aspiration2, ProtocolKind::Elimination,
                    ProtocolKind::ExploreThenExploit, ProtocolKind::EpsilonGreedy, ProtocolKind::Thompson}) {
    if (protocol_name(kind) == name) return kind;
  }
  throw ValidationError(fmt::format("protocol: unknown protocol '{}'", name));
}

int ProtocolSpec::n_or_default() const {
  return N.value_or(kind == ProtocolKind::Elimination ? 1000 : 100);
}

std::string ProtocolSpec::params() const {
  switch (kind) {
    case ProtocolKind::Aspiration: return fmt::format("m={};m1={};m2={}", m, m1, m2);
    case ProtocolKind::Aspiration2: return fmt::format("m={};m1={};m2={};m1c={};m2c={}", m, m1, m2, m1c, m2c);
    case ProtocolKind::Elimination: return fmt::format("M={};N={}", M, n_or_default());
    case ProtocolKind::ExploreThenExploit: return fmt::format("N={}", n_or_default());
    case ProtocolKind::EpsilonGreedy: return fmt::format("N={};epsilon={}", n_or_default(), epsilon);
    case ProtocolKind::Thompson: return "";
  }
  return "";
}

bool ProtocolSpec::finite_state() const {
  return kind != ProtocolKind::EpsilonGreedy && kind != ProtocolKind::Thompson;
}

std::unique_ptr<Agent> make_agent(const ProtocolSpec& spec, int arms) {
  switch (spec.kind) {
    case ProtocolKind::Aspiration:
      return std::make_unique<AspirationAgent>(AspirationParams{arms, spec.m, spec.m1, spec.m2});
    case ProtocolKind::Aspiration2:
      return std::make_unique<TwoPhaseAspirationAgent>(
          TwoPhaseParams{AspirationParams{arms, spec.m, spec.m1, spec.m2}, spec.m1c, spec.m2c});
    case ProtocolKind::Elimination:
      return std::make_unique<EliminationAgent>(EliminationParams{arms, spec.M, spec.n_or_default()});
    case ProtocolKind::ExploreThenExploit:
      return std::make_unique<ExploreThenExploitAgent>(arms, spec.n_or_default());
    case ProtocolKind::EpsilonGreedy:
      return std::make_unique<EpsilonGreedyAgent>(arms, spec.n_or_default(), spec.epsilon);
    case ProtocolKind::Thompson:
      return std::make_unique<ThompsonAgent>(arms);
  }
  throw StructuralError("unknown protocol kind");
}

std::size_t ExperimentConfig::effective_stride() const {
  if (stride > 0) return stride;
  return std::max<std::size_t>(1, horizon / 500);
}

void ExperimentConfig::validate() const {
  if (arms < 1) throw ValidationError(fmt::format("arms: must be >= 1, got {}", arms));
  if (horizon < 1) throw ValidationError("horizon: must be >= 1");
  if (reps < 1) throw ValidationError("reps: must be >= 1");
  if (means) {
    if (means->size() != static_cast<std::size_t>(arms)) {
      throw ValidationError(fmt::format("means: {} values given for {} arms", means->size(), arms));
    }
    for (double mu : *means) {
      if (!(mu >= 0.0 && mu <= 1.0)) throw ValidationError(fmt::format("means: {} outside [0,1]", mu));
    }
  }
  const auto& p = protocol;
  const auto positive = [](const char* key, int v) {
    if (v < 1) throw ValidationError(fmt::format("{}: must be >= 1, got {}", key, v));
  };
  positive("m", p.m);
  positive("m1", p.m1);
  positive("m2", p.m2);
  positive("m1c", p.m1c);
  positive("m2c", p.m2c);
  positive("M", p.M);
  if (p.N) positive("N", *p.N);
  if (!(p.epsilon >= 0.0 && p.epsilon <= 1.0)) {
    throw ValidationError(fmt::format("epsilon: {} outside [0,1]", p.epsilon));
  }
  if (p.kind == ProtocolKind::Elimination && arms < 2) {
    throw ValidationError("arms: elimination needs at least 2 arms");
  }
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (item.empty()) throw ValidationError(fmt::format("empty entry in list '{}'", text));
    out.push_back(parse_number<double>("list", item));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig config;
  std::optional<int> arms;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto content = std::string_view(line);
    if (const auto hash = content.find('#'); hash != std::string_view::npos) content = content.substr(0, hash);
    content = trim(content);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(fmt::format("config line {}: expected 'key = value'", line_no));
    }
    const std::string key(trim(content.substr(0, eq)));
    const auto value = trim(content.substr(eq + 1));
    if (!seen.insert(key).second) throw ParseError(fmt::format("config line {}: duplicate key '{}'", line_no, key));

    auto& p = config.protocol;
    if (key == "protocol") p.kind = parse_protocol(value);
    else if (key == "arms") arms = parse_number<int>(key, value);
    else if (key == "horizon") config.horizon = parse_number<std::size_t>(key, value);
    else if (key == "reps") config.reps = parse_number<std::size_t>(key, value);
    else if (key == "seed") config.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "out") config.out = std::string(value);
    else if (key == "stride") config.stride = parse_number<std::size_t>(key, value);
    else if (key == "generator") {
      if (value != "uniform-alpha") throw ValidationError(fmt::format("generator: unknown generator '{}'", value));
    }
    else if (key == "means") config.means = parse_number_list(value);
    else if (key == "m") p.m = parse_number<int>(key, value);
    else if (key == "m1") p.m1 = parse_number<int>(key, value);
    else if (key == "m2") p.m2 = parse_number<int>(key, value);
    else if (key == "m1c") p.m1c = parse_number<int>(key, value);
    else if (key == "m2c") p.m2c = parse_number<int>(key, value);
    else if (key == "M") p.M = parse_number<int>(key, value);
    else if (key == "N") p.N = parse_number<int>(key, value);
    else if (key == "epsilon") p.epsilon = parse_number<double>(key, value);
    else throw ParseError(fmt::format("config line {}: unknown key '{}'", line_no, key));
  }
  if (seen.contains("generator") && config.means) {
    throw ValidationError("means: cannot be combined with generator");
  }
  if (arms) {
    config.arms = *arms;
  } else if (config.means) {
    config.arms = static_cast<int>(config.means->size());
  }
  config.validate();
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot read config {}", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace pfab::harness

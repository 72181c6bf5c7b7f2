#include "pfab/harness/state_report.hpp"

#include <fmt/format.h>

#include "pfab/compile.hpp"
#include "pfab/errors.hpp"

namespace pfab::harness {

StateCountRow state_count_report(const ProtocolSpec& spec, int arms) {
  StateCountRow row;
  row.protocol = std::string(protocol_name(spec.kind));
  row.params = fmt::format("K={}{}{}", arms, spec.params().empty() ? "" : ";", spec.params());
  switch (spec.kind) {
    case ProtocolKind::Aspiration: {
      const AspirationParams p{arms, spec.m, spec.m1, spec.m2};
      row.formula = aspiration_state_formula(p);
      row.compiled = reachable_state_count(compile_aspiration(p));
      row.note = "K*m*(M1+M2)";
      break;
    }
    case ProtocolKind::Elimination: {
      const EliminationParams p{arms, spec.M, spec.n_or_default()};
      row.formula = elimination_state_formula(p);
      row.compiled = reachable_state_count(compile_elimination(p));
      row.note = "C(K,2)*2*(2M+1)";
      break;
    }
    case ProtocolKind::ExploreThenExploit: {
      row.formula = explore_then_exploit_state_formula(arms, spec.n_or_default());
      row.note = "K + sum_t prod_k (plays_k(t)+1)";
      try {
        row.compiled = reachable_state_count(compile_explore_then_exploit(arms, spec.n_or_default()));
      } catch (const StructuralError&) {
        row.note += "; too large to compile";
      }
      break;
    }
    case ProtocolKind::Aspiration2:
      row.note = "two-phase variant is not compiled";
      break;
    case ProtocolKind::EpsilonGreedy:
    case ProtocolKind::Thompson:
      row.infinite = true;
      row.note = "tracks unbounded per-arm counts";
      break;
  }
  return row;
}

std::string format_state_table(std::span<const StateCountRow> rows) {
  std::string out = fmt::format("{:<12} {:<36} {:>14} {:>14}  {}\n", "protocol", "params", "compiled", "formula", "note");
  for (const auto& r : rows) {
    const auto show = [&](const std::optional<std::uint64_t>& v) {
      if (r.infinite) return std::string("infinite-state");
      return v ? fmt::format("{}", *v) : std::string("-");
    };
    out += fmt::format("{:<12} {:<36} {:>14} {:>14}  {}\n", r.protocol, r.params, show(r.compiled), show(r.formula),
                       r.note);
  }
  return out;
}

}  // namespace pfab::harness

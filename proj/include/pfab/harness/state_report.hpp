#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "pfab/harness/config.hpp"

namespace pfab::harness {

struct StateCountRow {
  std::string protocol;
  std::string params;
  bool infinite = false;
  std::optional<std::uint64_t> compiled;  // reachable states of the compiled PFA
  std::optional<std::uint64_t> formula;   // closed form; nullopt if it overflows
  std::string note;
};

// Compiles aspiration / elimination / ete and counts reachable states next
// to the closed form. egreedy and thompson report infinite-state; so does
// aspiration2, which has no compiler here. ete instances too large to
// compile keep only the formula.
StateCountRow state_count_report(const ProtocolSpec& spec, int arms);

std::string format_state_table(std::span<const StateCountRow> rows);

}  // namespace pfab::harness

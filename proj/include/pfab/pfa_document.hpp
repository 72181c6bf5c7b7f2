#pragma once

#include <string>
#include <string_view>

#include "pfab/pfa.hpp"

namespace pfab {

// JSON document with fields `outputs`, `inputs`, `start`, `states`,
// `action` and `delta`. Input symbols are written "arm:reward". Every
// transition is materialized.
std::string serialize(const Pfa& pfa);

// Throws ParseError naming the offending state on malformed documents or
// invalid distributions.
Pfa deserialize(std::string_view document);

std::string input_symbol(Observation o);

}  // namespace pfab

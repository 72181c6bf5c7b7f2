#pragma once

#include <stdexcept>
#include <string>

namespace pfab {

// Misuse of an in-process structure: out-of-range arm, unknown state,
// undefined transition, bad protocol parameters, call-order violations.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed PFA document or config text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input that violates a semantic requirement (config field
// ranges, genericity of a bandit, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pfab

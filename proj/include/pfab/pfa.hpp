#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pfab/bandit.hpp"
#include "pfab/distribution.hpp"
#include "pfab/rng.hpp"

namespace pfab {

using StateId = std::uint32_t;

// "Arm `arm` had reward `reward`".
struct Observation {
  Arm arm = 1;
  int reward = 0;

  friend bool operator==(const Observation&, const Observation&) = default;
};

// Probabilistic finite automaton with output. Immutable once built; share
// freely across threads. States are dense integer ids with a label side
// table. Distributions are stored sorted by value (the canonical order
// used for inverse-CDF sampling) with zero-probability entries removed.
class Pfa {
 public:
  std::size_t state_count() const { return labels_.size(); }
  StateId start() const { return start_; }

  // Output symbols (arms), ascending and distinct.
  std::span<const Arm> outputs() const { return outputs_; }

  const std::string& label(StateId q) const;
  std::optional<StateId> find(std::string_view label) const;

  std::span<const Weighted<Arm>> action(StateId q) const;

  bool has_transition(StateId q, Observation o) const;
  // Throws StructuralError when (q, o) has no transition.
  std::span<const Weighted<StateId>> delta(StateId q, Observation o) const;
  // Observations with a defined transition out of q, ascending.
  std::vector<Observation> defined_inputs(StateId q) const;

  friend bool operator==(const Pfa& a, const Pfa& b);

 private:
  friend class PfaBuilder;

  struct InputEntry {
    Observation input;
    std::uint32_t begin;
    std::uint32_t end;
  };

  void check_state(StateId q) const;

  std::vector<Arm> outputs_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, StateId> index_;
  StateId start_ = 0;
  std::vector<std::uint32_t> action_offsets_;
  std::vector<Weighted<Arm>> actions_;
  std::vector<std::uint32_t> input_offsets_;
  std::vector<InputEntry> inputs_;
  std::vector<Weighted<StateId>> successors_;
};

// Accumulates states and distributions, then validates and freezes them.
class PfaBuilder {
 public:
  explicit PfaBuilder(std::vector<Arm> outputs);

  StateId add_state(std::string label);
  void reserve(std::size_t states);
  void set_start(StateId q);
  void set_action(StateId q, std::vector<Weighted<Arm>> distribution);
  void set_transition(StateId q, Observation o, std::vector<Weighted<StateId>> distribution);

  // Validates: at least one state; every state has an action distribution;
  // every distribution is nonnegative and sums to 1 within tolerance; every
  // action in the support has both reward transitions defined.
  Pfa build() &&;

 private:
  struct PendingState {
    std::string label;
    std::vector<Weighted<Arm>> action;
    bool has_action = false;
    std::vector<std::pair<Observation, std::vector<Weighted<StateId>>>> transitions;
  };

  std::vector<Arm> outputs_;
  std::vector<PendingState> states_;
  std::optional<StateId> start_;
};

struct RunTrace {
  std::vector<Arm> actions;
  std::vector<int> rewards;
  StateId final_state = 0;
};

// Samples gamma(q). Degenerate distributions consume no randomness.
Arm act(const Pfa& pfa, StateId q, RandomStream& rng);

// Samples delta(q, o).
StateId step(const Pfa& pfa, StateId q, Observation o, RandomStream& rng);

// Alternates act / pull / step for `horizon` steps. The PFA's outputs must
// be exactly {1..K} for the bandit's K.
RunTrace run(const Pfa& pfa, const BernoulliBandit& bandit, std::size_t horizon, RandomStream& rng);

// States reachable from start through positive-probability actions,
// either reward, and positive-probability transitions.
std::size_t reachable_state_count(const Pfa& pfa);

}  // namespace pfab

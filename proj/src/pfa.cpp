#include "pfab/pfa.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include <fmt/format.h>

#include "pfab/errors.hpp"

namespace pfab {

namespace {

template <class T>
void normalize_distribution(std::vector<Weighted<T>>& dist, const std::string& where) {
  double total = 0.0;
  for (const auto& w : dist) {
    if (!(w.probability >= 0.0) || !std::isfinite(w.probability)) {
      throw StructuralError(fmt::format("{}: negative or non-finite probability", where));
    }
    total += w.probability;
  }
  if (std::abs(total - 1.0) > kDistributionTolerance) {
    throw StructuralError(fmt::format("{}: probabilities sum to {} instead of 1", where, total));
  }
  std::sort(dist.begin(), dist.end(),
            [](const Weighted<T>& a, const Weighted<T>& b) { return a.value < b.value; });
  std::vector<Weighted<T>> merged;
  for (const auto& w : dist) {
    if (!merged.empty() && merged.back().value == w.value) {
      merged.back().probability += w.probability;
    } else {
      merged.push_back(w);
    }
  }
  std::erase_if(merged, [](const Weighted<T>& w) { return w.probability == 0.0; });
  dist = std::move(merged);
}

template <class T>
T sample(std::span<const Weighted<T>> dist, RandomStream& rng) {
  if (dist.size() == 1) return dist.front().value;
  const double u = rng.uniform();
  double cumulative = 0.0;
  for (const auto& w : dist) {
    cumulative += w.probability;
    if (u < cumulative) return w.value;
  }
  return dist.back().value;
}

}  // namespace

const std::string& Pfa::label(StateId q) const {
  check_state(q);
  return labels_[q];
}

std::optional<StateId> Pfa::find(std::string_view label) const {
  const auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Pfa::check_state(StateId q) const {
  if (q >= labels_.size()) {
    throw StructuralError(fmt::format("unknown state id {} (have {})", q, labels_.size()));
  }
}

std::span<const Weighted<Arm>> Pfa::action(StateId q) const {
  check_state(q);
  return std::span(actions_).subspan(action_offsets_[q], action_offsets_[q + 1] - action_offsets_[q]);
}

bool Pfa::has_transition(StateId q, Observation o) const {
  check_state(q);
  for (auto i = input_offsets_[q]; i < input_offsets_[q + 1]; ++i) {
    if (inputs_[i].input == o) return true;
  }
  return false;
}

std::span<const Weighted<StateId>> Pfa::delta(StateId q, Observation o) const {
  check_state(q);
  for (auto i = input_offsets_[q]; i < input_offsets_[q + 1]; ++i) {
    const auto& entry = inputs_[i];
    if (entry.input == o) {
      return std::span(successors_).subspan(entry.begin, entry.end - entry.begin);
    }
  }
  throw StructuralError(fmt::format("state {} has no transition on observation (arm {}, reward {})",
                                    labels_[q], o.arm, o.reward));
}

std::vector<Observation> Pfa::defined_inputs(StateId q) const {
  check_state(q);
  std::vector<Observation> out;
  for (auto i = input_offsets_[q]; i < input_offsets_[q + 1]; ++i) out.push_back(inputs_[i].input);
  return out;
}

bool operator==(const Pfa& a, const Pfa& b) {
  if (a.outputs_ != b.outputs_ || a.labels_ != b.labels_ || a.start_ != b.start_ ||
      a.action_offsets_ != b.action_offsets_ || a.actions_ != b.actions_ ||
      a.input_offsets_ != b.input_offsets_ || a.successors_ != b.successors_ ||
      a.inputs_.size() != b.inputs_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.inputs_.size(); ++i) {
    const auto& x = a.inputs_[i];
    const auto& y = b.inputs_[i];
    if (!(x.input == y.input) || x.begin != y.begin || x.end != y.end) return false;
  }
  return true;
}

PfaBuilder::PfaBuilder(std::vector<Arm> outputs) : outputs_(std::move(outputs)) {
  std::sort(outputs_.begin(), outputs_.end());
  if (outputs_.empty()) throw StructuralError("PFA needs a nonempty output alphabet");
  if (std::adjacent_find(outputs_.begin(), outputs_.end()) != outputs_.end()) {
    throw StructuralError("duplicate output symbol");
  }
  if (outputs_.front() < 1) throw StructuralError("output symbols are arm indices >= 1");
}

void PfaBuilder::reserve(std::size_t states) { states_.reserve(states); }

StateId PfaBuilder::add_state(std::string label) {
  states_.push_back(PendingState{std::move(label), {}, false, {}});
  return static_cast<StateId>(states_.size() - 1);
}

void PfaBuilder::set_start(StateId q) {
  if (q >= states_.size()) throw StructuralError(fmt::format("start state id {} unknown", q));
  start_ = q;
}

void PfaBuilder::set_action(StateId q, std::vector<Weighted<Arm>> distribution) {
  if (q >= states_.size()) throw StructuralError(fmt::format("state id {} unknown", q));
  states_[q].action = std::move(distribution);
  states_[q].has_action = true;
}

void PfaBuilder::set_transition(StateId q, Observation o,
                                std::vector<Weighted<StateId>> distribution) {
  if (q >= states_.size()) throw StructuralError(fmt::format("state id {} unknown", q));
  if (o.reward != 0 && o.reward != 1) {
    throw StructuralError(fmt::format("state {}: reward {} not in {{0,1}}", states_[q].label, o.reward));
  }
  if (!std::binary_search(outputs_.begin(), outputs_.end(), o.arm)) {
    throw StructuralError(fmt::format("state {}: observation arm {} not an output", states_[q].label, o.arm));
  }
  auto& transitions = states_[q].transitions;
  for (auto& [input, dist] : transitions) {
    if (input == o) {
      dist = std::move(distribution);
      return;
    }
  }
  transitions.emplace_back(o, std::move(distribution));
}

Pfa PfaBuilder::build() && {
  if (states_.empty()) throw StructuralError("PFA needs at least one state");
  if (!start_) throw StructuralError("PFA start state not set");

  Pfa pfa;
  pfa.outputs_ = std::move(outputs_);
  pfa.start_ = *start_;
  const auto n = states_.size();
  pfa.labels_.reserve(n);
  pfa.index_.reserve(n);
  pfa.action_offsets_.reserve(n + 1);
  pfa.input_offsets_.reserve(n + 1);
  pfa.action_offsets_.push_back(0);
  pfa.input_offsets_.push_back(0);

  for (StateId q = 0; q < n; ++q) {
    auto& s = states_[q];
    if (!pfa.index_.emplace(s.label, q).second) {
      throw StructuralError(fmt::format("duplicate state label {}", s.label));
    }
    if (!s.has_action) throw StructuralError(fmt::format("state {} has no action distribution", s.label));
    normalize_distribution(s.action, fmt::format("action of state {}", s.label));
    for (const auto& w : s.action) {
      if (!std::binary_search(pfa.outputs_.begin(), pfa.outputs_.end(), w.value)) {
        throw StructuralError(fmt::format("state {} plays unknown output {}", s.label, w.value));
      }
    }
    pfa.actions_.insert(pfa.actions_.end(), s.action.begin(), s.action.end());
    pfa.action_offsets_.push_back(static_cast<std::uint32_t>(pfa.actions_.size()));

    std::sort(s.transitions.begin(), s.transitions.end(), [](const auto& a, const auto& b) {
      return std::pair(a.first.arm, a.first.reward) < std::pair(b.first.arm, b.first.reward);
    });
    for (auto& [input, dist] : s.transitions) {
      normalize_distribution(
          dist, fmt::format("transition of state {} on ({}:{})", s.label, input.arm, input.reward));
      for (const auto& w : dist) {
        if (w.value >= n) {
          throw StructuralError(fmt::format("state {} transitions to unknown state id {}", s.label, w.value));
        }
      }
      const auto begin = static_cast<std::uint32_t>(pfa.successors_.size());
      pfa.successors_.insert(pfa.successors_.end(), dist.begin(), dist.end());
      pfa.inputs_.push_back({input, begin, static_cast<std::uint32_t>(pfa.successors_.size())});
    }
    pfa.input_offsets_.push_back(static_cast<std::uint32_t>(pfa.inputs_.size()));
    pfa.labels_.push_back(std::move(s.label));
  }

  for (StateId q = 0; q < n; ++q) {
    for (const auto& w : pfa.action(q)) {
      for (int reward : {0, 1}) {
        if (!pfa.has_transition(q, {w.value, reward})) {
          throw StructuralError(fmt::format("state {} plays arm {} but has no transition on ({}:{})",
                                            pfa.labels_[q], w.value, w.value, reward));
        }
      }
    }
  }
  states_.clear();
  return pfa;
}

Arm act(const Pfa& pfa, StateId q, RandomStream& rng) { return sample(pfa.action(q), rng); }

StateId step(const Pfa& pfa, StateId q, Observation o, RandomStream& rng) {
  return sample(pfa.delta(q, o), rng);
}

RunTrace run(const Pfa& pfa, const BernoulliBandit& bandit, std::size_t horizon, RandomStream& rng) {
  const auto outputs = pfa.outputs();
  bool matches = outputs.size() == bandit.arms();
  for (std::size_t i = 0; matches && i < outputs.size(); ++i) {
    matches = outputs[i] == static_cast<Arm>(i) + 1;
  }
  if (!matches) {
    throw StructuralError(
        fmt::format("PFA outputs do not match the {}-armed bandit's arms 1..{}", bandit.arms(), bandit.arms()));
  }
  RunTrace trace;
  trace.actions.reserve(horizon);
  trace.rewards.reserve(horizon);
  StateId q = pfa.start();
  for (std::size_t t = 0; t < horizon; ++t) {
    const Arm a = act(pfa, q, rng);
    const int r = bandit.pull(a, rng);
    q = step(pfa, q, {a, r}, rng);
    trace.actions.push_back(a);
    trace.rewards.push_back(r);
  }
  trace.final_state = q;
  return trace;
}

std::size_t reachable_state_count(const Pfa& pfa) {
  std::vector<bool> seen(pfa.state_count(), false);
  std::deque<StateId> frontier{pfa.start()};
  seen[pfa.start()] = true;
  std::size_t count = 1;
  while (!frontier.empty()) {
    const StateId q = frontier.front();
    frontier.pop_front();
    for (const auto& a : pfa.action(q)) {
      for (int reward : {0, 1}) {
        for (const auto& next : pfa.delta(q, {a.value, reward})) {
          if (!seen[next.value]) {
            seen[next.value] = true;
            ++count;
            frontier.push_back(next.value);
          }
        }
      }
    }
  }
  return count;
}

}  // namespace pfab

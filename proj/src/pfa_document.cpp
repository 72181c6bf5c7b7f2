#include "pfab/pfa_document.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "pfab/errors.hpp"

namespace pfab {

using Json = nlohmann::ordered_json;

std::string input_symbol(Observation o) { return fmt::format("{}:{}", o.arm, o.reward); }

namespace {

Observation parse_input_symbol(const std::string& text) {
  const auto colon = text.find(':');
  Observation o;
  if (colon == std::string::npos) throw ParseError(fmt::format("input symbol '{}' is not arm:reward", text));
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  auto [p1, e1] = std::from_chars(begin, begin + colon, o.arm);
  auto [p2, e2] = std::from_chars(begin + colon + 1, end, o.reward);
  if (e1 != std::errc() || e2 != std::errc() || p1 != begin + colon || p2 != end ||
      (o.reward != 0 && o.reward != 1)) {
    throw ParseError(fmt::format("input symbol '{}' is not arm:reward", text));
  }
  return o;
}

double parse_probability(const Json& value, const std::string& where) {
  if (!value.is_number()) throw ParseError(fmt::format("{}: probability is not a number", where));
  return value.get<double>();
}

}  // namespace

std::string serialize(const Pfa& pfa) {
  Json doc;
  doc["outputs"] = Json::array();
  Json inputs = Json::array();
  for (Arm a : pfa.outputs()) {
    doc["outputs"].push_back(a);
    inputs.push_back(input_symbol({a, 0}));
    inputs.push_back(input_symbol({a, 1}));
  }
  doc["inputs"] = std::move(inputs);
  doc["start"] = pfa.label(pfa.start());
  Json states = Json::array();
  Json action = Json::object();
  Json delta = Json::object();
  for (StateId q = 0; q < pfa.state_count(); ++q) {
    const auto& label = pfa.label(q);
    states.push_back(label);
    Json dist = Json::array();
    for (const auto& w : pfa.action(q)) dist.push_back(Json::array({w.value, w.probability}));
    action[label] = std::move(dist);
    Json per_input = Json::object();
    for (const auto& o : pfa.defined_inputs(q)) {
      Json succ = Json::array();
      for (const auto& w : pfa.delta(q, o)) succ.push_back(Json::array({pfa.label(w.value), w.probability}));
      per_input[input_symbol(o)] = std::move(succ);
    }
    delta[label] = std::move(per_input);
  }
  doc["states"] = std::move(states);
  doc["action"] = std::move(action);
  doc["delta"] = std::move(delta);
  return doc.dump(1) + "\n";
}

Pfa deserialize(std::string_view document) {
  Json doc;
  try {
    doc = Json::parse(document);
  } catch (const Json::parse_error& e) {
    throw ParseError(fmt::format("PFA document is not valid JSON: {}", e.what()));
  }
  if (!doc.is_object()) throw ParseError("PFA document must be an object");
  static const std::set<std::string> kFields{"outputs", "inputs", "start", "states", "action", "delta"};
  for (const auto& [key, _] : doc.items()) {
    if (!kFields.contains(key)) throw ParseError(fmt::format("unknown field '{}'", key));
  }
  for (const auto& field : kFields) {
    if (!doc.contains(field)) throw ParseError(fmt::format("missing field '{}'", field));
  }

  try {
    std::vector<Arm> outputs;
    for (const auto& o : doc.at("outputs")) {
      if (!o.is_number_integer()) throw ParseError("outputs must be integers");
      outputs.push_back(o.get<Arm>());
    }
    std::set<std::string> inputs;
    for (const auto& i : doc.at("inputs")) {
      const auto symbol = i.get<std::string>();
      const auto o = parse_input_symbol(symbol);
      if (std::find(outputs.begin(), outputs.end(), o.arm) == outputs.end()) {
        throw ParseError(fmt::format("input symbol '{}' names an arm that is not an output", symbol));
      }
      inputs.insert(symbol);
    }

    const auto& states = doc.at("states");
    if (!states.is_array() || states.empty()) throw ParseError("states must be a nonempty list");
    PfaBuilder builder(outputs);
    builder.reserve(states.size());
    std::unordered_map<std::string, StateId> ids;
    for (const auto& s : states) {
      const auto label = s.get<std::string>();
      if (ids.contains(label)) throw ParseError(fmt::format("duplicate state '{}'", label));
      ids.emplace(label, builder.add_state(label));
    }
    const auto lookup = [&](const std::string& label, const std::string& where) {
      const auto it = ids.find(label);
      if (it == ids.end()) throw ParseError(fmt::format("{}: unknown state '{}'", where, label));
      return it->second;
    };

    builder.set_start(lookup(doc.at("start").get<std::string>(), "start"));

    for (const auto& [label, dist] : doc.at("action").items()) {
      const StateId q = lookup(label, "action");
      std::vector<Weighted<Arm>> out;
      for (const auto& entry : dist) {
        if (!entry.is_array() || entry.size() != 2) {
          throw ParseError(fmt::format("action of state '{}': entries are [output, probability]", label));
        }
        out.push_back({entry[0].get<Arm>(), parse_probability(entry[1], "action of state '" + label + "'")});
      }
      builder.set_action(q, std::move(out));
    }
    for (const auto& [label, per_input] : doc.at("delta").items()) {
      const StateId q = lookup(label, "delta");
      for (const auto& [symbol, dist] : per_input.items()) {
        if (!inputs.contains(symbol)) {
          throw ParseError(fmt::format("delta of state '{}' uses undeclared input '{}'", label, symbol));
        }
        std::vector<Weighted<StateId>> out;
        const auto where = fmt::format("delta of state '{}' on '{}'", label, symbol);
        for (const auto& entry : dist) {
          if (!entry.is_array() || entry.size() != 2) {
            throw ParseError(where + ": entries are [state, probability]");
          }
          out.push_back({lookup(entry[0].get<std::string>(), where), parse_probability(entry[1], where)});
        }
        builder.set_transition(q, parse_input_symbol(symbol), std::move(out));
      }
    }
    return std::move(builder).build();
  } catch (const StructuralError& e) {
    throw ParseError(e.what());
  } catch (const Json::exception& e) {
    throw ParseError(fmt::format("malformed PFA document: {}", e.what()));
  }
}

}  // namespace pfab

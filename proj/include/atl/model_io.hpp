#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "atl/engine.hpp"
#include "atl/errors.hpp"
#include "atl/game_structure.hpp"

namespace atl {

// Model document, schema version 1:
// {
//   "version": 1,
//   "players": ["1", "2"],
//   "propositions": ["x", "y"],
//   "states": [{"name": "q0", "labels": ["x"]}, ...],
//   "moves": {"1": {"q0": ["L", "C"], ...}, ...},
//   "transitions": [{"from": "q0", "vector": ["L", "L"], "to": "q0"}, ...]
// }
// "labels" may be omitted for unlabeled states.

namespace detail {

inline const nlohmann::json& require_key(const nlohmann::json& j, const char* key,
                                         const std::string& path) {
  if (!j.is_object())
    throw schema_error(path.empty() ? "/" : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end())
    throw schema_error(path + "/" + key, "missing required key");
  return *it;
}

inline std::string require_string(const nlohmann::json& j, const std::string& path) {
  if (!j.is_string())
    throw schema_error(path, "expected a string");
  return j.get<std::string>();
}

inline std::vector<std::string> require_string_array(const nlohmann::json& j,
                                                     const std::string& path) {
  if (!j.is_array())
    throw schema_error(path, "expected an array of strings");
  std::vector<std::string> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(require_string(j[i], path + "/" + std::to_string(i)));
  return out;
}

}  // namespace detail

/// Reads the raw description out of a parsed model document, checking the
/// JSON shape only; name resolution is cgs validation's job.
inline game_description parse_model_document(const nlohmann::json& doc) {
  using detail::require_key;
  using detail::require_string;
  using detail::require_string_array;

  const auto& version = require_key(doc, "version", "");
  if (!version.is_number_integer() || version.get<int>() != 1)
    throw schema_error("/version", "unsupported model schema version, expected 1");

  game_description desc;
  desc.players = require_string_array(require_key(doc, "players", ""), "/players");
  desc.propositions = require_string_array(require_key(doc, "propositions", ""), "/propositions");

  const auto& states = require_key(doc, "states", "");
  if (!states.is_array())
    throw schema_error("/states", "expected an array");
  for (std::size_t i = 0; i < states.size(); ++i) {
    std::string path = "/states/" + std::to_string(i);
    game_description::state_entry entry;
    entry.name = require_string(require_key(states[i], "name", path), path + "/name");
    if (states[i].contains("labels"))
      entry.labels = require_string_array(states[i]["labels"], path + "/labels");
    desc.states.push_back(std::move(entry));
  }

  const auto& moves = require_key(doc, "moves", "");
  if (!moves.is_object())
    throw schema_error("/moves", "expected an object keyed by player name");
  for (const auto& [player, per_state] : moves.items()) {
    std::string ppath = "/moves/" + player;
    if (!per_state.is_object())
      throw schema_error(ppath, "expected an object keyed by state name");
    for (const auto& [state, symbols] : per_state.items())
      desc.moves[player][state] = require_string_array(symbols, ppath + "/" + state);
  }

  const auto& transitions = require_key(doc, "transitions", "");
  if (!transitions.is_array())
    throw schema_error("/transitions", "expected an array");
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    std::string path = "/transitions/" + std::to_string(i);
    game_description::transition_entry entry;
    entry.from = require_string(require_key(transitions[i], "from", path), path + "/from");
    entry.vector =
        require_string_array(require_key(transitions[i], "vector", path), path + "/vector");
    entry.to = require_string(require_key(transitions[i], "to", path), path + "/to");
    desc.transitions.push_back(std::move(entry));
  }
  return desc;
}

/// Parses and validates model bytes. Throws parse_error (byte offset) for
/// malformed JSON, schema_error for shape violations, validation_error for
/// structural ones.
inline game_structure load_model(std::string_view bytes) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(e.byte, "malformed JSON: " + std::string(e.what()));
  }
  return build_game_structure(parse_model_document(doc));
}

inline nlohmann::json model_to_json(const game_structure& s) {
  nlohmann::json doc;
  doc["version"] = 1;
  doc["players"] = s.player_names();
  doc["propositions"] = s.proposition_names();

  auto& states = doc["states"] = nlohmann::json::array();
  for (state_id q = 0; q < s.state_count(); ++q) {
    nlohmann::json entry;
    entry["name"] = s.state_name(q);
    auto& labels = entry["labels"] = nlohmann::json::array();
    for (std::uint32_t p : s.labels_of(q))
      labels.push_back(s.proposition_names()[p]);
    states.push_back(std::move(entry));
  }

  auto& moves = doc["moves"] = nlohmann::json::object();
  for (player_id a = 0; a < s.player_count(); ++a) {
    auto& per_state = moves[s.player_name(a)] = nlohmann::json::object();
    for (state_id q = 0; q < s.state_count(); ++q) {
      auto& symbols = per_state[s.state_name(q)] = nlohmann::json::array();
      for (move_id m : s.alternatives(q, a))
        symbols.push_back(s.move_symbol(m));
    }
  }

  auto& transitions = doc["transitions"] = nlohmann::json::array();
  for (state_id q = 0; q < s.state_count(); ++q) {
    for (const move_vector& mv : s.move_vectors(q)) {
      nlohmann::json entry;
      entry["from"] = s.state_name(q);
      auto& symbols = entry["vector"] = nlohmann::json::array();
      for (move_id m : mv)
        symbols.push_back(s.move_symbol(m));
      entry["to"] = s.state_name(s.successor(q, mv));
      transitions.push_back(std::move(entry));
    }
  }
  return doc;
}

/// Deterministic bytes: keys sorted, two-space indent, trailing newline.
inline std::string dump_model(const game_structure& s) { return model_to_json(s).dump(2) + "\n"; }

/// Result document. State names sorted ascending by state id; "trace" and
/// "warnings" appear only when present.
inline nlohmann::json result_to_json(const check_result& r, const game_structure& s,
                                     std::string_view formula_text, pre_backend backend) {
  nlohmann::json doc;
  doc["backend"] = std::string(to_string(backend));
  doc["formula"] = std::string(formula_text);
  auto& names = doc["satisfying"] = nlohmann::json::array();
  for (state_id q : r.satisfying.to_vector())
    names.push_back(s.state_name(q));
  doc["stats"] = {{"iterations", r.stats.fixpoint_iterations},
                  {"pre_calls", r.stats.pre_calls},
                  {"milliseconds", r.stats.wall_ms}};
  if (!r.trace.empty()) {
    auto& trace = doc["trace"] = nlohmann::json::array();
    for (const auto& entry : r.trace) {
      nlohmann::json node;
      node["formula"] = format(entry.node);
      node["iterations"] = entry.iterations;
      auto& states = node["states"] = nlohmann::json::array();
      for (state_id q : entry.sat.to_vector())
        states.push_back(s.state_name(q));
      trace.push_back(std::move(node));
    }
  }
  if (!r.warnings.empty())
    doc["warnings"] = r.warnings;
  return doc;
}

inline std::string dump_result(const check_result& r, const game_structure& s,
                               std::string_view formula_text, pre_backend backend) {
  return result_to_json(r, s, formula_text, backend).dump(2) + "\n";
}

}  // namespace atl

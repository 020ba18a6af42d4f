#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace atl {

/// Base class for all errors raised by this library.
class atl_error : public std::runtime_error {
public:
  explicit atl_error(const std::string& what) : std::runtime_error(what) {}
};

enum class diagnostic_kind {
  empty_players,
  empty_states,
  duplicate_player,
  duplicate_state,
  duplicate_proposition,
  invalid_move_symbol,
  unknown_player,
  unknown_state,
  unknown_proposition,
  unknown_move,
  empty_alternatives,
  malformed_transition,
  missing_transition,
  duplicate_transition,
};

std::string_view to_string(diagnostic_kind kind);

/// One violated well-formedness rule, naming the offending entity.
struct diagnostic {
  diagnostic_kind kind;
  std::string message;
};

class validation_error : public atl_error {
public:
  explicit validation_error(std::vector<diagnostic> diags)
      : atl_error(summarize(diags)), diagnostics_(std::move(diags)) {}

  const std::vector<diagnostic>& diagnostics() const { return diagnostics_; }

private:
  static std::string summarize(const std::vector<diagnostic>& diags) {
    if (diags.empty())
      return "validation failed";
    std::string s = diags.front().message;
    if (diags.size() > 1)
      s += " (+" + std::to_string(diags.size() - 1) + " more)";
    return s;
  }

  std::vector<diagnostic> diagnostics_;
};

/// Lexical or syntactic error in a formula, with the byte offset of the
/// first offending character.
class parse_error : public atl_error {
public:
  parse_error(std::size_t offset, const std::string& what)
      : atl_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

/// A structurally invalid model document; path is a JSON pointer.
class schema_error : public atl_error {
public:
  schema_error(std::string path, const std::string& what)
      : atl_error(what + " at " + path), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

private:
  std::string path_;
};

class unknown_proposition_error : public atl_error {
public:
  explicit unknown_proposition_error(const std::string& name)
      : atl_error("unknown proposition '" + name + "'"), name_(name) {}

  const std::string& name() const { return name_; }

private:
  std::string name_;
};

class unknown_player_error : public atl_error {
public:
  explicit unknown_player_error(const std::string& name)
      : atl_error("unknown player '" + name + "'"), name_(name) {}

  const std::string& name() const { return name_; }

private:
  std::string name_;
};

class unknown_state_error : public atl_error {
public:
  explicit unknown_state_error(const std::string& what) : atl_error(what) {}
};

class unknown_move_vector_error : public atl_error {
public:
  explicit unknown_move_vector_error(const std::string& what) : atl_error(what) {}
};

/// A relation built for one structure was applied to another.
class fingerprint_mismatch_error : public atl_error {
public:
  fingerprint_mismatch_error() : atl_error("coalition relation belongs to a different structure") {}
};

class invalid_generator_spec_error : public atl_error {
public:
  explicit invalid_generator_spec_error(const std::string& what) : atl_error(what) {}
};

inline std::string_view to_string(diagnostic_kind kind) {
  switch (kind) {
    case diagnostic_kind::empty_players: return "EmptyPlayers";
    case diagnostic_kind::empty_states: return "EmptyStates";
    case diagnostic_kind::duplicate_player: return "DuplicatePlayer";
    case diagnostic_kind::duplicate_state: return "DuplicateState";
    case diagnostic_kind::duplicate_proposition: return "DuplicateProposition";
    case diagnostic_kind::invalid_move_symbol: return "InvalidMoveSymbol";
    case diagnostic_kind::unknown_player: return "UnknownPlayer";
    case diagnostic_kind::unknown_state: return "UnknownState";
    case diagnostic_kind::unknown_proposition: return "UnknownProposition";
    case diagnostic_kind::unknown_move: return "UnknownMove";
    case diagnostic_kind::empty_alternatives: return "EmptyAlternatives";
    case diagnostic_kind::malformed_transition: return "MalformedTransition";
    case diagnostic_kind::missing_transition: return "MissingTransition";
    case diagnostic_kind::duplicate_transition: return "DuplicateTransition";
  }
  return "Unknown";
}

}  // namespace atl

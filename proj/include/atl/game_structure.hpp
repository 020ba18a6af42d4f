#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "atl/errors.hpp"
#include "atl/state_set.hpp"

namespace atl {

using player_id = std::uint32_t;
using move_id = std::uint32_t;

/// One move per player, indexed by player id.
using move_vector = std::vector<move_id>;

/// A set of players, kept sorted and duplicate-free.
class coalition {
public:
  coalition() = default;

  explicit coalition(std::vector<player_id> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  const std::vector<player_id>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  bool contains(player_id a) const {
    return std::binary_search(members_.begin(), members_.end(), a);
  }

  bool operator==(const coalition& other) const { return members_ == other.members_; }
  bool operator<(const coalition& other) const { return members_ < other.members_; }

private:
  std::vector<player_id> members_;
};

/// Raw structure description, as read from a model document. Nothing here
/// is resolved or checked; build_game_structure does that.
struct game_description {
  struct state_entry {
    std::string name;
    std::vector<std::string> labels;
  };

  struct transition_entry {
    std::string from;
    std::vector<std::string> vector;
    std::string to;
  };

  std::vector<std::string> players;
  std::vector<std::string> propositions;
  std::vector<state_entry> states;
  // moves[player][state] = available alternatives, as symbols
  std::map<std::string, std::map<std::string, std::vector<std::string>>> moves;
  std::vector<transition_entry> transitions;
};

/// Concurrent game structure with a transition for every full move vector.
/// States, players and moves are dense ids; names only matter at the edges.
class game_structure {
public:
  std::size_t state_count() const { return state_names_.size(); }
  std::size_t player_count() const { return player_names_.size(); }
  std::size_t proposition_count() const { return proposition_names_.size(); }

  const std::vector<std::string>& player_names() const { return player_names_; }
  const std::vector<std::string>& state_names() const { return state_names_; }
  const std::vector<std::string>& proposition_names() const { return proposition_names_; }

  const std::string& state_name(state_id q) const { return state_names_.at(q); }
  const std::string& player_name(player_id a) const { return player_names_.at(a); }
  const std::string& move_symbol(move_id m) const { return move_symbols_.at(m); }

  std::optional<state_id> find_state(std::string_view name) const {
    auto it = state_index_.find(std::string(name));
    if (it == state_index_.end())
      return std::nullopt;
    return it->second;
  }

  std::optional<player_id> find_player(std::string_view name) const {
    auto it = player_index_.find(std::string(name));
    if (it == player_index_.end())
      return std::nullopt;
    return it->second;
  }

  /// Alternatives d_a(q), sorted by move id. Never empty.
  const std::vector<move_id>& alternatives(state_id q, player_id a) const {
    return alternatives_.at(q * player_count() + a);
  }

  /// Full product D(q) = d_0(q) x ... x d_{k-1}(q) in lexicographic order.
  std::vector<move_vector> move_vectors(state_id q) const {
    const std::size_t k = player_count();
    std::vector<move_vector> out(product_size(q), move_vector(k));
    for (std::size_t r = 0; r < out.size(); ++r) {
      std::size_t rest = r;
      for (std::size_t a = k; a-- > 0;) {
        const auto& alt = alternatives(q, static_cast<player_id>(a));
        out[r][a] = alt[rest % alt.size()];
        rest /= alt.size();
      }
    }
    return out;
  }

  std::size_t product_size(state_id q) const { return successors_.at(q).size(); }

  /// delta(q, mv). The vector must pick an alternative for every player.
  state_id successor(state_id q, const move_vector& mv) const {
    return successors_.at(q)[rank(q, mv)];
  }

  state_id successor_by_rank(state_id q, std::size_t r) const { return successors_.at(q)[r]; }

  /// All states reachable from q in one step.
  state_set successors(state_id q) const {
    state_set out(state_count());
    for (state_id t : successors_.at(q))
      out.insert(t);
    return out;
  }

  /// States whose label set contains the proposition.
  const state_set& states_labeled(std::string_view proposition) const {
    auto it = proposition_index_.find(std::string(proposition));
    if (it == proposition_index_.end())
      throw unknown_proposition_error(std::string(proposition));
    return label_sets_[it->second];
  }

  bool has_proposition(std::string_view proposition) const {
    return proposition_index_.count(std::string(proposition)) > 0;
  }

  /// Proposition ids holding at q, ascending.
  const std::vector<std::uint32_t>& labels_of(state_id q) const { return state_labels_.at(q); }

  coalition make_coalition(const std::vector<std::string>& names) const {
    std::vector<player_id> ids;
    ids.reserve(names.size());
    for (const auto& name : names) {
      auto a = find_player(name);
      if (!a)
        throw unknown_player_error(name);
      ids.push_back(*a);
    }
    return coalition(std::move(ids));
  }

  coalition full_coalition() const {
    std::vector<player_id> ids(player_count());
    for (player_id a = 0; a < ids.size(); ++a)
      ids[a] = a;
    return coalition(std::move(ids));
  }

  /// Identity token for caches built from this structure.
  std::uint64_t fingerprint() const { return fingerprint_; }

private:
  friend struct structure_assembler;

  std::size_t rank(state_id q, const move_vector& mv) const {
    const std::size_t k = player_count();
    if (mv.size() != k)
      throw unknown_move_vector_error("move vector has " + std::to_string(mv.size()) +
                                      " components, expected " + std::to_string(k));
    std::size_t r = 0;
    for (std::size_t a = 0; a < k; ++a) {
      const auto& alt = alternatives(q, static_cast<player_id>(a));
      auto it = std::find(alt.begin(), alt.end(), mv[a]);
      if (it == alt.end())
        throw unknown_move_vector_error("move is not an alternative of player " +
                                        player_name(static_cast<player_id>(a)) + " at state " +
                                        state_name(q));
      r = r * alt.size() + static_cast<std::size_t>(it - alt.begin());
    }
    return r;
  }

  std::vector<std::string> player_names_;
  std::vector<std::string> state_names_;
  std::vector<std::string> proposition_names_;
  std::vector<std::string> move_symbols_;
  std::unordered_map<std::string, player_id> player_index_;
  std::unordered_map<std::string, state_id> state_index_;
  std::unordered_map<std::string, std::uint32_t> proposition_index_;
  std::vector<state_set> label_sets_;
  std::vector<std::vector<std::uint32_t>> state_labels_;
  std::vector<std::vector<move_id>> alternatives_;  // index q * k + a
  std::vector<std::vector<state_id>> successors_;   // index q, then rank
  std::uint64_t fingerprint_ = 0;
};

namespace detail {

class fnv1a {
public:
  void mix(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      hash_ = (hash_ ^ (v & 0xff)) * 0x100000001b3ull;
      v >>= 8;
    }
  }

  void mix(std::string_view s) {
    mix(static_cast<std::uint64_t>(s.size()));
    for (unsigned char c : s)
      hash_ = (hash_ ^ c) * 0x100000001b3ull;
  }

  std::uint64_t value() const { return hash_; }

private:
  std::uint64_t hash_ = 0xcbf29ce484222325ull;
};

}  // namespace detail

struct structure_assembler {
  const game_description& desc;
  std::vector<diagnostic> diags;
  game_structure out;

  explicit structure_assembler(const game_description& d) : desc(d) {}

  void report(diagnostic_kind kind, std::string message) {
    diags.push_back({kind, std::move(message)});
  }

  static bool valid_move_symbol(const std::string& s) {
    if (s.empty())
      return false;
    for (unsigned char c : s)
      if (std::isspace(c))
        return false;
    return true;
  }

  static std::string render_vector(const std::vector<std::string>& symbols) {
    std::string s = "<";
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      if (i)
        s += ",";
      s += symbols[i];
    }
    return s + ">";
  }

  void intern_names() {
    if (desc.players.empty())
      report(diagnostic_kind::empty_players, "the model declares no players");
    if (desc.states.empty())
      report(diagnostic_kind::empty_states, "the model declares no states");
    for (const auto& name : desc.players) {
      if (!out.player_index_.emplace(name, static_cast<player_id>(out.player_names_.size())).second)
        report(diagnostic_kind::duplicate_player, "player '" + name + "' is declared twice");
      else
        out.player_names_.push_back(name);
    }
    for (const auto& name : desc.propositions) {
      if (!out.proposition_index_
               .emplace(name, static_cast<std::uint32_t>(out.proposition_names_.size()))
               .second)
        report(diagnostic_kind::duplicate_proposition,
               "proposition '" + name + "' is declared twice");
      else
        out.proposition_names_.push_back(name);
    }
    for (const auto& st : desc.states) {
      if (!out.state_index_.emplace(st.name, static_cast<state_id>(out.state_names_.size())).second)
        report(diagnostic_kind::duplicate_state, "state '" + st.name + "' is declared twice");
      else
        out.state_names_.push_back(st.name);
    }
  }

  void assign_labels() {
    const std::size_t n = out.state_names_.size();
    out.label_sets_.assign(out.proposition_names_.size(), state_set(n));
    out.state_labels_.assign(n, {});
    state_id q = 0;
    for (const auto& st : desc.states) {
      if (!out.state_index_.count(st.name) || out.state_index_.at(st.name) != q)
        continue;  // duplicate entry, already reported
      for (const auto& label : st.labels) {
        auto it = out.proposition_index_.find(label);
        if (it == out.proposition_index_.end()) {
          report(diagnostic_kind::unknown_proposition,
                 "state '" + st.name + "' is labeled with undeclared proposition '" + label + "'");
          continue;
        }
        if (!out.label_sets_[it->second].contains(q)) {
          out.label_sets_[it->second].insert(q);
          out.state_labels_[q].push_back(it->second);
        }
      }
      std::sort(out.state_labels_[q].begin(), out.state_labels_[q].end());
      ++q;
    }
  }

  move_id intern_move(const std::string& symbol) {
    auto it = move_index.find(symbol);
    if (it != move_index.end())
      return it->second;
    move_id id = static_cast<move_id>(out.move_symbols_.size());
    out.move_symbols_.push_back(symbol);
    move_index.emplace(symbol, id);
    return id;
  }

  void assign_alternatives() {
    const std::size_t n = out.state_names_.size();
    const std::size_t k = out.player_names_.size();
    out.alternatives_.assign(n * k, {});
    for (const auto& [player, per_state] : desc.moves) {
      if (!out.player_index_.count(player)) {
        report(diagnostic_kind::unknown_player,
               "moves are declared for undeclared player '" + player + "'");
        continue;
      }
      for (const auto& [state, symbols] : per_state) {
        if (!out.state_index_.count(state)) {
          report(diagnostic_kind::unknown_state, "player '" + player +
                                                     "' declares moves at undeclared state '" +
                                                     state + "'");
          continue;
        }
        player_id a = out.player_index_.at(player);
        state_id q = out.state_index_.at(state);
        auto& alt = out.alternatives_[q * k + a];
        for (const auto& symbol : symbols) {
          if (!valid_move_symbol(symbol)) {
            report(diagnostic_kind::invalid_move_symbol,
                   "player '" + player + "' at state '" + state + "' has move '" + symbol +
                       "' which is empty or contains whitespace");
            continue;
          }
          move_id m = intern_move(symbol);
          if (std::find(alt.begin(), alt.end(), m) == alt.end())
            alt.push_back(m);
        }
        std::sort(alt.begin(), alt.end());
      }
    }
    for (state_id q = 0; q < n; ++q)
      for (player_id a = 0; a < k; ++a)
        if (out.alternatives_[q * k + a].empty())
          report(diagnostic_kind::empty_alternatives,
                 "player '" + out.player_names_[a] + "' has no alternatives at state '" +
                     out.state_names_[q] + "'");
  }

  void assign_transitions() {
    const std::size_t n = out.state_names_.size();
    const std::size_t k = out.player_names_.size();
    constexpr state_id unset = static_cast<state_id>(-1);
    out.successors_.assign(n, {});
    for (state_id q = 0; q < n; ++q) {
      std::size_t size = 1;
      for (player_id a = 0; a < k; ++a) {
        std::size_t alt = out.alternatives_[q * k + a].size();
        size *= alt ? alt : 1;
      }
      out.successors_[q].assign(size, unset);
    }
    for (const auto& tr : desc.transitions) {
      auto from_it = out.state_index_.find(tr.from);
      auto to_it = out.state_index_.find(tr.to);
      if (from_it == out.state_index_.end()) {
        report(diagnostic_kind::unknown_state,
               "transition source '" + tr.from + "' is not a declared state");
        continue;
      }
      if (to_it == out.state_index_.end()) {
        report(diagnostic_kind::unknown_state,
               "transition target '" + tr.to + "' is not a declared state");
        continue;
      }
      if (tr.vector.size() != k) {
        report(diagnostic_kind::malformed_transition,
               "transition from '" + tr.from + "' on " + render_vector(tr.vector) + " carries " +
                   std::to_string(tr.vector.size()) + " moves, expected " + std::to_string(k));
        continue;
      }
      state_id q = from_it->second;
      std::size_t r = 0;
      bool ok = true;
      for (std::size_t a = 0; a < k && ok; ++a) {
        const auto& alt = out.alternatives_[q * k + a];
        auto mit = move_index.find(tr.vector[a]);
        std::size_t digit = alt.size();
        if (mit != move_index.end()) {
          auto pos = std::find(alt.begin(), alt.end(), mit->second);
          digit = static_cast<std::size_t>(pos - alt.begin());
        }
        if (digit >= alt.size()) {
          report(diagnostic_kind::unknown_move,
                 "transition from '" + tr.from + "' uses move '" + tr.vector[a] +
                     "' which player '" + out.player_names_[a] + "' cannot play there");
          ok = false;
        } else {
          r = r * alt.size() + digit;
        }
      }
      if (!ok)
        continue;
      if (out.successors_[q][r] != unset) {
        report(diagnostic_kind::duplicate_transition, "transition from '" + tr.from + "' on " +
                                                          render_vector(tr.vector) +
                                                          " is declared twice");
        continue;
      }
      out.successors_[q][r] = to_it->second;
    }
    for (state_id q = 0; q < n; ++q) {
      if (!missing_ok(q))
        continue;
      bool any_missing = std::find(out.successors_[q].begin(), out.successors_[q].end(), unset) !=
                         out.successors_[q].end();
      if (!any_missing)
        continue;
      const auto vectors = decode_all(q);
      for (std::size_t r = 0; r < out.successors_[q].size(); ++r)
        if (out.successors_[q][r] == unset)
          report(diagnostic_kind::missing_transition, "no transition from '" +
                                                          out.state_names_[q] + "' on " +
                                                          render_vector(vectors[r]));
    }
  }

  // Missing cells are only meaningful once every player has alternatives there.
  bool missing_ok(state_id q) const {
    const std::size_t k = out.player_names_.size();
    for (player_id a = 0; a < k; ++a)
      if (out.alternatives_[q * k + a].empty())
        return false;
    return true;
  }

  std::vector<std::vector<std::string>> decode_all(state_id q) const {
    const std::size_t k = out.player_names_.size();
    std::vector<std::vector<std::string>> vectors(out.successors_[q].size());
    for (std::size_t r = 0; r < vectors.size(); ++r) {
      std::size_t rest = r;
      vectors[r].assign(k, {});
      for (std::size_t a = k; a-- > 0;) {
        const auto& alt = out.alternatives_[q * k + a];
        vectors[r][a] = out.move_symbols_[alt[rest % alt.size()]];
        rest /= alt.size();
      }
    }
    return vectors;
  }

  void seal() {
    detail::fnv1a h;
    h.mix(out.player_names_.size());
    for (const auto& s : out.player_names_)
      h.mix(s);
    h.mix(out.state_names_.size());
    for (const auto& s : out.state_names_)
      h.mix(s);
    h.mix(out.proposition_names_.size());
    for (const auto& s : out.proposition_names_)
      h.mix(s);
    for (const auto& s : out.move_symbols_)
      h.mix(s);
    for (state_id q = 0; q < out.state_names_.size(); ++q) {
      for (std::uint32_t p : out.state_labels_[q])
        h.mix(p);
      h.mix(0xfeu);
    }
    for (const auto& alt : out.alternatives_) {
      for (move_id m : alt)
        h.mix(m);
      h.mix(0xfdu);
    }
    for (const auto& succ : out.successors_)
      for (state_id t : succ)
        h.mix(t);
    out.fingerprint_ = h.value();
  }

  std::unordered_map<std::string, move_id> move_index;
};

/// Every rule violation in the description; empty means buildable.
inline std::vector<diagnostic> validate(const game_description& desc) {
  structure_assembler a(desc);
  a.intern_names();
  a.assign_labels();
  a.assign_alternatives();
  a.assign_transitions();
  return std::move(a.diags);
}

/// Builds the structure, or throws validation_error carrying every diagnostic.
inline game_structure build_game_structure(const game_description& desc) {
  structure_assembler a(desc);
  a.intern_names();
  a.assign_labels();
  a.assign_alternatives();
  a.assign_transitions();
  if (!a.diags.empty())
    throw validation_error(std::move(a.diags));
  a.seal();
  return std::move(a.out);
}

}  // namespace atl

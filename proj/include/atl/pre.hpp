#pragma once

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <map>
#include <vector>

#include "atl/errors.hpp"
#include "atl/game_structure.hpp"
#include "atl/state_set.hpp"

namespace atl {

/// Moves of the coalition members only, in ascending player order.
using coalition_label = std::vector<move_id>;

/// One row per distinct (source, target, coalition label) triple with a
/// witnessing transition. The projection of the transition table onto the
/// coalition, with the non-members dropped.
struct coalition_relation {
  struct row {
    state_id from;
    state_id to;
    std::uint32_t label;  // index into labels
  };

  coalition coalition_players;
  std::vector<coalition_label> labels;
  std::vector<row> rows;
  std::size_t state_count = 0;
  std::uint64_t fingerprint = 0;
};

namespace detail {

inline void check_theta(const game_structure& s, const state_set& theta) {
  if (theta.universe_size() != s.state_count())
    throw unknown_state_error("state set ranges over " + std::to_string(theta.universe_size()) +
                              " states, the structure has " + std::to_string(s.state_count()));
}

inline void check_coalition(const game_structure& s, const coalition& a) {
  if (!a.empty() && a.members().back() >= s.player_count())
    throw unknown_player_error(std::to_string(a.members().back()));
}

}  // namespace detail

/// Pre(A, theta) by direct enumeration: q belongs to the result iff the
/// coalition has a joint move at q such that every completion by the
/// remaining players leads into theta.
inline state_set pre_direct(const game_structure& s, const coalition& a, const state_set& theta) {
  detail::check_theta(s, theta);
  detail::check_coalition(s, a);
  const std::size_t k = s.player_count();
  state_set result(s.state_count());

  std::vector<bool> in_coalition(k, false);
  for (player_id m : a.members())
    in_coalition[m] = true;

  std::vector<std::size_t> choice(k);
  for (state_id q = 0; q < s.state_count(); ++q) {
    // Odometer over coalition choices; for each, an inner odometer over
    // the completions of the other players.
    bool found = false;
    std::fill(choice.begin(), choice.end(), 0);
    while (!found) {
      bool all_inside = true;
      std::vector<std::size_t> completion(k, 0);
      while (all_inside) {
        move_vector mv(k);
        for (player_id p = 0; p < k; ++p) {
          const auto& alt = s.alternatives(q, p);
          mv[p] = alt[in_coalition[p] ? choice[p] : completion[p]];
        }
        if (!theta.contains(s.successor(q, mv)))
          all_inside = false;
        // advance the completion odometer over non-members
        player_id p = 0;
        for (; p < k; ++p) {
          if (in_coalition[p])
            continue;
          if (++completion[p] < s.alternatives(q, p).size())
            break;
          completion[p] = 0;
        }
        if (p == k)
          break;  // completions exhausted
      }
      if (all_inside) {
        found = true;
        break;
      }
      // advance the coalition odometer
      player_id p = 0;
      for (; p < k; ++p) {
        if (!in_coalition[p])
          continue;
        if (++choice[p] < s.alternatives(q, p).size())
          break;
        choice[p] = 0;
      }
      if (p == k)
        break;  // coalition choices exhausted
    }
    if (found)
      result.insert(q);
  }
  return result;
}

/// Materializes the projected transition relation for a coalition.
/// Rows are deduplicated and sorted by (from, to, label id); labels are
/// interned in first-seen order.
inline coalition_relation build_relation(const game_structure& s, const coalition& a) {
  detail::check_coalition(s, a);
  coalition_relation rel;
  rel.coalition_players = a;
  rel.state_count = s.state_count();
  rel.fingerprint = s.fingerprint();

  std::map<coalition_label, std::uint32_t> label_ids;
  const auto& members = a.members();
  for (state_id q = 0; q < s.state_count(); ++q) {
    for (const move_vector& mv : s.move_vectors(q)) {
      coalition_label label(members.size());
      for (std::size_t i = 0; i < members.size(); ++i)
        label[i] = mv[members[i]];
      auto [it, fresh] =
          label_ids.emplace(std::move(label), static_cast<std::uint32_t>(rel.labels.size()));
      if (fresh)
        rel.labels.push_back(it->first);
      rel.rows.push_back({q, s.successor(q, mv), it->second});
    }
  }
  auto key = [](const coalition_relation::row& r) {
    return std::tuple(r.from, r.to, r.label);
  };
  std::sort(rel.rows.begin(), rel.rows.end(),
            [&](const auto& x, const auto& y) { return key(x) < key(y); });
  rel.rows.erase(std::unique(rel.rows.begin(), rel.rows.end(),
                             [&](const auto& x, const auto& y) { return key(x) == key(y); }),
                 rel.rows.end());
  return rel;
}

/// Pre(A, theta) over a prebuilt relation, as a relational anti-join:
/// X = distinct (from,label) of rows entering theta, Y = same for rows
/// escaping theta; result projects X minus Y onto the source column.
inline state_set pre_relational(const coalition_relation& rel, const game_structure& s,
                                const state_set& theta) {
  if (rel.fingerprint != s.fingerprint())
    throw fingerprint_mismatch_error();
  detail::check_theta(s, theta);

  const std::size_t label_count = rel.labels.size();
  state_set result(rel.state_count);
  if (label_count == 0)
    return result;

  boost::dynamic_bitset<> x(rel.state_count * label_count);
  boost::dynamic_bitset<> y(rel.state_count * label_count);
  for (const auto& row : rel.rows) {
    std::size_t cell = static_cast<std::size_t>(row.from) * label_count + row.label;
    if (theta.contains(row.to))
      x.set(cell);
    else
      y.set(cell);
  }
  x -= y;
  for (auto cell = x.find_first(); cell != boost::dynamic_bitset<>::npos; cell = x.find_next(cell))
    result.insert(static_cast<state_id>(cell / label_count));
  return result;
}

}  // namespace atl

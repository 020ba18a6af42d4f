#pragma once

#include <random>
#include <string>

#include "atl/game_structure.hpp"

namespace atl {

/// Size bounds for random structures. Every count is drawn uniformly from
/// [1, max] (propositions from [0, max]).
struct random_structure_params {
  std::size_t max_states = 6;
  std::size_t max_players = 3;
  std::size_t max_moves = 3;
  std::size_t max_propositions = 3;
};

/// Uniformly sized random total structure: every player gets a nonempty
/// random alternative set at every state, every full move vector a random
/// target. Players are named "1".., states "q0".., propositions "p0"...
inline game_structure random_structure(std::mt19937_64& rng,
                                       const random_structure_params& params = {}) {
  auto draw = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  const std::size_t players = draw(1, params.max_players);
  const std::size_t states = draw(1, params.max_states);
  const std::size_t moves = draw(1, params.max_moves);
  const std::size_t propositions = draw(0, params.max_propositions);

  game_description desc;
  for (std::size_t a = 0; a < players; ++a)
    desc.players.push_back(std::to_string(a + 1));
  for (std::size_t p = 0; p < propositions; ++p)
    desc.propositions.push_back("p" + std::to_string(p));
  for (std::size_t q = 0; q < states; ++q) {
    game_description::state_entry entry;
    entry.name = "q" + std::to_string(q);
    for (const auto& prop : desc.propositions)
      if (draw(0, 99) < 40)
        entry.labels.push_back(prop);
    desc.states.push_back(std::move(entry));
  }

  std::vector<std::string> symbols;
  for (std::size_t m = 0; m < moves; ++m)
    symbols.push_back(std::string(1, static_cast<char>('a' + m)));

  for (const auto& player : desc.players) {
    for (const auto& state : desc.states) {
      std::vector<std::string> alt;
      for (const auto& symbol : symbols)
        if (draw(0, 1))
          alt.push_back(symbol);
      if (alt.empty())
        alt.push_back(symbols[draw(0, symbols.size() - 1)]);
      desc.moves[player][state.name] = std::move(alt);
    }
  }

  // Full product per state, each vector pointing at a uniform target.
  for (const auto& state : desc.states) {
    std::vector<std::size_t> sizes;
    for (const auto& player : desc.players)
      sizes.push_back(desc.moves[player][state.name].size());
    std::size_t total = 1;
    for (std::size_t s : sizes)
      total *= s;
    for (std::size_t r = 0; r < total; ++r) {
      game_description::transition_entry entry;
      entry.from = state.name;
      std::size_t rest = r;
      entry.vector.assign(players, {});
      for (std::size_t a = players; a-- > 0;) {
        const auto& alt = desc.moves[desc.players[a]][state.name];
        entry.vector[a] = alt[rest % alt.size()];
        rest /= alt.size();
      }
      entry.to = desc.states[draw(0, states - 1)].name;
      desc.transitions.push_back(std::move(entry));
    }
  }
  return build_game_structure(desc);
}

}  // namespace atl

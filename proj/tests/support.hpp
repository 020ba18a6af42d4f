#pragma once

#include <random>
#include <string>
#include <vector>

#include "atl/formula.hpp"
#include "atl/game_structure.hpp"

namespace support {

// The worked four-state example: two players flipping two booleans.
inline atl::game_description fig1_description() {
  atl::game_description d;
  d.players = {"1", "2"};
  d.propositions = {"x", "y"};
  d.states = {{"q0", {}}, {"q1", {"x"}}, {"q2", {"y"}}, {"q3", {"x", "y"}}};
  d.moves["1"] = {{"q0", {"L", "C"}}, {"q1", {"L"}}, {"q2", {"L", "C"}}, {"q3", {"L"}}};
  d.moves["2"] = {{"q0", {"L", "C"}}, {"q1", {"L", "C"}}, {"q2", {"L"}}, {"q3", {"L"}}};
  d.transitions = {
      {"q0", {"L", "L"}, "q0"}, {"q0", {"L", "C"}, "q2"}, {"q0", {"C", "L"}, "q1"},
      {"q0", {"C", "C"}, "q3"}, {"q1", {"L", "L"}, "q1"}, {"q1", {"L", "C"}, "q3"},
      {"q2", {"L", "L"}, "q2"}, {"q2", {"C", "L"}, "q3"}, {"q3", {"L", "L"}, "q3"},
  };
  return d;
}

struct formula_gen_params {
  std::vector<std::string> atoms = {"x", "y", "p0", "111", "a_b"};
  std::vector<std::string> players = {"1", "2", "3"};
};

/// Random AST of the given maximum depth. Leans on atoms at the leaves and
/// spreads evenly over the connective kinds elsewhere.
inline atl::formula random_formula(std::mt19937_64& rng, int max_depth,
                                   const formula_gen_params& params = {}) {
  auto draw = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto coalition = [&] {
    std::vector<std::string> members;
    for (const auto& p : params.players)
      if (draw(0, 1))
        members.push_back(p);
    return members;
  };
  if (max_depth <= 1 || draw(0, 9) == 0) {
    int pick = draw(0, static_cast<int>(params.atoms.size()) + 1);
    if (pick == 0)
      return atl::formula::constant(true);
    if (pick == 1)
      return atl::formula::constant(false);
    return atl::formula::atom(params.atoms[pick - 2]);
  }
  switch (draw(0, 7)) {
    case 0:
      return atl::formula::negation(random_formula(rng, max_depth - 1, params));
    case 1:
      return atl::formula::conjunction(random_formula(rng, max_depth - 1, params),
                                       random_formula(rng, max_depth - 1, params));
    case 2:
      return atl::formula::disjunction(random_formula(rng, max_depth - 1, params),
                                       random_formula(rng, max_depth - 1, params));
    case 3:
      return atl::formula::implication(random_formula(rng, max_depth - 1, params),
                                       random_formula(rng, max_depth - 1, params));
    case 4:
      return atl::formula::next(coalition(), random_formula(rng, max_depth - 1, params));
    case 5:
      return atl::formula::always(coalition(), random_formula(rng, max_depth - 1, params));
    case 6:
      return atl::formula::eventually(coalition(), random_formula(rng, max_depth - 1, params));
    default:
      return atl::formula::until(coalition(), random_formula(rng, max_depth - 1, params),
                                 random_formula(rng, max_depth - 1, params));
  }
}

/// Formula whose atoms and coalitions are drawn from one concrete
/// structure, so it always evaluates without resolution errors. With no
/// propositions the leaves degrade to constants.
inline atl::formula random_formula_for(std::mt19937_64& rng, int max_depth,
                                       const atl::game_structure& s) {
  formula_gen_params params;
  params.atoms = s.proposition_names();
  params.players = s.player_names();
  return random_formula(rng, max_depth, params);
}

}  // namespace support

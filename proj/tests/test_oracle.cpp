#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "atl/game_structure.hpp"
#include "atl/parser.hpp"
#include "atl/random_structure.hpp"
#include "oracle.hpp"
#include "support.hpp"

// The oracle itself is pinned to hand-computed sets before it is trusted
// as a reference for the engine.

using atl::build_game_structure;
using atl::game_structure;
using atl::parse_formula;
using atl::state_set;

namespace {

state_set set_of(const game_structure& s, std::initializer_list<const char*> names) {
  state_set out(s.state_count());
  for (const char* name : names)
    out.insert(*s.find_state(name));
  return out;
}

}  // namespace

TEST_CASE("oracle force matches hand-derived one-step sets") {
  game_structure s = build_game_structure(support::fig1_description());
  auto members = [&](std::initializer_list<const char*> names) {
    std::vector<std::string> v(names.begin(), names.end());
    return oracle::resolve_members(s, v);
  };

  REQUIRE(oracle::force(s, members({"1"}), set_of(s, {"q3"})) == set_of(s, {"q2", "q3"}));
  REQUIRE(oracle::force(s, members({"2"}), set_of(s, {"q3"})) == set_of(s, {"q1", "q3"}));
  REQUIRE(oracle::force(s, members({}), set_of(s, {"q1", "q3"})) == set_of(s, {"q1", "q3"}));
  REQUIRE(oracle::force(s, members({"1", "2"}), set_of(s, {"q3"})) ==
          set_of(s, {"q0", "q1", "q2", "q3"}));
  REQUIRE(oracle::force(s, members({"1"}), state_set(s.state_count())).empty_set());
  REQUIRE(oracle::force(s, members({}), state_set::full(s.state_count())) ==
          state_set::full(s.state_count()));
}

TEST_CASE("oracle eval reproduces the worked example sets") {
  game_structure s = build_game_structure(support::fig1_description());
  auto eval = [&](const char* text) { return oracle::eval(s, parse_formula(text)); };

  REQUIRE(eval("x") == set_of(s, {"q1", "q3"}));
  REQUIRE(eval("y") == set_of(s, {"q2", "q3"}));
  REQUIRE(eval("not x") == set_of(s, {"q0", "q2"}));
  REQUIRE(eval("x and y") == set_of(s, {"q3"}));
  REQUIRE(eval("x or y") == set_of(s, {"q1", "q2", "q3"}));
  REQUIRE(eval("x => y") == set_of(s, {"q0", "q2", "q3"}));
  REQUIRE(eval("true") == state_set::full(4));
  REQUIRE(eval("false") == state_set::empty(4));

  REQUIRE(eval("<<1>>@ (x and y)") == set_of(s, {"q2", "q3"}));
  REQUIRE(eval("<<2>>@ (x and y)") == set_of(s, {"q1", "q3"}));
  REQUIRE(eval("<<>>@ x") == set_of(s, {"q1", "q3"}));
  REQUIRE(eval("<<1>>~ (x and y)") == set_of(s, {"q2", "q3"}));
  REQUIRE(eval("<<1,2>>~ (x and y)") == set_of(s, {"q0", "q1", "q2", "q3"}));
  REQUIRE(eval("<<1,2>># x") == set_of(s, {"q1", "q3"}));
  REQUIRE(eval("<<1>># y") == set_of(s, {"q2", "q3"}));
  REQUIRE(eval("<<>># (not x and not y)") == state_set::empty(4));
  REQUIRE(eval("<<1>> (x or y) U (x and y)") == set_of(s, {"q2", "q3"}));
  REQUIRE(eval("<<1>> (not x) U (x and y)") == set_of(s, {"q2", "q3"}));
  REQUIRE(eval("<<2>> y U x") == set_of(s, {"q1", "q3"}));

  SECTION("unknown atom is an error") {
    REQUIRE_THROWS_AS(eval("nosuch"), atl::unknown_proposition_error);
  }
}

TEST_CASE("strategy enumeration agrees with the inductive oracle") {
  game_structure fig1 = build_game_structure(support::fig1_description());

  SECTION("worked example, all operators and coalitions") {
    std::vector<std::vector<std::string>> coalitions = {{}, {"1"}, {"2"}, {"1", "2"}};
    for (const auto& names : coalitions) {
      auto members = oracle::resolve_members(fig1, names);
      state_set x = fig1.states_labeled("x");
      state_set y = fig1.states_labeled("y");

      auto always = oracle::eval_by_strategy_enumeration(fig1, members, oracle::path_op::always,
                                                         x, x);
      REQUIRE(always.has_value());
      REQUIRE(*always == oracle::eval(fig1, atl::formula::always(names, atl::formula::atom("x"))));

      auto eventually = oracle::eval_by_strategy_enumeration(
          fig1, members, oracle::path_op::eventually, y, y);
      REQUIRE(eventually.has_value());
      REQUIRE(*eventually ==
              oracle::eval(fig1, atl::formula::eventually(names, atl::formula::atom("y"))));

      auto until = oracle::eval_by_strategy_enumeration(fig1, members, oracle::path_op::until,
                                                        x.complement(), x & y);
      REQUIRE(until.has_value());
      REQUIRE(*until ==
              oracle::eval(fig1, atl::formula::until(
                                     names, atl::formula::negation(atl::formula::atom("x")),
                                     atl::formula::conjunction(atl::formula::atom("x"),
                                                               atl::formula::atom("y")))));
    }
  }

  SECTION("small random structures, random operand sets") {
    std::mt19937_64 rng(11);
    atl::random_structure_params params;
    params.max_states = 4;
    params.max_players = 2;
    params.max_moves = 2;
    int checked = 0;
    for (int i = 0; i < 40; ++i) {
      game_structure s = atl::random_structure(rng, params);
      state_set phi1(s.state_count()), phi2(s.state_count());
      for (atl::state_id q = 0; q < s.state_count(); ++q) {
        if (rng() & 1)
          phi1.insert(q);
        if (rng() & 1)
          phi2.insert(q);
      }
      std::vector<std::string> names;
      for (const auto& p : s.player_names())
        if (rng() & 1)
          names.push_back(p);
      auto members = oracle::resolve_members(s, names);

      auto always =
          oracle::eval_by_strategy_enumeration(s, members, oracle::path_op::always, phi1, phi1);
      auto eventually = oracle::eval_by_strategy_enumeration(
          s, members, oracle::path_op::eventually, phi1, phi1);
      auto until =
          oracle::eval_by_strategy_enumeration(s, members, oracle::path_op::until, phi1, phi2);
      if (!always || !eventually || !until)
        continue;  // strategy space over budget, skip
      ++checked;

      // inductive clauses over the same raw sets
      const std::size_t n = s.state_count();
      state_set w = phi1;
      for (std::size_t it = 0; it <= n; ++it)
        w = phi1 & oracle::force(s, members, w);
      REQUIRE(*always == w);

      state_set r = phi1;
      for (std::size_t it = 0; it <= n; ++it)
        r = phi1 | oracle::force(s, members, r);
      REQUIRE(*eventually == r);

      state_set u = phi2;
      for (std::size_t it = 0; it <= n; ++it)
        u = phi2 | (phi1 & oracle::force(s, members, u));
      REQUIRE(*until == u);
    }
    REQUIRE(checked >= 20);
  }
}

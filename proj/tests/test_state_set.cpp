#include <catch2/catch_amalgamated.hpp>

#include "atl/state_set.hpp"

using atl::state_set;

TEST_CASE("state_set basics") {
  state_set s(5);
  REQUIRE(s.universe_size() == 5);
  REQUIRE(s.empty_set());
  REQUIRE(s.count() == 0);

  s.insert(0);
  s.insert(3);
  REQUIRE(s.contains(0));
  REQUIRE(s.contains(3));
  REQUIRE(!s.contains(1));
  REQUIRE(s.count() == 2);

  s.erase(0);
  REQUIRE(!s.contains(0));
  REQUIRE(s.count() == 1);

  SECTION("factories") {
    REQUIRE(state_set::empty(4).count() == 0);
    REQUIRE(state_set::full(4).count() == 4);
    REQUIRE(state_set::full(0).count() == 0);
  }

  SECTION("to_vector ascending") {
    state_set t(6);
    t.insert(5);
    t.insert(2);
    t.insert(0);
    REQUIRE(t.to_vector() == std::vector<atl::state_id>{0, 2, 5});
  }
}

TEST_CASE("state_set algebra") {
  state_set a(4), b(4);
  a.insert(0);
  a.insert(1);
  b.insert(1);
  b.insert(2);

  REQUIRE((a & b).to_vector() == std::vector<atl::state_id>{1});
  REQUIRE((a | b).to_vector() == std::vector<atl::state_id>{0, 1, 2});
  REQUIRE((a - b).to_vector() == std::vector<atl::state_id>{0});
  REQUIRE(a.complement().to_vector() == std::vector<atl::state_id>{2, 3});

  SECTION("subset and equality") {
    REQUIRE((a & b).is_subset_of(a));
    REQUIRE((a & b).is_subset_of(b));
    REQUIRE(a.is_subset_of(a | b));
    REQUIRE(!a.is_subset_of(b));
    REQUIRE(state_set::empty(4).is_subset_of(a));
    REQUIRE(a == a);
    REQUIRE(a != b);
    REQUIRE(a.complement().complement() == a);
  }

  SECTION("compound assignment mirrors the operators") {
    state_set c = a;
    c &= b;
    REQUIRE(c == (a & b));
    c = a;
    c |= b;
    REQUIRE(c == (a | b));
    c = a;
    c -= b;
    REQUIRE(c == (a - b));
  }
}

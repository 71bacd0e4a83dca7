#include <catch2/catch_amalgamated.hpp>

#include "aaosl/hoprel.hpp"
#include "support/util.hpp"

using namespace aaosl;
using testutil::shl_scan;

namespace {

// pow2 everywhere except that index 6 gains an illegal level-2 hop to 2,
// which crosses the hop from 4 down to 0
struct CrossingRel final : HopRelation {
  Level max_level(Index j) const override {
    if (j == 6) return 2;
    return pow2_relation().max_level(j);
  }
  Index hop_target(Index j, Level l) const override {
    require_level(j, l);
    if (j == 6 && l == 2) return 2;
    return j - (Index{1} << (l - 1));
  }
};

struct StuckRel final : HopRelation {
  Level max_level(Index j) const override {
    return pow2_relation().max_level(j);
  }
  Index hop_target(Index j, Level l) const override {
    require_level(j, l);
    return l == 1 ? j : j - (Index{1} << (l - 1));  // level 1 fails to progress
  }
};

struct CollidingRel final : HopRelation {
  Level max_level(Index j) const override {
    return pow2_relation().max_level(j);
  }
  Index hop_target(Index j, Level l) const override {
    require_level(j, l);
    return j - 1;  // every level lands on the predecessor
  }
};

}  // namespace

TEST_CASE("max_level on worked indexes") {
  const Pow2HopRelation rel;
  CHECK(rel.max_level(0) == 0);
  CHECK(rel.max_level(8) == 4);
  CHECK(rel.max_level(12) == 3);
  CHECK(rel.max_level(7) == 1);
  CHECK(rel.max_level(1) == 1);
  CHECK(rel.max_level(Index{1} << 40) == 41);
}

TEST_CASE("max_level recursive matches closed form and an independent count") {
  const Pow2HopRelation rel;
  for (Index j = 0; j <= (Index{1} << 16); ++j) {
    // oracle: count factors of two by masking
    Level expect = 0;
    if (j > 0) {
      expect = 1;
      Index v = j;
      while ((v & 1) == 0) {
        v >>= 1;
        ++expect;
      }
    }
    REQUIRE(rel.max_level(j) == expect);
    REQUIRE(pow2_max_level_closed_form(j) == expect);
  }
  CHECK(check_max_level_equivalence(Index{1} << 16).clean());
}

TEST_CASE("hop_target on worked indexes") {
  const Pow2HopRelation rel;
  CHECK(rel.hop_target(12, 3) == 8);
  CHECK(rel.hop_target(8, 4) == 0);
  CHECK(rel.hop_target(6, 1) == 5);
  CHECK_THROWS_AS(rel.hop_target(12, 0), Error);
  CHECK_THROWS_AS(rel.hop_target(12, 4), Error);
  CHECK_THROWS_AS(rel.hop_target(0, 1), Error);
  try {
    rel.hop_target(8, 5);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::level_out_of_range);
  }
}

TEST_CASE("hop_target is exact and in range across the board") {
  const Pow2HopRelation rel;
  for (Index j = 1; j <= (Index{1} << 16); ++j) {
    Level m = rel.max_level(j);
    Index prev = j;
    for (Level l = 1; l <= m; ++l) {
      Index t = rel.hop_target(j, l);
      REQUIRE(t == j - (Index{1} << (l - 1)));
      REQUIRE(t < j);
      REQUIRE(t < prev);  // strictly decreasing, hence injective in l
      prev = t;
    }
  }
}

TEST_CASE("single_hop_level on worked indexes") {
  const Pow2HopRelation rel;
  CHECK(rel.single_hop_level(12, 7) == 3);
  CHECK(rel.single_hop_level(8, 7) == 1);
  CHECK(rel.single_hop_level(12, 4) == 3);
  CHECK_THROWS_AS(rel.single_hop_level(7, 7), Error);
  CHECK_THROWS_AS(rel.single_hop_level(7, 9), Error);
}

TEST_CASE("single_hop_level bit arithmetic matches the level scan") {
  const Pow2HopRelation rel;
  for (Index from = 1; from <= 2048; ++from)
    for (Index to = 0; to < from; ++to)
      REQUIRE(rel.single_hop_level(from, to) == shl_scan(rel, from, to));
}

TEST_CASE("generic scan default agrees with the pow2 override") {
  // view the pow2 relation through a wrapper that keeps the base-class scan
  struct Wrapped final : HopRelation {
    Level max_level(Index j) const override {
      return pow2_relation().max_level(j);
    }
    Index hop_target(Index j, Level l) const override {
      return pow2_relation().hop_target(j, l);
    }
  } wrapped;
  const Pow2HopRelation rel;
  for (Index from = 1; from <= 512; ++from)
    for (Index to = 0; to < from; ++to)
      REQUIRE(wrapped.single_hop_level(from, to) ==
              rel.single_hop_level(from, to));
}

TEST_CASE("deps_of on worked indexes") {
  const Pow2HopRelation rel;
  CHECK(rel.deps_of(8) == std::vector<Index>{7, 6, 4, 0});
  CHECK(rel.deps_of(0).empty());
  CHECK(rel.deps_of(12) == std::vector<Index>{11, 10, 8});
}

TEST_CASE("hop laws hold exhaustively for the power-of-two relation") {
  CHECK(check_hop_laws(pow2_relation(), 1).clean());
  LawReport report = check_hop_laws(pow2_relation(), 1024);
  CAPTURE(report.violations.size());
  CHECK(report.clean());
  CHECK(report.hops_checked > 1024);
}

TEST_CASE("indexes inside a hop's span have lower levels") {
  CHECK(check_mid_levels(pow2_relation(), 1024).clean());
}

TEST_CASE("law checker flags the crossing 6 -> 2 hop") {
  CrossingRel rel;
  LawReport report = check_hop_laws(rel, 8);
  REQUIRE_FALSE(report.clean());
  bool found = false;
  for (const LawViolation& v : report.violations) {
    if (v.law != "hop-no-cross") continue;
    if ((v.j1 == 6 && v.j2 == 4) || (v.j1 == 8 && v.j2 == 6)) found = true;
  }
  CHECK(found);
}

TEST_CASE("law checker flags progress and injectivity breaks") {
  CHECK_FALSE(check_hop_laws(StuckRel{}, 4).clean());
  LawReport colliding = check_hop_laws(CollidingRel{}, 8);
  REQUIRE_FALSE(colliding.clean());
  bool injective_break = false;
  for (const LawViolation& v : colliding.violations)
    if (v.law == "hop-injective") injective_break = true;
  CHECK(injective_break);
}

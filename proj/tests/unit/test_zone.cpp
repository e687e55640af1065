#include <catch_amalgamated.hpp>

#include "nzf/zone.hpp"
#include "support/zone_suite.hpp"

using namespace nzf;

namespace {

// dim 3: clocks x1, x2
Zone box(std::int32_t x1_hi, std::int32_t x2_hi) {
  return Zone::universal(3).constrain(1, 0, weak(x1_hi)).constrain(2, 0, weak(x2_hi));
}

}  // namespace

TEST_CASE("bound arithmetic") {
  CHECK(bound_add(weak(2), weak(3)) == weak(5));
  CHECK(bound_add(weak(2), strict(3)) == strict(5));
  CHECK(bound_add(strict(-1), strict(1)) == strict(0));
  CHECK(bound_add(kInfinity, weak(-4)) == kInfinity);
  CHECK(bound_negate(weak(3)) == strict(-3));
  CHECK(bound_negate(strict(3)) == weak(-3));
  CHECK(strict(2) < weak(2));
  CHECK(weak(2) < strict(3));
}

TEST_CASE("universal, zero and empty") {
  const Zone u = Zone::universal(3);
  CHECK_FALSE(u.is_empty());
  CHECK(u.at(1, 0) == kInfinity);
  CHECK(u.at(0, 1) == kLeZero);
  const Zone z = Zone::zero(3);
  CHECK(z.at(1, 2) == kLeZero);
  CHECK(includes(u, z));
  CHECK_FALSE(includes(z, u));
  CHECK(Zone::empty(3).is_empty());
  CHECK(includes(z, Zone::empty(3)));
}

TEST_CASE("constrain detects inconsistency") {
  Zone z = Zone::universal(2);
  z.constrain(1, 0, weak(2)).constrain(0, 1, weak(-3));
  CHECK(z.is_empty());
  Zone t = Zone::universal(2);
  t.constrain(1, 0, weak(2)).constrain(0, 1, weak(-2));
  CHECK_FALSE(t.is_empty());
  t.constrain(1, 0, strict(2));
  CHECK(t.is_empty());
}

TEST_CASE("free_clock by hand") {
  // x1 <= 2 and x2 - x1 <= 1 gives x2 <= 3 once x1 is forgotten
  Zone z = box(2, 10);
  z.constrain(2, 1, weak(1));
  const Zone freed = free_clock(z, 1);
  CHECK(freed == Zone::universal(3).constrain(2, 0, weak(3)));
  CHECK(freed.at(1, 0) == kInfinity);
  CHECK(freed.at(0, 1) == kLeZero);
}

TEST_CASE("reset_pre and reset by hand") {
  Zone z = Zone::universal(3);
  z.constrain(1, 0, weak(0)).constrain(0, 2, weak(-2));  // x1 == 0, x2 >= 2
  CHECK(reset_pre(z, {1}) == Zone::universal(3).constrain(0, 2, weak(-2)));

  Zone late = Zone::universal(3).constrain(0, 1, weak(-1));  // x1 >= 1
  CHECK(reset_pre(late, {1}).is_empty());
  CHECK(reset_pre(late, {2}) == late);

  Zone diag = box(2, 2);
  diag.constrain(0, 1, weak(-1)).constrain(1, 2, weak(0)).constrain(2, 1, weak(0));  // 1 <= x1 == x2 <= 2
  const Zone want = Zone::universal(3).constrain(1, 0, weak(0)).constrain(2, 0, weak(2)).constrain(0, 2, weak(-1));
  CHECK(reset(diag, {1}) == want);
  CHECK(reset(diag, {1, 2}) == Zone::zero(3));
}

TEST_CASE("time operators by hand") {
  const Zone b = box(1, 1);
  const Zone up = time_up(b);
  CHECK(up.at(1, 0) == kInfinity);
  CHECK(up.at(1, 2) == weak(1));
  CHECK(includes(up, b));
  const Zone late = Zone::universal(2).constrain(0, 1, strict(-3));  // x > 3
  CHECK(time_down(late) == Zone::universal(2));
  CHECK(includes(time_down(Zone::zero(3)), Zone::zero(3)));
  CHECK(time_down(Zone::zero(3)) == Zone::zero(3));
}

TEST_CASE("complement and subtract by hand") {
  const Zone b = Zone::universal(2).constrain(1, 0, weak(2)).constrain(0, 1, strict(-1));  // 1 < x <= 2
  const auto comp = complement(b);
  REQUIRE(comp.size() == 2);
  const auto rest = subtract(Zone::universal(2), b);
  REQUIRE(rest.size() == 2);
  CHECK(complement(Zone::universal(2)).empty());
  CHECK(subtract(b, Zone::universal(2)).empty());
  const auto whole = subtract(b, Zone::empty(2));
  REQUIRE(whole.size() == 1);
  CHECK(whole[0] == b);
}

TEST_CASE("normalize_ceiling") {
  const Zone big = Zone::universal(2).constrain(0, 1, weak(-7)).constrain(1, 0, weak(9));
  const Zone n = normalize_ceiling(big, Ceiling{3});
  CHECK(n.at(1, 0) == kInfinity);
  CHECK(n.at(0, 1) == strict(-3));
  CHECK(includes(n, big));
  const Zone small = box(2, 3);
  CHECK(normalize_ceiling(small, Ceiling{3}) == small);
}

TEST_CASE("has_no_upper_bounds and close_upper_bounds") {
  CHECK(has_no_upper_bounds(Zone::universal(3)));
  CHECK_FALSE(has_no_upper_bounds(box(2, 100)));
  CHECK(has_no_upper_bounds(time_up(Zone::zero(3))));
  const Zone s = Zone::universal(2).constrain(1, 0, strict(2));
  CHECK(close_upper_bounds(s) == Zone::universal(2).constrain(1, 0, weak(2)));
}

TEST_CASE("randomized zone suite against sampling") {
  const auto rep = nzf::testing::run_zone_suite(7, 250);
  for (const auto& f : rep.failures) UNSCOPED_INFO(f);
  CHECK(rep.zones == 500);
  CHECK(rep.failures.empty());
}

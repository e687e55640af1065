#include <catch_amalgamated.hpp>

#include <random>

#include "nzf/state_set.hpp"
#include "support/zone_suite.hpp"

using namespace nzf;
using nzf::testing::Point;

namespace {

constexpr std::size_t kModes = 2;
constexpr std::size_t kClocks = 2;
constexpr std::size_t kDim = kClocks + 1;

StateSet random_set(std::mt19937& rng) {
  StateSet s(kModes, kDim);
  std::uniform_int_distribution<int> count(0, 3);
  for (ModeId q = 0; q < kModes; ++q) {
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      const Zone z = nzf::testing::zone_by_constrain(kDim, nzf::testing::random_constraints(rng, kClocks, 3));
      if (!z.is_empty()) s.add(q, z);
    }
  }
  return s;
}

bool member(const StateSet& s, ModeId q, const Point& p) { return nzf::testing::contains_any(s.zones(q), p); }

}  // namespace

TEST_CASE("add keeps the list free of covered zones") {
  StateSet s(1, 2);
  const Zone small = Zone::universal(2).constrain(1, 0, weak(1));
  const Zone large = Zone::universal(2).constrain(1, 0, weak(3));
  CHECK(s.add(0, small));
  CHECK_FALSE(s.add(0, small));
  CHECK(s.add(0, large));
  CHECK(s.zone_count() == 1);
  CHECK_FALSE(s.add(0, small));
  CHECK_FALSE(s.is_empty());
}

TEST_CASE("empty sets") {
  const StateSet e(3, 2);
  CHECK(e.is_empty());
  CHECK(e.zone_count() == 0);
  StateSet a(3, 2);
  a.add(1, Zone::universal(2));
  CHECK(includes(a, e));
  CHECK_FALSE(includes(e, a));
  CHECK(subtract(a, a).is_empty());
  CHECK(equals(unite(a, e), a));
}

TEST_CASE("set operations agree with sampling") {
  const auto points = nzf::testing::grid(kClocks, 10);
  std::mt19937 rng(11);
  for (int round = 0; round < 150; ++round) {
    const StateSet a = random_set(rng), b = random_set(rng);
    const StateSet u = unite(a, b), i = intersect(a, b), d = subtract(a, b);
    const StateSet fa = free_clock(a, 1), za = constrain_zero(a, 2);
    const StateSet ca = constrain(a, 1, 2, strict(1));
    bool u_ok = true, i_ok = true, d_ok = true, sub_ab = true, sub_ba = true, c_ok = true, z_ok = true;
    for (ModeId q = 0; q < kModes; ++q)
      for (const auto& p : points) {
        const bool in_a = member(a, q, p), in_b = member(b, q, p);
        u_ok &= member(u, q, p) == (in_a || in_b);
        i_ok &= member(i, q, p) == (in_a && in_b);
        d_ok &= member(d, q, p) == (in_a && !in_b);
        if (in_b && !in_a) sub_ab = false;
        if (in_a && !in_b) sub_ba = false;
        c_ok &= member(ca, q, p) == (in_a && p[1] - p[2] < 1);
        z_ok &= member(za, q, p) == (in_a && p[2] == 0);
        if (in_a) {
          // every point of a stays in the projection, with x1 moved anywhere
          Point moved = p;
          moved[1] = 9.75;
          if (!member(fa, q, moved)) c_ok = false;
        }
      }
    INFO("round " << round << "\na:\n" << a.to_string({"m0", "m1"}, {"x", "y"}) << "b:\n" << b.to_string({"m0", "m1"}, {"x", "y"}));
    CHECK(u_ok);
    CHECK(i_ok);
    CHECK(d_ok);
    CHECK(c_ok);
    CHECK(z_ok);
    CHECK(includes(a, b) == sub_ab);
    CHECK(includes(b, a) == sub_ba);
    CHECK(equals(a, b) == (sub_ab && sub_ba));
    CHECK(includes(u, a));
    CHECK(includes(a, i));
  }
}

#pragma once

// Difference bounds (~, d) with ~ in {<, <=} packed into one integer:
// raw = 2*d + (~ is <= ? 1 : 0). The integer order on raw values coincides
// with the tightness order on bounds, so min/compare work directly.

#include <cstdint>
#include <limits>
#include <string>

namespace nzf {

using raw_t = std::int32_t;

enum class BoundRel : std::uint8_t { Strict = 0, Weak = 1 };

inline constexpr raw_t kInfinity = std::numeric_limits<raw_t>::max() - 1;  // (<, inf)
inline constexpr raw_t kLeZero = 1;                                          // (<=, 0)
inline constexpr raw_t kLtZero = 0;                                          // (<, 0)

constexpr raw_t make_bound(std::int32_t value, BoundRel rel) noexcept {
  return value * 2 + static_cast<raw_t>(rel);
}
constexpr raw_t weak(std::int32_t value) noexcept { return make_bound(value, BoundRel::Weak); }
constexpr raw_t strict(std::int32_t value) noexcept { return make_bound(value, BoundRel::Strict); }

constexpr bool is_infinite(raw_t b) noexcept { return b == kInfinity; }
constexpr std::int32_t bound_value(raw_t b) noexcept { return b >> 1; }
constexpr BoundRel bound_rel(raw_t b) noexcept { return static_cast<BoundRel>(b & 1); }
constexpr bool is_weak(raw_t b) noexcept { return (b & 1) != 0; }

/// (r1,d1) + (r2,d2) = (weak iff both weak, d1 + d2); infinity absorbs.
constexpr raw_t bound_add(raw_t a, raw_t b) noexcept {
  if (a == kInfinity || b == kInfinity) return kInfinity;
  return a + b - ((a | b) & 1);
}

/// Complement of x - y ~ d, expressed on the reversed difference y - x.
/// not(x - y <= d) is y - x < -d; not(x - y < d) is y - x <= -d.
constexpr raw_t bound_negate(raw_t b) noexcept { return 1 - b; }

/// A strong type view of a raw bound, for callers that want the fields.
struct Bound {
  BoundRel rel = BoundRel::Strict;
  std::int32_t value = 0;
  bool infinite = true;

  static constexpr Bound from_raw(raw_t b) noexcept {
    if (is_infinite(b)) return Bound{};
    return Bound{bound_rel(b), bound_value(b), false};
  }
  constexpr raw_t raw() const noexcept { return infinite ? kInfinity : make_bound(value, rel); }
  friend constexpr bool operator==(const Bound&, const Bound&) = default;
};

inline std::string bound_to_string(raw_t b) {
  if (is_infinite(b)) return "<inf";
  return (is_weak(b) ? "<=" : "<") + std::to_string(bound_value(b));
}

}  // namespace nzf

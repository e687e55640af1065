#pragma once

// Zones as canonical difference-bound matrices.
//
// Entry m(i, j) bounds the difference x_i - x_j. Index 0 is the reference
// clock whose value is always zero, so m(i, 0) is the upper bound of x_i
// and m(0, i) the negated lower bound. All public operations take canonical
// zones and return canonical zones; an inconsistent system is represented by
// the empty flag rather than a negative diagonal.

#include <Eigen/Core>

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "nzf/bound.hpp"

namespace nzf {

using ClockIndex = std::size_t;
using DbmMatrix = Eigen::Matrix<raw_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Largest constant a zone may mention after normalization.
struct Ceiling {
  std::int32_t value = 0;
};

class Zone {
 public:
  Zone() = default;

  /// All valuations with non-negative clocks. `dim` counts the zero clock.
  static Zone universal(std::size_t dim);
  /// The single valuation where every clock is 0.
  static Zone zero(std::size_t dim);
  static Zone empty(std::size_t dim);
  /// Builds a zone from an arbitrary bound matrix and canonicalizes it.
  static Zone from_matrix(DbmMatrix m);

  std::size_t dim() const noexcept { return dim_; }
  bool is_empty() const noexcept { return empty_; }
  raw_t at(ClockIndex i, ClockIndex j) const { return m_(i, j); }
  const DbmMatrix& matrix() const noexcept { return m_; }

  /// Conjoins x_i - x_j ~ b and restores canonical form incrementally.
  Zone& constrain(ClockIndex i, ClockIndex j, raw_t b);

  bool operator==(const Zone& other) const;

  std::string to_string(const std::vector<std::string>& clock_names = {}) const;

 private:
  friend Zone canonicalize(Zone z);
  Zone(std::size_t dim, DbmMatrix m, bool empty) : dim_(dim), m_(std::move(m)), empty_(empty) {}

  std::size_t dim_ = 0;
  DbmMatrix m_;
  bool empty_ = true;
};

std::ostream& operator<<(std::ostream& os, const Zone& z);

/// All-pairs shortest path closure; marks the zone empty on a negative cycle.
Zone canonicalize(Zone z);

Zone intersect(const Zone& a, const Zone& b);

/// True iff every valuation of `inner` lies in `outer`.
bool includes(const Zone& outer, const Zone& inner);

/// Past closure {v | exists d >= 0, v + d in z}.
Zone time_down(const Zone& z);
/// Future closure {v + d | v in z, d >= 0}.
Zone time_up(const Zone& z);

/// Existential elimination of clock x (x != 0).
Zone free_clock(const Zone& z, ClockIndex x);

/// Weakest precondition of resetting `clocks`: {v | v[clocks := 0] in z}.
Zone reset_pre(const Zone& z, const std::vector<ClockIndex>& clocks);
/// Image of z under resetting `clocks` to 0.
Zone reset(const Zone& z, const std::vector<ClockIndex>& clocks);

/// Zones whose union is exactly the non-negative valuations outside z.
/// The i-th zone satisfies the first i-1 tight constraints of z (row-major
/// order) and violates the i-th, so the pieces are pairwise disjoint.
std::vector<Zone> complement(const Zone& z);

/// Pieces of `a` outside `b`, pairwise disjoint.
std::vector<Zone> subtract(const Zone& a, const Zone& b);

/// Uniform-ceiling extrapolation: bounds above c are dropped and bounds below
/// -c are raised to (<,-c). The result contains z.
Zone normalize_ceiling(const Zone& z, Ceiling c);

/// Every clock is unbounded above (m(x, 0) = (<, inf)).
bool has_no_upper_bounds(const Zone& z);

/// Weakens strict upper bounds on clocks to non-strict ones. For a convex
/// set A this is the set of points reachable by letting time pass from A
/// while staying in A except possibly at the end point.
Zone close_upper_bounds(const Zone& z);

}  // namespace nzf

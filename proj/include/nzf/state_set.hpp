#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nzf/zone.hpp"

namespace nzf {

using ModeId = std::size_t;

/// A finite union of (mode, zone) pairs. Zones are kept canonical and
/// non-empty, and no listed zone is included in another zone of the same
/// mode. Equality is semantic (see `equals`), not structural.
class StateSet {
 public:
  StateSet() = default;
  StateSet(std::size_t mode_count, std::size_t dim) : dim_(dim), zones_(mode_count) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t mode_count() const noexcept { return zones_.size(); }
  const std::vector<Zone>& zones(ModeId q) const { return zones_.at(q); }

  /// Adds z under mode q unless an existing zone covers it; drops existing
  /// zones that z covers. Returns true iff z was inserted.
  bool add(ModeId q, const Zone& z);
  void add_all(const StateSet& other);

  bool is_empty() const noexcept;
  std::size_t zone_count() const noexcept;

  std::string to_string(const std::vector<std::string>& mode_names,
                        const std::vector<std::string>& clock_names) const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::vector<Zone>> zones_;
};

StateSet unite(const StateSet& a, const StateSet& b);
StateSet intersect(const StateSet& a, const StateSet& b);
/// Set difference a \ b.
StateSet subtract(const StateSet& a, const StateSet& b);
/// a is a subset of b.
bool includes(const StateSet& b, const StateSet& a);
bool equals(const StateSet& a, const StateSet& b);
/// Projects clock x away from every zone.
StateSet free_clock(const StateSet& s, ClockIndex x);
/// Restricts every zone to x = 0.
StateSet constrain_zero(const StateSet& s, ClockIndex x);
/// Restricts every zone by x_i - x_j ~ b.
StateSet constrain(const StateSet& s, ClockIndex i, ClockIndex j, raw_t b);

}  // namespace nzf

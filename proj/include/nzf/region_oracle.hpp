#pragma once

// Explicit region graph for small automata, used as ground truth in tests.
//
// Besides the automaton clocks the graph carries one extra clock `tick`
// with ceiling 1. A tick edge resets it whenever it has reached 1, so a
// run is time-divergent iff it can take tick edges infinitely often, and a
// fair cycle is an SCC containing a tick edge.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nzf/automaton.hpp"
#include "nzf/formula.hpp"
#include "nzf/state_set.hpp"

namespace nzf {

struct Region {
  ModeId mode = 0;
  /// Per clock, the tick clock last: integer part, or ceiling + 1 when the
  /// value is above the ceiling.
  std::vector<std::int32_t> ip;
  /// Per clock: 0 if the fractional part is zero (or the clock is above its
  /// ceiling), else the 1-based rank of the fractional part.
  std::vector<std::int32_t> rank;

  friend auto operator<=>(const Region&, const Region&) = default;
};

class RegionOracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RegionOracle {
 public:
  using RegionSet = std::vector<char>;

  enum class EdgeKind : std::uint8_t { Time, Discrete, Tick };
  struct Edge {
    std::size_t to;
    EdgeKind kind;
  };

  static constexpr std::size_t kMaxClocks = 3;
  static constexpr std::int32_t kMaxCeiling = 4;

  /// Per-clock ceilings from the automaton and, optionally, the formula.
  static std::vector<std::int32_t> clock_ceilings(const TimedAutomaton& a, const Formula* f = nullptr);

  /// Throws RegionOracleError beyond kMaxClocks clocks or kMaxCeiling.
  RegionOracle(const TimedAutomaton& a, std::vector<std::int32_t> ceilings);
  RegionOracle(const TimedAutomaton& a, const Formula* f) : RegionOracle(a, clock_ceilings(a, f)) {}

  std::size_t size() const noexcept { return regions_.size(); }
  const Region& region(std::size_t i) const { return regions_.at(i); }
  const std::vector<Edge>& successors(std::size_t i) const { return succ_.at(i); }
  std::size_t tick_clock() const noexcept { return clocks_; }

  /// Region holding the valuation (one value per automaton clock, tick
  /// clock at 0), or nothing if the mode invariant fails.
  std::optional<std::size_t> locate(ModeId q, const std::vector<double>& v) const;

  RegionSet all() const { return RegionSet(size(), 1); }
  RegionSet sat(const StatePredicate& p) const;
  RegionSet negate(const RegionSet& s) const;
  static RegionSet unite(const RegionSet& a, const RegionSet& b);
  static RegionSet intersect(const RegionSet& a, const RegionSet& b);

  /// Regions satisfying E s1 U s2 (no divergence requirement on s2).
  RegionSet until(const RegionSet& s1, const RegionSet& s2) const;
  /// Regions from which a run keeps s0 until it enters a divergent cycle
  /// staying in s1 and visiting s2.
  RegionSet nzf(const RegionSet& s0, const RegionSet& s1, const RegionSet& s2) const;
  RegionSet freeze(const RegionSet& s, ClockIndex x) const;

  RegionSet eval(const Formula& f, bool non_zeno = true) const;

  /// Regions with the tick clock at 0, as zones over `dim` engine clocks
  /// (automaton clocks then one unconstrained trailing clock).
  StateSet to_state_set(const RegionSet& s, std::size_t dim) const;

 private:
  bool holds(const Region& r, const ClockAtom& a) const;
  bool holds(const Region& r, const Conjunction& c) const;
  bool admissible(const Region& r) const;
  std::optional<Region> time_successor(const Region& r) const;
  Region reset(Region r, const std::vector<ClockIndex>& clocks) const;
  std::size_t id_of(const Region& r) const;
  void enumerate();
  void build_edges();

  TimedAutomaton a_;
  std::size_t clocks_;                 // automaton clocks, excluding tick
  std::vector<std::int32_t> ceiling_;  // per clock, tick last
  std::vector<Region> regions_;
  std::map<Region, std::size_t> index_;
  std::vector<std::vector<Edge>> succ_;
  std::vector<std::vector<Edge>> pred_;
};

}  // namespace nzf

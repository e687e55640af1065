#pragma once

#include <vector>

#include "nzf/automaton.hpp"
#include "nzf/state_set.hpp"

namespace nzf {

/// Symbolic view of an automaton: zone encodings of invariants and guards,
/// and the one-step operators over state sets. Every state set produced here
/// is confined to the invariant of its mode.
///
/// Zones have one clock per automaton clock (including clocks added for
/// formula freeze quantifiers) plus one trailing auxiliary clock used to
/// measure cycle time; the auxiliary clock is unconstrained everywhere
/// except inside cycle computations.
class SymbolicSystem {
 public:
  SymbolicSystem(const TimedAutomaton& a, Ceiling ceiling);

  const TimedAutomaton& automaton() const noexcept { return a_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t mode_count() const noexcept { return a_.modes.size(); }
  ClockIndex aux_clock() const noexcept { return dim_ - 1; }
  Ceiling ceiling() const noexcept { return ceiling_; }
  const Zone& invariant(ModeId q) const { return invariants_.at(q); }
  std::vector<std::string> clock_names() const;

  StateSet empty() const { return StateSet(mode_count(), dim_); }
  /// Every state that satisfies its mode invariant.
  StateSet all() const;

  Zone conjunction_zone(const Conjunction& c) const;
  Zone normalize(const Zone& z) const { return normalize_ceiling(z, ceiling_); }

  /// States satisfying p. Throws ModelError on unknown names.
  StateSet sat(const StatePredicate& p) const;
  StateSet sat_proposition(std::string_view name) const;
  StateSet sat_clock(const ClockAtom& atom) const;

  /// Complement within the invariant-satisfying states.
  StateSet negate(const StateSet& s) const;

  /// Weakest precondition of transition e into s.
  StateSet xtion_bck(const StateSet& s, const Transition& e) const;
  /// Union of xtion_bck over all transitions.
  StateSet pre_disc(const StateSet& s) const;
  /// States that reach s by letting time pass (within the invariant).
  StateSet time_bck(const StateSet& s) const;
  /// States that reach `target` by letting time pass while staying inside
  /// `within` on the whole closed interval. Requires target within `within`.
  StateSet time_bck_within(const StateSet& within, const StateSet& target) const;

  StateSet post_time(const StateSet& s) const;
  StateSet post_disc(const StateSet& s, const Transition& e) const;

  /// Zone-level forward steps, for explicit searches.
  Zone delay(ModeId q, const Zone& z) const { return normalize(intersect(time_up(z), invariants_[q])); }
  /// Successor of z through transition `id`; empty if the guard is not met.
  Zone fire(std::size_t id, const Zone& z) const;
  const std::vector<std::size_t>& outgoing(ModeId q) const { return outgoing_.at(q); }

 private:
  TimedAutomaton a_;
  Ceiling ceiling_;
  std::size_t dim_;
  std::vector<Zone> invariants_;
  std::vector<Zone> guards_;
  std::vector<std::vector<std::size_t>> incoming_;  // transitions by target mode
  std::vector<std::vector<std::size_t>> outgoing_;
};

}  // namespace nzf

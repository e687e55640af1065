#pragma once

// Timed automata: modes with conjunctive invariants, guarded transitions
// with clock resets, and an initial condition over modes and clocks.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nzf/state_set.hpp"

namespace nzf {

enum class CompareOp : std::uint8_t { Lt, Le, Eq, Ge, Gt };

std::string_view to_string(CompareOp op);

/// x ~ c, where clock 0 is the constant-zero reference clock.
struct ClockAtom {
  ClockIndex clock = 0;
  CompareOp op = CompareOp::Eq;
  std::int32_t constant = 0;
  friend bool operator==(const ClockAtom&, const ClockAtom&) = default;
};

using Conjunction = std::vector<ClockAtom>;

/// Boolean combination of mode propositions and clock atoms.
struct StatePredicate {
  enum class Kind : std::uint8_t { True, Prop, Clock, And, Or, Not };

  Kind kind = Kind::True;
  std::string prop;  // mode name or label, for Kind::Prop
  ClockAtom atom;    // for Kind::Clock
  std::vector<StatePredicate> children;

  static StatePredicate truth() { return {}; }
  static StatePredicate proposition(std::string name);
  static StatePredicate clock(ClockAtom a);
  static StatePredicate conj(StatePredicate a, StatePredicate b);
  static StatePredicate disj(StatePredicate a, StatePredicate b);
  static StatePredicate negation(StatePredicate a);

  friend bool operator==(const StatePredicate&, const StatePredicate&) = default;
};

struct Mode {
  std::string name;
  Conjunction invariant;
  std::vector<std::string> labels;
};

struct Transition {
  std::size_t id = 0;
  ModeId source = 0;
  ModeId target = 0;
  Conjunction guard;
  std::vector<ClockIndex> resets;
};

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TimedAutomaton {
  /// Clock names; clock k is ClockIndex k + 1. Clocks appended by formula
  /// freeze quantifiers follow the automaton's own clocks.
  std::vector<std::string> clocks;
  std::vector<Mode> modes;
  std::vector<Transition> transitions;
  StatePredicate initial;

  std::optional<ModeId> find_mode(std::string_view name) const;
  std::optional<ClockIndex> find_clock(std::string_view name) const;
  /// Modes named `name` or carrying it as a label.
  std::vector<ModeId> modes_with(std::string_view name) const;
  bool has_proposition(std::string_view name) const;

  /// Appends a fresh clock and returns its index.
  ClockIndex add_clock(std::string name);

  /// Largest constant appearing in invariants, guards and the initial condition.
  std::int32_t max_constant() const;

  std::vector<std::string> mode_names() const;

  /// Throws ModelError when a reference is dangling.
  void validate() const;
};

std::int32_t max_constant(const StatePredicate& p);

}  // namespace nzf

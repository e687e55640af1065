#pragma once

// Branching-time formulas over timed automata, with the fairness operators
// EGF (some run visits f infinitely often) and EFG (some run eventually
// stays in f).
//
// Concrete syntax, loosest binding first:
//   f -> g                      implication (right associative)
//   f or g, f || g
//   f and g, f && g
//   not f, !f, EG f, EF f, EGF f, EFG f, AG f, AF f, AGF f, AFG f
//   E f U g, E (f U g), EU(f, g), A f U g, AU(f, g)
//   freeze x: f                 x is a fresh formula clock, reset to 0
//   true, false, mode_or_label, clock op int, (f)

#include <memory>
#include <string>
#include <string_view>

#include "nzf/automaton.hpp"
#include "nzf/parse_error.hpp"

namespace nzf {

enum class FormulaKind : std::uint8_t {
  // core grammar
  Atom,
  Or,
  Not,
  Freeze,
  ExistsUntil,
  ExistsAlways,
  ExistsAlwaysEventually,
  ExistsEventuallyAlways,
  // shorthands, removed by expand_shorthands
  True,
  False,
  And,
  Implies,
  ExistsEventually,
  ForallUntil,
  ForallAlways,
  ForallEventually,
  ForallAlwaysEventually,
  ForallEventuallyAlways,
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaKind kind = FormulaKind::True;
  StatePredicate atom;         // Prop or Clock, for Atom
  ClockIndex freeze_clock = 0;  // for Freeze
  FormulaPtr lhs;
  FormulaPtr rhs;
};

namespace f {
FormulaPtr atom(StatePredicate p);
FormulaPtr prop(std::string name);
FormulaPtr clock(ClockIndex x, CompareOp op, std::int32_t c);
FormulaPtr truth();
FormulaPtr falsity();
FormulaPtr lor(FormulaPtr a, FormulaPtr b);
FormulaPtr land(FormulaPtr a, FormulaPtr b);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr lnot(FormulaPtr a);
FormulaPtr freeze(ClockIndex x, FormulaPtr body);
FormulaPtr eu(FormulaPtr a, FormulaPtr b);
FormulaPtr au(FormulaPtr a, FormulaPtr b);
FormulaPtr eg(FormulaPtr a);
FormulaPtr ef(FormulaPtr a);
FormulaPtr egf(FormulaPtr a);
FormulaPtr efg(FormulaPtr a);
FormulaPtr ag(FormulaPtr a);
FormulaPtr af(FormulaPtr a);
FormulaPtr agf(FormulaPtr a);
FormulaPtr afg(FormulaPtr a);
}  // namespace f

/// Parses without expanding shorthands. Freeze clocks are appended to `a`.
FormulaPtr parse_formula_raw(std::string_view text, TimedAutomaton& a);
/// Parses and expands all shorthands to the core grammar.
FormulaPtr parse_formula(std::string_view text, TimedAutomaton& a);

FormulaPtr expand_shorthands(const FormulaPtr& f);
bool is_core(const Formula& f);
bool same_formula(const Formula& a, const Formula& b);

std::string print_formula(const Formula& f, const TimedAutomaton& a);

/// Largest constant compared against in the formula.
std::int32_t max_constant(const Formula& f);

}  // namespace nzf

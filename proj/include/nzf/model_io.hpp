#pragma once

// Text format for timed automata:
//
//   clocks x y;
//   mode idle  { inv: true; labels: quiet; }
//   mode busy  { inv: x <= 3; }
//   trans idle -> busy { guard: x >= 2; reset: x; }
//   init idle and x == 0 and y == 0;
//
// Guards and invariants are conjunctions of `clock op int`; the initial
// condition is any and/or/not combination of modes, labels and clock atoms.

#include <string>
#include <string_view>

#include "nzf/automaton.hpp"
#include "nzf/parse_error.hpp"

namespace nzf {

TimedAutomaton parse_model(std::string_view text);
TimedAutomaton load_model(const std::string& path);

std::string print_model(const TimedAutomaton& a);
std::string print_predicate(const StatePredicate& p, const TimedAutomaton& a);

}  // namespace nzf

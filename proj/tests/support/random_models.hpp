#pragma once

// Small random automata and formulas for cross-checking against the region
// oracle. Everything is a function of the seed.

#include <random>
#include <string>

#include "nzf/automaton.hpp"
#include "nzf/formula.hpp"

namespace nzf::testing {

struct RandomShape {
  int max_modes = 3;
  int max_clocks = 2;
  int max_constant = 3;
  int max_transitions = 5;
};

inline ClockAtom random_atom(std::mt19937& rng, std::size_t clocks, int max_c) {
  std::uniform_int_distribution<std::size_t> clock(1, clocks);
  std::uniform_int_distribution<int> op(0, 4), c(0, max_c);
  return ClockAtom{clock(rng), static_cast<CompareOp>(op(rng)), c(rng)};
}

inline TimedAutomaton random_automaton(std::mt19937& rng, const RandomShape& shape = {}) {
  TimedAutomaton a;
  std::uniform_int_distribution<int> modes(1, shape.max_modes), clocks(1, shape.max_clocks);
  std::uniform_int_distribution<int> coin(0, 1), die(0, 5), cst(1, shape.max_constant);
  std::uniform_int_distribution<int> ntrans(0, shape.max_transitions);
  const int nc = clocks(rng);
  for (int i = 0; i < nc; ++i) a.add_clock("x" + std::to_string(i + 1));
  const int nm = modes(rng);
  for (int i = 0; i < nm; ++i) {
    Mode m;
    m.name = "m" + std::to_string(i);
    if (die(rng) < 2) {
      std::uniform_int_distribution<std::size_t> clock(1, nc);
      m.invariant.push_back({clock(rng), coin(rng) ? CompareOp::Le : CompareOp::Lt, cst(rng)});
    }
    if (coin(rng)) m.labels.push_back("p");
    if (coin(rng)) m.labels.push_back("q");
    a.modes.push_back(std::move(m));
  }
  a.modes[std::uniform_int_distribution<int>(0, nm - 1)(rng)].labels.push_back("p");
  a.modes[std::uniform_int_distribution<int>(0, nm - 1)(rng)].labels.push_back("q");
  const int nt = ntrans(rng);
  std::uniform_int_distribution<std::size_t> mode(0, nm - 1);
  for (int i = 0; i < nt; ++i) {
    Transition t;
    t.id = a.transitions.size();
    t.source = mode(rng);
    t.target = mode(rng);
    const int guards = die(rng) % 3;
    for (int g = 0; g < guards; ++g) t.guard.push_back(random_atom(rng, nc, shape.max_constant));
    for (int x = 1; x <= nc; ++x)
      if (coin(rng)) t.resets.push_back(x);
    a.transitions.push_back(std::move(t));
  }
  a.initial = StatePredicate::proposition(a.modes[0].name);
  return a;
}

/// A state predicate over labels p, q and clock atoms.
inline FormulaPtr random_state_formula(std::mt19937& rng, const TimedAutomaton& a, const std::string& label,
                                       int max_c = 3) {
  std::uniform_int_distribution<int> pick(0, 3);
  auto base = f::prop(label);
  switch (pick(rng)) {
    case 0: return base;
    case 1: return expand_shorthands(f::land(base, f::atom(StatePredicate::clock(random_atom(rng, a.clocks.size(), max_c)))));
    case 2: return f::lor(base, f::atom(StatePredicate::clock(random_atom(rng, a.clocks.size(), max_c))));
    default: return f::lnot(base);
  }
}

}  // namespace nzf::testing

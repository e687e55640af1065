#pragma once

// Parametric benchmark families, flattened into a single product automaton.
// Only product modes reachable in the untimed graph from the initial mode
// are emitted.

#include <optional>
#include <string>
#include <string_view>

#include "nzf/automaton.hpp"
#include "nzf/formula.hpp"

namespace nzf {

enum class Family : std::uint8_t { Fischer, FischerBug, Csma, CsmaBug, Pathos };

std::string_view to_string(Family f);
std::optional<Family> parse_family(std::string_view s);

struct Benchmark {
  Family family = Family::Fischer;
  int n = 0;
  TimedAutomaton automaton;
  std::string property;  // formula text, parsed against `automaton`
  std::string notes;     // model description, written as file comments
};

/// Fischer mutual exclusion, write deadline 1 and read delay 2. With
/// `bug`, a waiting process may give up and clear the lock at any time.
/// Property: AG(ready1 -> AF critical1), or AF of any critical with the bug.
Benchmark gen_fischer(int n, bool bug);

/// CSMA/CD with frame length 808 and collision window 26. With `bug`, a
/// retrying sender may drop into an error sink.
/// Property: AG(transm1 -> AF(transm1 and x1 >= 52)), or with the bug
/// AG(retry1 -> AF(some sender transmits)).
Benchmark gen_csma(int n, bool bug);

/// Non-preemptive fixed-priority scheduling, process 1 highest. Each
/// process is released at least n time units after its last release and
/// runs for at most 1 time unit. Property: AGF run_n.
Benchmark gen_pathos(int n);

Benchmark generate(Family f, int n);

/// Parses the property against a copy of the automaton.
FormulaPtr property_formula(const Benchmark& b, TimedAutomaton& a);

/// Model text with the notes as leading comments.
std::string model_text(const Benchmark& b);

/// Writes <family>_<n>.ta and <family>_<n>.tctl into `dir`; returns the model path.
std::string write_benchmark(const Benchmark& b, const std::string& dir);

}  // namespace nzf

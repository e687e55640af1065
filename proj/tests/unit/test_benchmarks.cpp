#include <catch_amalgamated.hpp>

#include "nzf/benchmarks.hpp"
#include "nzf/engine.hpp"
#include "nzf/model_io.hpp"

using namespace nzf;

namespace {

constexpr Family kFamilies[] = {Family::Fischer, Family::FischerBug, Family::Csma, Family::CsmaBug, Family::Pathos};

Verdict run(const TimedAutomaton& a, const Formula& g, ApproxMode mode, std::size_t level = 1) {
  EngineConfig cfg;
  cfg.level = level;
  Engine e(a, cfg, max_constant(g));
  return e.check(g, mode).verdict;
}

}  // namespace

TEST_CASE("family names") {
  for (auto fam : kFamilies) CHECK(parse_family(to_string(fam)) == fam);
  CHECK_FALSE(parse_family("dining"));
  CHECK_THROWS(generate(Family::Fischer, 9));
  CHECK_THROWS(generate(Family::Pathos, 1));
}

TEST_CASE("generated models are well formed") {
  for (auto fam : kFamilies) {
    std::size_t last = 0;
    for (int n = 2; n <= 3; ++n) {
      const Benchmark b = generate(fam, n);
      INFO(to_string(fam) << " " << n);
      b.automaton.validate();
      CHECK(b.automaton.modes.size() > last);
      last = b.automaton.modes.size();
      const TimedAutomaton back = parse_model(model_text(b));
      CHECK(print_model(back) == print_model(b.automaton));
      TimedAutomaton a;
      const auto g = property_formula(b, a);
      CHECK(is_core(*g));
      Engine e(a, {}, max_constant(*g));
      CHECK_FALSE(e.system().sat(a.initial).is_empty());
    }
  }
}

TEST_CASE("csma timing constants") {
  const Benchmark b = generate(Family::Csma, 2);
  bool saw52 = false, saw808 = false, saw26 = false;
  for (const auto& t : b.automaton.transitions)
    for (const auto& atom : t.guard) {
      saw52 |= atom.constant == 52;
      saw808 |= atom.constant == 808;
      saw26 |= atom.constant == 26;
    }
  CHECK(saw52);
  CHECK(saw808);
  CHECK(saw26);
}

TEST_CASE("fischer keeps mutual exclusion") {
  Benchmark b = generate(Family::Fischer, 2);
  const auto g = parse_formula("AG not (critical1 and critical2)", b.automaton);
  CHECK(run(b.automaton, *g, ApproxMode::Exact) == Verdict::Satisfied);
}

TEST_CASE("pathos runs its highest priority process forever") {
  Benchmark b = generate(Family::Pathos, 2);
  const auto g = parse_formula("EGF run1", b.automaton);
  CHECK(run(b.automaton, *g, ApproxMode::Exact) == Verdict::Satisfied);
}

TEST_CASE("conclusive approximate verdicts match exact ones") {
  for (auto fam : kFamilies) {
    const Benchmark b = generate(fam, 2);
    TimedAutomaton a;
    const auto g = property_formula(b, a);
    const Verdict exact = run(a, *g, ApproxMode::Exact);
    INFO(to_string(fam));
    CHECK(exact == Verdict::Refuted);
    for (std::size_t level : {0, 1, 2}) {
      const Verdict under = run(a, *g, ApproxMode::Under, level);
      if (under != Verdict::Inconclusive) CHECK(under == exact);
    }
    const Verdict over = run(a, *g, ApproxMode::Over);
    if (over != Verdict::Inconclusive) CHECK(over == exact);
  }
}

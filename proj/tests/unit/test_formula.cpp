#include <catch_amalgamated.hpp>

#include <functional>
#include <random>

#include "nzf/formula.hpp"
#include "nzf/model_io.hpp"

using namespace nzf;

namespace {

TimedAutomaton model() {
  return parse_model(
      "clocks x, y;\n"
      "mode a { labels: p; }\n"
      "mode b { inv: x <= 4; labels: q; }\n"
      "trans a -> b { guard: y > 9; }\n"
      "init a;\n");
}

std::string show(const std::string& text) {
  TimedAutomaton a = model();
  return print_formula(*parse_formula_raw(text, a), a);
}

std::string expanded(const std::string& text) {
  TimedAutomaton a = model();
  return print_formula(*parse_formula(text, a), a);
}

std::size_t error_column(const std::string& text) {
  TimedAutomaton a = model();
  try {
    parse_formula(text, a);
  } catch (const ParseError& e) {
    return e.column();
  }
  return 0;
}

}  // namespace

TEST_CASE("precedence and associativity") {
  CHECK(show("p or q and not a") == "(p or (q and not a))");
  CHECK(show("p -> q -> a") == "(p -> (q -> a))");
  CHECK(show("p && q || a") == "((p and q) or a)");
  CHECK(show("!p -> EG q") == "(not p -> EG q)");
  CHECK(show("EF x <= 3 and p") == "(EF x <= 3 and p)");
  CHECK(show("AG(p -> AF q)") == "AG (p -> AF q)");
}

TEST_CASE("until spellings") {
  const std::string want = "E (p U q)";
  CHECK(show("E p U q") == want);
  CHECK(show("E (p U q)") == want);
  CHECK(show("EU(p, q)") == want);
  CHECK(show("E (p) U q") == want);
  CHECK(show("A p U q") == "A (p U q)");
  CHECK(show("AU(p or q, a)") == "A ((p or q) U a)");
}

TEST_CASE("shorthand expansion") {
  CHECK(expanded("true") == "0 == 0");
  CHECK(expanded("false") == "not 0 == 0");
  CHECK(expanded("p and q") == "not (not p or not q)");
  CHECK(expanded("p -> q") == "(not p or q)");
  CHECK(expanded("EF p") == "E (0 == 0 U p)");
  CHECK(expanded("AG p") == "not E (0 == 0 U not p)");
  CHECK(expanded("A p U q") == "not (E (not q U not (p or q)) or EG not q)");
  CHECK(expanded("AF q") == "not (E (not q U not (0 == 0 or q)) or EG not q)");
  CHECK(expanded("AGF p") == "not EFG not p");
  CHECK(expanded("AFG p") == "not EGF not p");
  CHECK(expanded("EGF x > 1") == "EGF x > 1");
  TimedAutomaton a = model();
  CHECK(is_core(*parse_formula("AG(p -> AF (q and x < 2))", a)));
  CHECK_FALSE(is_core(*parse_formula_raw("AG p", a)));
}

TEST_CASE("freeze clocks") {
  TimedAutomaton a = model();
  const auto g = parse_formula("freeze t: EF (q and t <= 2)", a);
  REQUIRE(a.clocks.size() == 3);
  CHECK(a.clocks[2] == "t");
  REQUIRE(g->kind == FormulaKind::Freeze);
  CHECK(g->freeze_clock == 3);
  CHECK(print_formula(*g, a) == "(freeze t: E (0 == 0 U not (not q or not t <= 2)))");
  // within one formula the same name reuses the clock
  TimedAutomaton b = model();
  parse_formula("freeze t: EF (p and freeze t: EG t < 1)", b);
  CHECK(b.clocks.size() == 3);
  CHECK_THROWS_AS(parse_formula("freeze x: EF p", b), ParseError);
  // clocks added by an earlier formula belong to the automaton now
  CHECK_THROWS_AS(parse_formula("freeze t: EF p", b), ParseError);
}

TEST_CASE("syntax errors point at the offending token") {
  CHECK(error_column("AG (p ->") == 9);
  CHECK(error_column("p or r") == 6);
  CHECK(error_column("z < 3") == 1);
  CHECK(error_column("x <= ") == 6);
  CHECK(error_column("3 < x") == 1);
  CHECK(error_column("E p q") == 5);
  CHECK(error_column("p q") == 3);
  CHECK(error_column("EU(p q)") == 6);
}

TEST_CASE("max_constant") {
  TimedAutomaton a = model();
  CHECK(max_constant(*parse_formula("EF (x < 7 or EG y >= 12)", a)) == 12);
  CHECK(max_constant(*parse_formula("AG p", a)) == 0);
}

TEST_CASE("printing round trips random core formulas") {
  TimedAutomaton a = model();
  const ClockIndex t = a.add_clock("t");  // parsing the printed text adds it back
  std::mt19937 rng(5);
  std::function<FormulaPtr(int)> gen = [&](int depth) -> FormulaPtr {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 9 : 2);
    std::uniform_int_distribution<int> c(0, 6), op(0, 4), clk(0, 2);
    switch (pick(rng)) {
      case 0: return f::prop("p");
      case 1: return f::prop("b");
      case 2: return f::clock(clk(rng), static_cast<CompareOp>(op(rng)), c(rng));
      case 3: return f::lor(gen(depth - 1), gen(depth - 1));
      case 4: return f::lnot(gen(depth - 1));
      case 5: return f::eu(gen(depth - 1), gen(depth - 1));
      case 6: return f::eg(gen(depth - 1));
      case 7: return f::egf(gen(depth - 1));
      case 8: return f::efg(gen(depth - 1));
      default: return f::freeze(t, gen(depth - 1));
    }
  };
  for (int i = 0; i < 300; ++i) {
    const auto g = gen(4);
    REQUIRE(is_core(*g));
    const std::string text = print_formula(*g, a);
    INFO(text);
    TimedAutomaton b = model();
    const auto back = parse_formula_raw(text, b);
    CHECK(same_formula(*back, *g));
  }
}

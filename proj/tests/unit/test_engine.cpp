#include <catch_amalgamated.hpp>

#include <random>

#include "nzf/engine.hpp"
#include "nzf/model_io.hpp"
#include "nzf/region_oracle.hpp"
#include "support/random_models.hpp"

using namespace nzf;

namespace {

FormulaPtr parse(const std::string& text, TimedAutomaton& a) { return parse_formula(text, a); }

// one mode that loops every time unit exactly
constexpr const char* kMetronome =
    "clocks x;\n"
    "mode a { inv: x <= 1; labels: p; }\n"
    "trans a -> a { guard: x >= 1; reset: x; }\n"
    "init a and x == 0;\n";

}  // namespace

TEST_CASE("rch_bck basics on random automata") {
  std::mt19937 rng(21);
  for (int i = 0; i < 60; ++i) {
    const TimedAutomaton a = nzf::testing::random_automaton(rng);
    Engine e(a, {});
    const auto& sys = e.system();
    const StateSet p = sys.sat_proposition("p"), q = sys.sat_proposition("q");
    const StateSet r = e.rch_bck(p, q);
    CHECK(includes(r, q));
    CHECK(includes(unite(p, q), r));
    CHECK(equals(e.rch_bck(sys.empty(), q), q));
    CHECK(e.rch_bck(p, sys.empty()).is_empty());
    CHECK(equals(e.rch_bck(p, r), r));
  }
}

TEST_CASE("rch_bck through time and a guard") {
  const TimedAutomaton a = parse_model(
      "clocks x;\n"
      "mode a { inv: x <= 5; }\n"
      "mode b { }\n"
      "trans a -> b { guard: x >= 3; }\n");
  Engine e(a, {});
  const auto& sys = e.system();
  const StateSet in_a = sys.sat_proposition("a"), in_b = sys.sat_proposition("b");
  CHECK(equals(e.rch_bck(in_a, in_b), sys.all()));
  // staying below 2 in a: the guard is never enabled
  const StateSet low = intersect(in_a, sys.sat_clock({1, CompareOp::Le, 2}));
  CHECK(equals(e.rch_bck(low, in_b), in_b));
}

TEST_CASE("nzf_exact on trivial automata") {
  {
    Engine e(parse_model("clocks x; mode a { }"), {});
    const StateSet all = e.system().all();
    CHECK(equals(e.nzf_exact(all, all, all), all));
  }
  {
    Engine e(parse_model("clocks x; mode a { inv: x <= 2; }"), {});
    const StateSet all = e.system().all();
    CHECK(e.nzf_exact(all, all, all).is_empty());
  }
  {
    // zeno loop: time can never pass 1
    Engine e(parse_model("clocks x; mode a { inv: x <= 1; } trans a -> a { }"), {});
    const StateSet all = e.system().all();
    CHECK(e.nzf_exact(all, all, all).is_empty());
  }
  {
    Engine e(parse_model(kMetronome), {});
    const StateSet all = e.system().all();
    CHECK(equals(e.nzf_exact(all, all, all), all));
  }
}

TEST_CASE("get_zones_wo_upperbounds") {
  const TimedAutomaton a = parse_model("clocks x, y; mode free { } mode held { inv: x <= 5; }");
  Engine e(a, {});
  const std::size_t dim = e.system().dim();
  StateSet s = e.system().empty();
  const Zone late = Zone::universal(dim).constrain(0, 1, weak(-2));   // x >= 2
  const Zone early = Zone::universal(dim).constrain(1, 0, weak(3));   // x <= 3
  const Zone band = Zone::universal(dim).constrain(1, 2, weak(1));    // x - y <= 1
  s.add(0, late);
  s.add(0, early);
  s.add(0, band);
  s.add(1, e.system().invariant(1));
  const StateSet kept = e.get_zones_wo_upperbounds(s);
  CHECK(kept.zones(1).empty());
  REQUIRE(kept.zones(0).size() == 2);
  StateSet want = e.system().empty();
  want.add(0, late);
  want.add(0, band);
  CHECK(equals(kept, want));
}

TEST_CASE("zone search finds the metronome cycle") {
  TimedAutomaton a = parse_model(kMetronome);
  Engine e(a, {});
  const StateSet all = e.system().all();
  const auto found = e.get_a_zone_w_DFS(all, all);
  REQUIRE(found);
  CHECK(found->mode == 0);
  CHECK_FALSE(found->seed.is_empty());
  CHECK(includes(e.nzf_exact(all, all, all), found->seed));
  REQUIRE(found->seed.zones(0).size() >= 1);
  CHECK(includes(found->zone, found->seed.zones(0)[0]));

  // no cycle once the loop is gone
  Engine still(parse_model("clocks x; mode a { inv: x <= 1; }"), {});
  const StateSet s = still.system().all();
  CHECK_FALSE(still.get_a_zone_w_DFS(s, s));
}

TEST_CASE("under-approximation at level 0 is the unbounded-zone closure") {
  std::mt19937 rng(8);
  for (int i = 0; i < 60; ++i) {
    const TimedAutomaton a = nzf::testing::random_automaton(rng);
    EngineConfig cfg;
    cfg.level = 0;
    Engine e(a, cfg);
    const auto& sys = e.system();
    const StateSet p = sys.sat_proposition("p"), q = sys.sat_proposition("q"), all = sys.all();
    const StateSet want = e.rch_bck(all, e.rch_bck(p, e.get_zones_wo_upperbounds(intersect(p, q))));
    CHECK(equals(e.nzf_under(all, p, q, 0), want));
    CHECK(equals(e.nzf_under_big_chunks(all, p, q, 0), want));
    CHECK(e.stats().level_used == 0);
    CHECK(includes(e.nzf_exact(all, p, q), want));
  }
}

TEST_CASE("level 1 finds the metronome") {
  TimedAutomaton a = parse_model(kMetronome);
  EngineConfig cfg;
  cfg.level = 1;
  Engine e(a, cfg);
  const StateSet all = e.system().all();
  CHECK(e.nzf_under(all, all, all, 0).is_empty());
  CHECK(equals(e.nzf_under(all, all, all, 1), all));
  CHECK(e.stats().level_used == 1);
}

TEST_CASE("boolean structure") {
  TimedAutomaton a = parse_model(kMetronome);
  for (auto mode : {ApproxMode::Under, ApproxMode::Exact, ApproxMode::Over}) {
    Engine e(a, {});
    CHECK(e.eval(*parse("false", a), mode).is_empty());
    CHECK(equals(e.eval(*parse("true", a), mode), e.system().all()));
    CHECK(equals(e.eval(*parse("not not EG p", a), mode), e.eval(*parse("EG p", a), mode)));
  }
  CHECK(flip(ApproxMode::Under) == ApproxMode::Over);
  CHECK(flip(ApproxMode::Exact) == ApproxMode::Exact);
}

TEST_CASE("verdicts") {
  SECTION("unsatisfiable initial condition") {
    TimedAutomaton a = parse_model("clocks x; mode a { inv: x <= 1; labels: p; } init a and x > 1;");
    for (const char* text : {"AG p", "AG not p", "EG p", "false", "AF false"})
      for (auto mode : {ApproxMode::Under, ApproxMode::Exact, ApproxMode::Over}) {
        Engine e(a, {});
        CHECK(e.check(*parse(text, a), mode).verdict == Verdict::Satisfied);
      }
  }
  SECTION("level 0 cannot see bounded cycles") {
    TimedAutomaton a = parse_model(kMetronome);
    const auto g = parse("AG not p", a);
    EngineConfig cfg;
    cfg.level = 0;
    Engine l0(a, cfg);
    CHECK(l0.check(*g, ApproxMode::Under).verdict == Verdict::Inconclusive);
    cfg.level = 1;
    Engine l1(a, cfg);
    const auto r = l1.check(*g, ApproxMode::Under);
    CHECK(r.verdict == Verdict::Refuted);
    CHECK_FALSE(r.witness.is_empty());
    Engine ex(a, {});
    CHECK(ex.check(*g, ApproxMode::Exact).verdict == Verdict::Refuted);
    CHECK(ex.check(*parse("AG p", a), ApproxMode::Over).verdict == Verdict::Satisfied);
  }
  SECTION("zeno runs do not count") {
    TimedAutomaton a = parse_model("clocks x; mode a { inv: x <= 1; labels: p; } trans a -> a { } init a;");
    Engine e(a, {});
    // no divergent run exists, so every universal property holds vacuously
    CHECK(e.check(*parse("AG not p", a), ApproxMode::Exact).verdict == Verdict::Satisfied);
    EngineConfig cfg;
    cfg.non_zeno = false;
    Engine plain(a, cfg);
    CHECK(plain.check(*parse("AG not p", a), ApproxMode::Exact).verdict == Verdict::Refuted);
  }
}

TEST_CASE("results do not depend on the auxiliary clock") {
  std::mt19937 rng(4);
  for (int i = 0; i < 40; ++i) {
    TimedAutomaton a = nzf::testing::random_automaton(rng);
    const auto g = parse("EGF p or EFG q or E p U q", a);
    for (auto mode : {ApproxMode::Under, ApproxMode::Exact}) {
      Engine e(a, {});
      const StateSet r = e.eval(*g, mode);
      CHECK(equals(free_clock(r, e.system().aux_clock()), r));
    }
  }
}

TEST_CASE("approximate verdicts are sound") {
  std::mt19937 rng(99);
  const char* props[] = {"AG (p -> AF q)", "AGF p", "AFG q", "AG not (p and q)", "A p U q"};
  for (int i = 0; i < 40; ++i) {
    TimedAutomaton a = nzf::testing::random_automaton(rng);
    for (const char* text : props) {
      const auto g = parse(text, a);
      Engine ex(a, {});
      const Verdict exact = ex.check(*g, ApproxMode::Exact).verdict;
      for (std::size_t level : {0, 1, 2}) {
        EngineConfig cfg;
        cfg.level = level;
        Engine u(a, cfg);
        if (u.check(*g, ApproxMode::Under).verdict == Verdict::Refuted) CHECK(exact == Verdict::Refuted);
      }
      Engine o(a, {});
      if (o.check(*g, ApproxMode::Over).verdict == Verdict::Satisfied) CHECK(exact == Verdict::Satisfied);
    }
  }
}

TEST_CASE("freeze formulas agree with the region graph") {
  std::mt19937 rng(17);
  const char* props[] = {"freeze t: EF (q and t <= 2)", "freeze t: E p U (q and t > 1)", "freeze t: EG (t < 3)"};
  for (int i = 0; i < 40; ++i) {
    const TimedAutomaton base = nzf::testing::random_automaton(rng);
    for (const char* text : props) {
      TimedAutomaton a = base;
      const auto g = parse(text, a);
      Engine e(a, {}, max_constant(*g));
      RegionOracle oracle(a, g.get());
      const StateSet got = e.eval(*g, ApproxMode::Exact);
      const StateSet want = oracle.to_state_set(oracle.eval(*g), e.system().dim());
      INFO(print_model(a) << text);
      CHECK(equals(got, want));
    }
  }
}

TEST_CASE("iteration cap") {
  EngineConfig cfg;
  cfg.max_iterations = 0;
  TimedAutomaton a = parse_model(kMetronome);
  Engine e(a, cfg);
  const StateSet all = e.system().all();
  CHECK_THROWS_AS(e.rch_bck(all, all), FixpointLimitError);
  cfg = {};
  cfg.cycle_threshold = 0;
  CHECK_THROWS_AS(Engine(a, cfg), std::invalid_argument);
}

#include "nzf/engine.hpp"

#include <algorithm>
#include <vector>

namespace nzf {

std::string_view to_string(ApproxMode m) {
  switch (m) {
    case ApproxMode::Under: return "under";
    case ApproxMode::Exact: return "exact";
    case ApproxMode::Over: return "over";
  }
  return "?";
}

std::optional<ApproxMode> parse_approx_mode(std::string_view s) {
  if (s == "under") return ApproxMode::Under;
  if (s == "exact") return ApproxMode::Exact;
  if (s == "over") return ApproxMode::Over;
  return std::nullopt;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Satisfied: return "SATISFIED";
    case Verdict::Refuted: return "REFUTED";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

namespace {

Ceiling pick_ceiling(const TimedAutomaton& a, const EngineConfig& cfg, std::int32_t formula_constant) {
  std::int32_t c = std::max({a.max_constant(), formula_constant, cfg.cycle_threshold, cfg.ceiling.value, 1});
  return Ceiling{c};
}

StateSet single(const SymbolicSystem& sys, ModeId q, const Zone& z) {
  StateSet s = sys.empty();
  s.add(q, z);
  return s;
}

}  // namespace

Engine::Engine(const TimedAutomaton& a, EngineConfig cfg, std::int32_t formula_constant)
    : cfg_(cfg), sys_(a, pick_ceiling(a, cfg, formula_constant)) {
  cfg_.ceiling = sys_.ceiling();
  if (cfg_.cycle_threshold < 1) throw std::invalid_argument("cycle threshold must be at least 1");
}

void Engine::tick() { ++stats_.fixpoint_iterations; }

void Engine::note(const StateSet& s) { stats_.peak_zone_count = std::max(stats_.peak_zone_count, s.zone_count()); }

StateSet Engine::rch_bck(const StateSet& s1, const StateSet& s2) {
  // Semi-naive: only zones added in the last round are pushed back through
  // the transitions, which is enough since every step distributes over union.
  StateSet result = s2;
  StateSet frontier = s2;
  const StateSet direct = sys_.time_bck_within(s1, intersect(s1, s2));
  for (ModeId q = 0; q < sys_.mode_count(); ++q)
    for (const auto& z : direct.zones(q))
      if (result.add(q, z)) frontier.add(q, z);
  std::size_t rounds = 0;
  while (!frontier.is_empty()) {
    tick();
    if (++rounds > cfg_.max_iterations) throw FixpointLimitError("backward reachability exceeded the iteration cap");
    const StateSet step = sys_.time_bck_within(s1, intersect(s1, sys_.pre_disc(frontier)));
    StateSet next = sys_.empty();
    for (ModeId q = 0; q < sys_.mode_count(); ++q)
      for (const auto& z : step.zones(q))
        if (result.add(q, z)) next.add(q, z);
    frontier = std::move(next);
    note(result);
  }
  return result;
}

StateSet Engine::cycle_gfp(const StateSet& within, const StateSet& seed) {
  const ClockIndex z = sys_.aux_clock();
  StateSet x = seed;
  std::size_t rounds = 0;
  while (!x.is_empty()) {
    tick();
    if (++rounds > cfg_.max_iterations) throw FixpointLimitError("cycle fixpoint exceeded the iteration cap");
    const StateSet lap_done = constrain(x, 0, z, weak(-cfg_.cycle_threshold));
    const StateSet back = rch_bck(within, lap_done);
    StateSet y = intersect(x, free_clock(constrain_zero(back, z), z));
    note(y);
    if (includes(y, x)) break;
    x = std::move(y);
  }
  return x;
}

StateSet Engine::nzf_exact(const StateSet& s0, const StateSet& s1, const StateSet& s2) {
  const StateSet fair = cycle_gfp(s1, intersect(s1, s2));
  return rch_bck(s0, rch_bck(s1, fair));
}

StateSet Engine::get_zones_wo_upperbounds(const StateSet& s) const {
  StateSet r = sys_.empty();
  for (ModeId q = 0; q < s.mode_count(); ++q)
    for (const auto& z : s.zones(q))
      if (has_no_upper_bounds(z) && includes(z, intersect(time_up(z), sys_.invariant(q)))) r.add(q, z);
  return r;
}

bool Engine::may_return(const StateSet& within, ModeId q, const Zone& zeta) const {
  // Forward search that over-approximates staying inside `within`; it only
  // rules candidates out, the gfp in cycle_gfp does the certification.
  const ClockIndex zc = sys_.aux_clock();
  Zone start = zeta;
  start.constrain(zc, 0, kLeZero).constrain(0, zc, kLeZero);
  Zone goal = zeta;
  goal.constrain(0, zc, weak(-cfg_.cycle_threshold));

  StateSet visited = sys_.empty();
  std::vector<std::pair<ModeId, Zone>> stack;
  auto settle = [&](ModeId m, const Zone& z) {
    const Zone d = sys_.delay(m, z);
    for (const auto& piece : within.zones(m)) {
      Zone w = intersect(d, piece);
      if (!w.is_empty() && visited.add(m, w)) stack.emplace_back(m, std::move(w));
    }
  };
  settle(q, start);
  while (!stack.empty()) {
    auto [m, w] = std::move(stack.back());
    stack.pop_back();
    if (m == q && !intersect(w, goal).is_empty()) return true;
    for (auto id : sys_.outgoing(m)) {
      const Zone f = sys_.fire(id, w);
      if (f.is_empty()) continue;
      const ModeId t = sys_.automaton().transitions[id].target;
      for (const auto& piece : within.zones(t)) {
        const Zone g = intersect(f, piece);
        if (!g.is_empty()) settle(t, g);
      }
    }
  }
  return false;
}

std::optional<CycleZone> Engine::get_a_zone_w_DFS(const StateSet& s1, const StateSet& s2) {
  const StateSet candidates = intersect(s1, s2);
  StateSet space = s1;
  for (ModeId q = 0; q < candidates.mode_count(); ++q) {
    for (const auto& zeta : candidates.zones(q)) {
      const StateSet here = single(sys_, q, zeta);
      if (may_return(space, q, zeta)) {
        StateSet seed = cycle_gfp(space, intersect(here, space));
        if (!seed.is_empty()) return CycleZone{q, zeta, std::move(seed)};
      }
      space = subtract(space, here);
    }
  }
  return std::nullopt;
}

StateSet Engine::under(const StateSet& s0, const StateSet& s1, const StateSet& s2, std::size_t level, bool big) {
  StateSet eta = rch_bck(s0, rch_bck(s1, get_zones_wo_upperbounds(intersect(s1, s2))));
  StateSet eta1 = subtract(s1, eta);
  std::size_t used = 0;
  for (std::size_t i = 0; i < level; ++i) {
    auto found = get_a_zone_w_DFS(eta1, s2);
    if (!found) break;
    used = i + 1;
    eta.add_all(rch_bck(s0, rch_bck(s1, found->seed)));
    if (big)
      eta1 = subtract(eta1, rch_bck(eta1, found->seed));
    else
      eta1 = subtract(eta1, single(sys_, found->mode, found->zone));
    note(eta);
  }
  stats_.level_used = std::max(stats_.level_used, used);
  return eta;
}

StateSet Engine::nzf_under(const StateSet& s0, const StateSet& s1, const StateSet& s2, std::size_t level) {
  return under(s0, s1, s2, level, false);
}

StateSet Engine::nzf_under_big_chunks(const StateSet& s0, const StateSet& s1, const StateSet& s2,
                                      std::size_t level) {
  return under(s0, s1, s2, level, true);
}

StateSet Engine::nzf(const StateSet& s0, const StateSet& s1, const StateSet& s2, ApproxMode mode) {
  if (mode == ApproxMode::Under) return under(s0, s1, s2, cfg_.level, cfg_.big_chunks);
  return nzf_exact(s0, s1, s2);
}

StateSet Engine::non_zeno_states(ApproxMode mode) {
  if (mode == ApproxMode::Over) mode = ApproxMode::Exact;
  auto it = non_zeno_cache_.find(mode);
  if (it != non_zeno_cache_.end()) return it->second;
  const StateSet all = sys_.all();
  StateSet r = nzf(all, all, all, mode);
  non_zeno_cache_.emplace(mode, r);
  return r;
}

StateSet Engine::eval(const Formula& f, ApproxMode mode) {
  using K = FormulaKind;
  switch (f.kind) {
    case K::Atom: return sys_.sat(f.atom);
    case K::Or: return unite(eval(*f.lhs, mode), eval(*f.rhs, mode));
    case K::Not: return sys_.negate(eval(*f.lhs, flip(mode)));
    case K::Freeze: return free_clock(constrain_zero(eval(*f.lhs, mode), f.freeze_clock), f.freeze_clock);
    case K::ExistsUntil: {
      const StateSet y1 = eval(*f.lhs, mode);
      StateSet y2 = eval(*f.rhs, mode);
      if (cfg_.non_zeno) y2 = intersect(y2, non_zeno_states(mode));
      return rch_bck(y1, y2);
    }
    case K::ExistsAlways: {
      const StateSet w = eval(*f.lhs, mode);
      return nzf(w, w, sys_.all(), mode);
    }
    case K::ExistsAlwaysEventually: {
      const StateSet w = eval(*f.lhs, mode);
      const StateSet all = sys_.all();
      return nzf(all, all, w, mode);
    }
    case K::ExistsEventuallyAlways: {
      const StateSet w = eval(*f.lhs, mode);
      const StateSet all = sys_.all();
      return nzf(all, w, all, mode);
    }
    default: throw std::invalid_argument("formula must be expanded to the core grammar before evaluation");
  }
}

CheckResult Engine::check(const Formula& f, ApproxMode mode) {
  CheckResult r;
  const StateSet negation = sys_.negate(eval(f, flip(mode)));
  r.final_zone_count = negation.zone_count();
  const StateSet init = sys_.sat(sys_.automaton().initial);
  r.witness = intersect(init, negation);
  const bool hit = !r.witness.is_empty();
  // no initial state: every formula holds, whatever the approximation
  if (init.is_empty()) {
    r.verdict = Verdict::Satisfied;
    return r;
  }
  switch (mode) {
    case ApproxMode::Exact: r.verdict = hit ? Verdict::Refuted : Verdict::Satisfied; break;
    case ApproxMode::Under: r.verdict = hit ? Verdict::Refuted : Verdict::Inconclusive; break;
    case ApproxMode::Over: r.verdict = hit ? Verdict::Inconclusive : Verdict::Satisfied; break;
  }
  return r;
}

}  // namespace nzf

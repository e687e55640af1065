#include "nzf/symbolic.hpp"

#include <utility>

namespace nzf {

namespace {

bool holds_constant(CompareOp op, std::int32_t lhs, std::int32_t rhs) {
  switch (op) {
    case CompareOp::Lt: return lhs < rhs;
    case CompareOp::Le: return lhs <= rhs;
    case CompareOp::Eq: return lhs == rhs;
    case CompareOp::Ge: return lhs >= rhs;
    case CompareOp::Gt: return lhs > rhs;
  }
  return false;
}

void apply_atom(Zone& z, const ClockAtom& a) {
  if (a.clock == 0) {
    if (!holds_constant(a.op, 0, a.constant)) z = Zone::empty(z.dim());
    return;
  }
  const auto x = a.clock;
  switch (a.op) {
    case CompareOp::Lt: z.constrain(x, 0, strict(a.constant)); break;
    case CompareOp::Le: z.constrain(x, 0, weak(a.constant)); break;
    case CompareOp::Eq:
      z.constrain(x, 0, weak(a.constant));
      z.constrain(0, x, weak(-a.constant));
      break;
    case CompareOp::Ge: z.constrain(0, x, weak(-a.constant)); break;
    case CompareOp::Gt: z.constrain(0, x, strict(-a.constant)); break;
  }
}

}  // namespace

SymbolicSystem::SymbolicSystem(const TimedAutomaton& a, Ceiling ceiling)
    : a_(a), ceiling_(ceiling), dim_(a.clocks.size() + 2), incoming_(a.modes.size()), outgoing_(a.modes.size()) {
  a_.validate();
  if (ceiling_.value < 1) ceiling_.value = 1;
  for (const auto& m : a_.modes) invariants_.push_back(conjunction_zone(m.invariant));
  for (const auto& t : a_.transitions) {
    guards_.push_back(intersect(conjunction_zone(t.guard), invariants_[t.source]));
    incoming_[t.target].push_back(t.id);
    outgoing_[t.source].push_back(t.id);
  }
}

std::vector<std::string> SymbolicSystem::clock_names() const {
  auto names = a_.clocks;
  names.push_back("_z");
  return names;
}

Zone SymbolicSystem::conjunction_zone(const Conjunction& c) const {
  Zone z = Zone::universal(dim_);
  for (const auto& atom : c) apply_atom(z, atom);
  return z;
}

StateSet SymbolicSystem::all() const {
  StateSet s = empty();
  for (ModeId q = 0; q < mode_count(); ++q) s.add(q, invariants_[q]);
  return s;
}

StateSet SymbolicSystem::sat_proposition(std::string_view name) const {
  auto modes = a_.modes_with(name);
  if (modes.empty()) throw ModelError("unknown mode or label '" + std::string(name) + "'");
  StateSet s = empty();
  for (auto q : modes) s.add(q, invariants_[q]);
  return s;
}

StateSet SymbolicSystem::sat_clock(const ClockAtom& atom) const {
  if (atom.clock >= dim_ - 1) throw ModelError("clock index out of range in predicate");
  StateSet s = empty();
  for (ModeId q = 0; q < mode_count(); ++q) {
    Zone z = invariants_[q];
    apply_atom(z, atom);
    s.add(q, z);
  }
  return s;
}

StateSet SymbolicSystem::sat(const StatePredicate& p) const {
  using K = StatePredicate::Kind;
  switch (p.kind) {
    case K::True: return all();
    case K::Prop: return sat_proposition(p.prop);
    case K::Clock: return sat_clock(p.atom);
    case K::And: return intersect(sat(p.children.at(0)), sat(p.children.at(1)));
    case K::Or: return unite(sat(p.children.at(0)), sat(p.children.at(1)));
    case K::Not: return negate(sat(p.children.at(0)));
  }
  return empty();
}

StateSet SymbolicSystem::negate(const StateSet& s) const { return subtract(all(), s); }

StateSet SymbolicSystem::xtion_bck(const StateSet& s, const Transition& e) const {
  StateSet r = empty();
  for (const auto& z : s.zones(e.target)) {
    Zone w = intersect(reset_pre(z, e.resets), guards_[e.id]);
    if (!w.is_empty()) r.add(e.source, normalize(w));
  }
  return r;
}

StateSet SymbolicSystem::pre_disc(const StateSet& s) const {
  StateSet r = empty();
  for (ModeId q = 0; q < mode_count(); ++q) {
    if (s.zones(q).empty()) continue;
    for (auto id : incoming_[q]) {
      const auto& e = a_.transitions[id];
      for (const auto& z : s.zones(q)) {
        Zone w = intersect(reset_pre(z, e.resets), guards_[id]);
        if (!w.is_empty()) r.add(e.source, normalize(w));
      }
    }
  }
  return r;
}

StateSet SymbolicSystem::time_bck(const StateSet& s) const {
  StateSet r = empty();
  for (ModeId q = 0; q < mode_count(); ++q)
    for (const auto& z : s.zones(q)) r.add(q, normalize(intersect(time_down(z), invariants_[q])));
  return r;
}

StateSet SymbolicSystem::time_bck_within(const StateSet& within, const StateSet& target) const {
  // A trajectory inside a union of convex pieces is a chain of segments,
  // each inside one piece except possibly at its end point. Chain them
  // backwards until nothing new appears.
  std::vector<std::vector<Zone>> closed(mode_count());
  for (ModeId q = 0; q < mode_count(); ++q)
    for (const auto& a : within.zones(q)) closed[q].push_back(close_upper_bounds(a));

  StateSet result = empty();
  std::vector<std::pair<ModeId, Zone>> frontier;
  for (ModeId q = 0; q < mode_count(); ++q)
    for (const auto& z : target.zones(q))
      if (result.add(q, z)) frontier.emplace_back(q, z);

  while (!frontier.empty()) {
    std::vector<std::pair<ModeId, Zone>> next;
    for (const auto& [q, h] : frontier) {
      const auto& pieces = within.zones(q);
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        Zone endpoints = intersect(h, closed[q][i]);
        if (endpoints.is_empty()) continue;
        Zone p = normalize(intersect(time_down(endpoints), pieces[i]));
        if (result.add(q, p)) next.emplace_back(q, std::move(p));
      }
    }
    frontier = std::move(next);
  }
  return result;
}

StateSet SymbolicSystem::post_time(const StateSet& s) const {
  StateSet r = empty();
  for (ModeId q = 0; q < mode_count(); ++q)
    for (const auto& z : s.zones(q)) r.add(q, normalize(intersect(time_up(z), invariants_[q])));
  return r;
}

Zone SymbolicSystem::fire(std::size_t id, const Zone& z) const {
  const auto& e = a_.transitions.at(id);
  Zone fired = intersect(z, guards_[id]);
  if (fired.is_empty()) return fired;
  return normalize(intersect(reset(fired, e.resets), invariants_[e.target]));
}

StateSet SymbolicSystem::post_disc(const StateSet& s, const Transition& e) const {
  StateSet r = empty();
  for (const auto& z : s.zones(e.source)) {
    Zone w = fire(e.id, z);
    if (!w.is_empty()) r.add(e.target, w);
  }
  return r;
}

}  // namespace nzf

#include "nzf/automaton.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace nzf {

std::string_view to_string(CompareOp op) {
  switch (op) {
    case CompareOp::Lt: return "<";
    case CompareOp::Le: return "<=";
    case CompareOp::Eq: return "==";
    case CompareOp::Ge: return ">=";
    case CompareOp::Gt: return ">";
  }
  return "?";
}

StatePredicate StatePredicate::proposition(std::string name) {
  StatePredicate p;
  p.kind = Kind::Prop;
  p.prop = std::move(name);
  return p;
}

StatePredicate StatePredicate::clock(ClockAtom a) {
  StatePredicate p;
  p.kind = Kind::Clock;
  p.atom = a;
  return p;
}

StatePredicate StatePredicate::conj(StatePredicate a, StatePredicate b) {
  StatePredicate p;
  p.kind = Kind::And;
  p.children = {std::move(a), std::move(b)};
  return p;
}

StatePredicate StatePredicate::disj(StatePredicate a, StatePredicate b) {
  StatePredicate p;
  p.kind = Kind::Or;
  p.children = {std::move(a), std::move(b)};
  return p;
}

StatePredicate StatePredicate::negation(StatePredicate a) {
  StatePredicate p;
  p.kind = Kind::Not;
  p.children = {std::move(a)};
  return p;
}

std::optional<ModeId> TimedAutomaton::find_mode(std::string_view name) const {
  for (ModeId q = 0; q < modes.size(); ++q)
    if (modes[q].name == name) return q;
  return std::nullopt;
}

std::optional<ClockIndex> TimedAutomaton::find_clock(std::string_view name) const {
  for (std::size_t k = 0; k < clocks.size(); ++k)
    if (clocks[k] == name) return k + 1;
  return std::nullopt;
}

std::vector<ModeId> TimedAutomaton::modes_with(std::string_view name) const {
  std::vector<ModeId> out;
  for (ModeId q = 0; q < modes.size(); ++q) {
    const auto& m = modes[q];
    if (m.name == name || std::find(m.labels.begin(), m.labels.end(), name) != m.labels.end()) out.push_back(q);
  }
  return out;
}

bool TimedAutomaton::has_proposition(std::string_view name) const {
  return std::any_of(modes.begin(), modes.end(), [&](const Mode& m) {
    return m.name == name || std::find(m.labels.begin(), m.labels.end(), name) != m.labels.end();
  });
}

ClockIndex TimedAutomaton::add_clock(std::string name) {
  if (find_clock(name)) throw ModelError("clock '" + name + "' already declared");
  clocks.push_back(std::move(name));
  return clocks.size();
}

std::int32_t max_constant(const StatePredicate& p) {
  std::int32_t c = 0;
  if (p.kind == StatePredicate::Kind::Clock) c = std::abs(p.atom.constant);
  for (const auto& child : p.children) c = std::max(c, max_constant(child));
  return c;
}

std::int32_t TimedAutomaton::max_constant() const {
  std::int32_t c = nzf::max_constant(initial);
  auto scan = [&](const Conjunction& conj) {
    for (const auto& a : conj) c = std::max(c, std::abs(a.constant));
  };
  for (const auto& m : modes) scan(m.invariant);
  for (const auto& t : transitions) scan(t.guard);
  return c;
}

std::vector<std::string> TimedAutomaton::mode_names() const {
  std::vector<std::string> names;
  names.reserve(modes.size());
  for (const auto& m : modes) names.push_back(m.name);
  return names;
}

namespace {
void check_atom(const TimedAutomaton& a, const ClockAtom& atom, const std::string& where) {
  if (atom.clock > a.clocks.size()) throw ModelError(where + ": clock index out of range");
}

void check_predicate(const TimedAutomaton& a, const StatePredicate& p) {
  switch (p.kind) {
    case StatePredicate::Kind::Prop:
      if (!a.has_proposition(p.prop)) throw ModelError("unknown mode or label '" + p.prop + "'");
      break;
    case StatePredicate::Kind::Clock: check_atom(a, p.atom, "initial condition"); break;
    default: break;
  }
  for (const auto& c : p.children) check_predicate(a, c);
}
}  // namespace

void TimedAutomaton::validate() const {
  if (modes.empty()) throw ModelError("automaton has no modes");
  std::set<std::string> names;
  for (const auto& m : modes) {
    if (!names.insert(m.name).second) throw ModelError("duplicate mode '" + m.name + "'");
    for (const auto& atom : m.invariant) check_atom(*this, atom, "invariant of " + m.name);
  }
  std::set<std::string> clock_names(clocks.begin(), clocks.end());
  if (clock_names.size() != clocks.size()) throw ModelError("duplicate clock name");
  for (const auto& t : transitions) {
    if (t.source >= modes.size() || t.target >= modes.size())
      throw ModelError("transition " + std::to_string(t.id) + " references an unknown mode");
    for (const auto& atom : t.guard) check_atom(*this, atom, "guard of transition " + std::to_string(t.id));
    for (auto x : t.resets)
      if (x == 0 || x > clocks.size())
        throw ModelError("transition " + std::to_string(t.id) + " resets an unknown clock");
  }
  check_predicate(*this, initial);
}

}  // namespace nzf

#include "nzf/region_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <set>

namespace nzf {

namespace {

void compact_ranks(Region& r) {
  std::set<std::int32_t> used;
  for (auto k : r.rank)
    if (k > 0) used.insert(k);
  std::map<std::int32_t, std::int32_t> to;
  std::int32_t next = 1;
  for (auto k : used) to[k] = next++;
  for (auto& k : r.rank)
    if (k > 0) k = to[k];
}

void note_atom(std::vector<std::int32_t>& c, const ClockAtom& a) {
  if (a.clock == 0) return;
  auto& slot = c.at(a.clock - 1);
  slot = std::max(slot, std::abs(a.constant));
}

void note_predicate(std::vector<std::int32_t>& c, const StatePredicate& p) {
  if (p.kind == StatePredicate::Kind::Clock) note_atom(c, p.atom);
  for (const auto& child : p.children) note_predicate(c, child);
}

void note_formula(std::vector<std::int32_t>& c, const Formula& f) {
  if (f.kind == FormulaKind::Atom) note_predicate(c, f.atom);
  if (f.lhs) note_formula(c, *f.lhs);
  if (f.rhs) note_formula(c, *f.rhs);
}

}  // namespace

std::vector<std::int32_t> RegionOracle::clock_ceilings(const TimedAutomaton& a, const Formula* f) {
  std::vector<std::int32_t> c(a.clocks.size(), 0);
  for (const auto& m : a.modes)
    for (const auto& atom : m.invariant) note_atom(c, atom);
  for (const auto& t : a.transitions)
    for (const auto& atom : t.guard) note_atom(c, atom);
  note_predicate(c, a.initial);
  if (f) note_formula(c, *f);
  return c;
}

RegionOracle::RegionOracle(const TimedAutomaton& a, std::vector<std::int32_t> ceilings)
    : a_(a), clocks_(a.clocks.size()), ceiling_(std::move(ceilings)) {
  a_.validate();
  if (clocks_ > kMaxClocks) throw RegionOracleError("region oracle supports at most 3 clocks");
  if (ceiling_.size() != clocks_) throw RegionOracleError("one ceiling per clock expected");
  for (auto c : ceiling_)
    if (c < 0 || c > kMaxCeiling) throw RegionOracleError("region oracle supports ceilings up to 4");
  ceiling_.push_back(1);  // tick clock
  enumerate();
  build_edges();
}

bool RegionOracle::holds(const Region& r, const ClockAtom& a) const {
  if (a.clock == 0) {
    switch (a.op) {
      case CompareOp::Lt: return 0 < a.constant;
      case CompareOp::Le: return 0 <= a.constant;
      case CompareOp::Eq: return 0 == a.constant;
      case CompareOp::Ge: return 0 >= a.constant;
      case CompareOp::Gt: return 0 > a.constant;
    }
  }
  const auto i = a.clock - 1;
  const std::int32_t ip = r.ip[i], c = a.constant;
  if (ip > ceiling_[i]) return a.op == CompareOp::Ge || a.op == CompareOp::Gt;
  if (r.rank[i] == 0) {
    switch (a.op) {
      case CompareOp::Lt: return ip < c;
      case CompareOp::Le: return ip <= c;
      case CompareOp::Eq: return ip == c;
      case CompareOp::Ge: return ip >= c;
      case CompareOp::Gt: return ip > c;
    }
  }
  // ip < x < ip + 1
  switch (a.op) {
    case CompareOp::Lt:
    case CompareOp::Le: return ip + 1 <= c;
    case CompareOp::Eq: return false;
    case CompareOp::Ge:
    case CompareOp::Gt: return ip >= c;
  }
  return false;
}

bool RegionOracle::holds(const Region& r, const Conjunction& c) const {
  return std::all_of(c.begin(), c.end(), [&](const ClockAtom& a) { return holds(r, a); });
}

bool RegionOracle::admissible(const Region& r) const { return holds(r, a_.modes[r.mode].invariant); }

void RegionOracle::enumerate() {
  const std::size_t n = clocks_ + 1;
  for (ModeId q = 0; q < a_.modes.size(); ++q) {
    Region r;
    r.mode = q;
    r.ip.assign(n, 0);
    r.rank.assign(n, 0);
    std::function<void(std::size_t)> pick_ip = [&](std::size_t i) {
      if (i < n) {
        for (std::int32_t v = 0; v <= ceiling_[i] + 1; ++v) {
          r.ip[i] = v;
          pick_ip(i + 1);
        }
        return;
      }
      // Clocks strictly below their ceiling may carry a fractional part.
      std::vector<std::size_t> free;
      for (std::size_t k = 0; k < n; ++k)
        if (r.ip[k] < ceiling_[k]) free.push_back(k);
      std::vector<std::int32_t> ranks(free.size(), 0);
      std::function<void(std::size_t)> pick_rank = [&](std::size_t j) {
        if (j < free.size()) {
          for (std::int32_t v = 0; v <= static_cast<std::int32_t>(free.size()); ++v) {
            ranks[j] = v;
            pick_rank(j + 1);
          }
          return;
        }
        std::int32_t top = 0;
        std::set<std::int32_t> used;
        for (auto v : ranks)
          if (v > 0) used.insert(v), top = std::max(top, v);
        if (static_cast<std::int32_t>(used.size()) != top) return;
        Region cand = r;
        std::fill(cand.rank.begin(), cand.rank.end(), 0);
        for (std::size_t k = 0; k < free.size(); ++k) cand.rank[free[k]] = ranks[k];
        if (!admissible(cand)) return;
        index_.emplace(cand, regions_.size());
        regions_.push_back(std::move(cand));
      };
      pick_rank(0);
    };
    pick_ip(0);
  }
}

std::size_t RegionOracle::id_of(const Region& r) const {
  auto it = index_.find(r);
  if (it == index_.end()) throw RegionOracleError("region outside the enumerated graph");
  return it->second;
}

std::optional<Region> RegionOracle::time_successor(const Region& r) const {
  Region s = r;
  bool any_integer = false;
  for (std::size_t i = 0; i < s.ip.size(); ++i)
    if (s.ip[i] <= ceiling_[i] && s.rank[i] == 0) any_integer = true;
  if (any_integer) {
    for (std::size_t i = 0; i < s.ip.size(); ++i) {
      if (s.ip[i] > ceiling_[i]) continue;
      if (s.rank[i] > 0) {
        ++s.rank[i];
      } else if (s.ip[i] == ceiling_[i]) {
        s.ip[i] = ceiling_[i] + 1;
      } else {
        s.rank[i] = 1;
      }
    }
    compact_ranks(s);
    return s;
  }
  std::int32_t top = 0;
  for (auto k : s.rank) top = std::max(top, k);
  if (top == 0) return std::nullopt;  // every clock is above its ceiling
  for (std::size_t i = 0; i < s.ip.size(); ++i) {
    if (s.rank[i] == top) {
      ++s.ip[i];
      s.rank[i] = 0;
    }
  }
  return s;
}

Region RegionOracle::reset(Region r, const std::vector<ClockIndex>& clocks) const {
  for (auto x : clocks) {
    r.ip.at(x - 1) = 0;
    r.rank.at(x - 1) = 0;
  }
  compact_ranks(r);
  return r;
}

void RegionOracle::build_edges() {
  succ_.assign(size(), {});
  pred_.assign(size(), {});
  auto link = [&](std::size_t from, std::size_t to, EdgeKind k) {
    succ_[from].push_back({to, k});
    pred_[to].push_back({from, k});
  };
  const ClockIndex tick = clocks_ + 1;
  for (std::size_t i = 0; i < size(); ++i) {
    const Region r = regions_[i];
    if (auto s = time_successor(r); s && admissible(*s)) link(i, id_of(*s), EdgeKind::Time);
    for (const auto& t : a_.transitions) {
      if (t.source != r.mode || !holds(r, t.guard)) continue;
      Region s = reset(r, t.resets);
      s.mode = t.target;
      if (admissible(s)) link(i, id_of(s), EdgeKind::Discrete);
    }
    if (r.ip[clocks_] >= 1) link(i, id_of(reset(r, {tick})), EdgeKind::Tick);
  }
}

std::optional<std::size_t> RegionOracle::locate(ModeId q, const std::vector<double>& v) const {
  if (v.size() != clocks_) throw RegionOracleError("one value per clock expected");
  Region r;
  r.mode = q;
  r.ip.assign(clocks_ + 1, 0);
  r.rank.assign(clocks_ + 1, 0);
  std::vector<double> frac(clocks_ + 1, 0.0);
  for (std::size_t i = 0; i < clocks_; ++i) {
    const double fl = std::floor(v[i]);
    const double fr = v[i] - fl;
    const auto ip = static_cast<std::int32_t>(fl);
    if (ip > ceiling_[i] || (ip == ceiling_[i] && fr > 0)) {
      r.ip[i] = ceiling_[i] + 1;
    } else {
      r.ip[i] = ip;
      frac[i] = fr;
    }
  }
  std::vector<double> distinct;
  for (auto f : frac)
    if (f > 0) distinct.push_back(f);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  for (std::size_t i = 0; i < frac.size(); ++i)
    if (frac[i] > 0)
      r.rank[i] = static_cast<std::int32_t>(std::lower_bound(distinct.begin(), distinct.end(), frac[i]) -
                                            distinct.begin()) + 1;
  auto it = index_.find(r);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

RegionOracle::RegionSet RegionOracle::sat(const StatePredicate& p) const {
  using K = StatePredicate::Kind;
  RegionSet s(size(), 0);
  switch (p.kind) {
    case K::True: return all();
    case K::Prop: {
      std::vector<char> in(a_.modes.size(), 0);
      auto modes = a_.modes_with(p.prop);
      if (modes.empty()) throw ModelError("unknown mode or label '" + p.prop + "'");
      for (auto q : modes) in[q] = 1;
      for (std::size_t i = 0; i < size(); ++i) s[i] = in[regions_[i].mode];
      return s;
    }
    case K::Clock:
      for (std::size_t i = 0; i < size(); ++i) s[i] = holds(regions_[i], p.atom);
      return s;
    case K::And: return intersect(sat(p.children.at(0)), sat(p.children.at(1)));
    case K::Or: return unite(sat(p.children.at(0)), sat(p.children.at(1)));
    case K::Not: return negate(sat(p.children.at(0)));
  }
  return s;
}

RegionOracle::RegionSet RegionOracle::negate(const RegionSet& s) const {
  RegionSet r(size());
  for (std::size_t i = 0; i < size(); ++i) r[i] = !s[i];
  return r;
}

RegionOracle::RegionSet RegionOracle::unite(const RegionSet& a, const RegionSet& b) {
  RegionSet r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] || b[i];
  return r;
}

RegionOracle::RegionSet RegionOracle::intersect(const RegionSet& a, const RegionSet& b) {
  RegionSet r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] && b[i];
  return r;
}

RegionOracle::RegionSet RegionOracle::until(const RegionSet& s1, const RegionSet& s2) const {
  // s1 must hold at the source of every step, and at both ends of a delay.
  RegionSet in = s2;
  std::vector<std::size_t> work;
  for (std::size_t i = 0; i < size(); ++i)
    if (in[i]) work.push_back(i);
  while (!work.empty()) {
    const auto x = work.back();
    work.pop_back();
    for (const auto& e : pred_[x]) {
      if (in[e.to] || !s1[e.to]) continue;
      if (e.kind == EdgeKind::Time && !s1[x]) continue;
      in[e.to] = 1;
      work.push_back(e.to);
    }
  }
  return in;
}

RegionOracle::RegionSet RegionOracle::nzf(const RegionSet& s0, const RegionSet& s1, const RegionSet& s2) const {
  // Tarjan on the subgraph induced by s1, iteratively.
  const std::size_t n = size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<char> on_stack(n, 0);
  std::vector<std::size_t> stack;
  std::size_t counter = 0, comps = 0;
  struct Frame {
    std::size_t v, edge;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (!s1[root] || index[root] != kUnset) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& fr = call.back();
      const auto v = fr.v;
      if (fr.edge < succ_[v].size()) {
        const auto w = succ_[v][fr.edge++].to;
        if (!s1[w]) continue;
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = comps;
        } while (w != v);
        ++comps;
      }
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
    }
  }

  std::vector<char> has_tick(comps, 0), has_goal(comps, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (comp[v] == kUnset) continue;
    if (s2[v]) has_goal[comp[v]] = 1;
    for (const auto& e : succ_[v])
      if (e.kind == EdgeKind::Tick && comp[e.to] == comp[v]) has_tick[comp[v]] = 1;
  }
  RegionSet fair(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    if (comp[v] != kUnset && has_tick[comp[v]] && has_goal[comp[v]]) fair[v] = 1;
  return until(s0, until(s1, fair));
}

RegionOracle::RegionSet RegionOracle::freeze(const RegionSet& s, ClockIndex x) const {
  RegionSet r(size(), 0);
  for (std::size_t i = 0; i < size(); ++i) r[i] = s[id_of(reset(regions_[i], {x}))];
  return r;
}

RegionOracle::RegionSet RegionOracle::eval(const Formula& f, bool non_zeno) const {
  using K = FormulaKind;
  switch (f.kind) {
    case K::Atom: return sat(f.atom);
    case K::Or: return unite(eval(*f.lhs, non_zeno), eval(*f.rhs, non_zeno));
    case K::Not: return negate(eval(*f.lhs, non_zeno));
    case K::Freeze: return freeze(eval(*f.lhs, non_zeno), f.freeze_clock);
    case K::ExistsUntil: {
      RegionSet y2 = eval(*f.rhs, non_zeno);
      if (non_zeno) y2 = intersect(y2, nzf(all(), all(), all()));
      return until(eval(*f.lhs, non_zeno), y2);
    }
    case K::ExistsAlways: {
      const auto w = eval(*f.lhs, non_zeno);
      return nzf(w, w, all());
    }
    case K::ExistsAlwaysEventually: return nzf(all(), all(), eval(*f.lhs, non_zeno));
    case K::ExistsEventuallyAlways: return nzf(all(), eval(*f.lhs, non_zeno), all());
    default: throw RegionOracleError("formula must be in the core grammar");
  }
}

StateSet RegionOracle::to_state_set(const RegionSet& s, std::size_t dim) const {
  if (dim != clocks_ + 2) throw RegionOracleError("dimension mismatch");
  StateSet out(a_.modes.size(), dim);
  for (std::size_t id = 0; id < size(); ++id) {
    const Region& r = regions_[id];
    if (!s[id] || r.ip[clocks_] != 0 || r.rank[clocks_] != 0) continue;
    Zone z = Zone::universal(dim);
    for (std::size_t i = 0; i < clocks_; ++i) {
      const ClockIndex x = i + 1;
      const std::int32_t ip = r.ip[i];
      if (ip > ceiling_[i]) {
        z.constrain(0, x, strict(-ceiling_[i]));
      } else if (r.rank[i] == 0) {
        z.constrain(x, 0, weak(ip)).constrain(0, x, weak(-ip));
      } else {
        z.constrain(x, 0, strict(ip + 1)).constrain(0, x, strict(-ip));
      }
    }
    for (std::size_t i = 0; i < clocks_; ++i) {
      for (std::size_t j = 0; j < clocks_; ++j) {
        if (i == j || r.rank[i] == 0 || r.rank[j] == 0) continue;
        const std::int32_t d = r.ip[i] - r.ip[j];
        if (r.rank[i] == r.rank[j]) {
          z.constrain(i + 1, j + 1, weak(d));
        } else if (r.rank[i] < r.rank[j]) {
          z.constrain(i + 1, j + 1, strict(d)).constrain(j + 1, i + 1, strict(1 - d));
        }
      }
    }
    out.add(r.mode, z);
  }
  return out;
}

}  // namespace nzf

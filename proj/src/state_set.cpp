#include "nzf/state_set.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nzf {

bool StateSet::add(ModeId q, const Zone& z) {
  if (z.is_empty()) return false;
  auto& list = zones_.at(q);
  for (const auto& existing : list)
    if (includes(existing, z)) return false;
  std::erase_if(list, [&](const Zone& existing) { return includes(z, existing); });
  list.push_back(z);
  return true;
}

void StateSet::add_all(const StateSet& other) {
  for (ModeId q = 0; q < other.mode_count(); ++q)
    for (const auto& z : other.zones(q)) add(q, z);
}

bool StateSet::is_empty() const noexcept {
  return std::all_of(zones_.begin(), zones_.end(), [](const auto& l) { return l.empty(); });
}

std::size_t StateSet::zone_count() const noexcept {
  std::size_t n = 0;
  for (const auto& l : zones_) n += l.size();
  return n;
}

std::string StateSet::to_string(const std::vector<std::string>& mode_names,
                                const std::vector<std::string>& clock_names) const {
  std::ostringstream os;
  bool any = false;
  for (ModeId q = 0; q < zones_.size(); ++q)
    for (const auto& z : zones_[q]) {
      if (any) os << "\n";
      os << (q < mode_names.size() ? mode_names[q] : "q" + std::to_string(q)) << ": "
         << z.to_string(clock_names);
      any = true;
    }
  if (!any) os << "false";
  return os.str();
}

namespace {
void check_shape(const StateSet& a, const StateSet& b) {
  if (a.mode_count() != b.mode_count() || a.dim() != b.dim())
    throw std::invalid_argument("state sets over different systems");
}

// Pieces of z not covered by any zone in `cover`.
std::vector<Zone> uncovered(const Zone& z, const std::vector<Zone>& cover) {
  std::vector<Zone> pieces{z};
  for (const auto& c : cover) {
    std::vector<Zone> next;
    for (const auto& p : pieces) {
      auto rest = subtract(p, c);
      next.insert(next.end(), std::make_move_iterator(rest.begin()), std::make_move_iterator(rest.end()));
    }
    pieces = std::move(next);
    if (pieces.empty()) break;
  }
  return pieces;
}
}  // namespace

StateSet unite(const StateSet& a, const StateSet& b) {
  check_shape(a, b);
  StateSet r = a;
  r.add_all(b);
  return r;
}

StateSet intersect(const StateSet& a, const StateSet& b) {
  check_shape(a, b);
  StateSet r(a.mode_count(), a.dim());
  for (ModeId q = 0; q < a.mode_count(); ++q)
    for (const auto& za : a.zones(q))
      for (const auto& zb : b.zones(q)) r.add(q, intersect(za, zb));
  return r;
}

StateSet subtract(const StateSet& a, const StateSet& b) {
  check_shape(a, b);
  StateSet r(a.mode_count(), a.dim());
  for (ModeId q = 0; q < a.mode_count(); ++q)
    for (const auto& za : a.zones(q))
      for (auto& piece : uncovered(za, b.zones(q))) r.add(q, piece);
  return r;
}

bool includes(const StateSet& b, const StateSet& a) {
  check_shape(a, b);
  for (ModeId q = 0; q < a.mode_count(); ++q) {
    const auto& cover = b.zones(q);
    for (const auto& za : a.zones(q)) {
      if (std::any_of(cover.begin(), cover.end(), [&](const Zone& c) { return nzf::includes(c, za); }))
        continue;
      if (!uncovered(za, cover).empty()) return false;
    }
  }
  return true;
}

bool equals(const StateSet& a, const StateSet& b) { return includes(a, b) && includes(b, a); }

StateSet free_clock(const StateSet& s, ClockIndex x) {
  StateSet r(s.mode_count(), s.dim());
  for (ModeId q = 0; q < s.mode_count(); ++q)
    for (const auto& z : s.zones(q)) r.add(q, free_clock(z, x));
  return r;
}

StateSet constrain(const StateSet& s, ClockIndex i, ClockIndex j, raw_t b) {
  StateSet r(s.mode_count(), s.dim());
  for (ModeId q = 0; q < s.mode_count(); ++q)
    for (Zone z : s.zones(q)) r.add(q, z.constrain(i, j, b));
  return r;
}

StateSet constrain_zero(const StateSet& s, ClockIndex x) {
  StateSet r(s.mode_count(), s.dim());
  for (ModeId q = 0; q < s.mode_count(); ++q)
    for (Zone z : s.zones(q)) {
      z.constrain(x, 0, kLeZero);
      z.constrain(0, x, kLeZero);
      r.add(q, z);
    }
  return r;
}

}  // namespace nzf

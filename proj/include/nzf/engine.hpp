#pragma once

// Backward fixpoint evaluation of formulas, with exact and successively
// under-approximated computation of non-Zeno fair cycles.
//
// NZF(s0, s1, s2) is the set of states from which some time-divergent run
// keeps s0 until it reaches a point after which s1 holds forever and s2
// holds infinitely often.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "nzf/formula.hpp"
#include "nzf/symbolic.hpp"

namespace nzf {

enum class ApproxMode : int { Under = -1, Exact = 0, Over = 1 };

constexpr ApproxMode flip(ApproxMode m) { return static_cast<ApproxMode>(-static_cast<int>(m)); }
std::string_view to_string(ApproxMode m);
std::optional<ApproxMode> parse_approx_mode(std::string_view s);

enum class Verdict : std::uint8_t { Satisfied, Refuted, Inconclusive };
std::string_view to_string(Verdict v);

struct EngineConfig {
  std::size_t level = 1;
  bool big_chunks = true;
  bool non_zeno = true;
  /// Raised to the largest constant of the automaton and formula when lower.
  Ceiling ceiling{0};
  /// Minimum time per lap of an accepted cycle.
  std::int32_t cycle_threshold = 1;
  std::size_t max_iterations = 1'000'000;
};

struct EngineStats {
  std::size_t fixpoint_iterations = 0;
  std::size_t peak_zone_count = 0;
  /// Largest number of zone-search rounds any under-approximation used.
  std::size_t level_used = 0;
};

class FixpointLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A zone that lies on a fair cycle, as found by the zone search.
struct CycleZone {
  ModeId mode = 0;
  Zone zone;      // listed zone of s1 and s2 that the cycle passes through
  StateSet seed;  // states of `zone` that start such a cycle
};

struct CheckResult {
  Verdict verdict = Verdict::Inconclusive;
  StateSet witness;  // initial states satisfying the negated formula
  std::size_t final_zone_count = 0;  // zones in the evaluated negation
};

class Engine {
 public:
  /// `formula_constant` is the largest constant in the formulas to be checked.
  Engine(const TimedAutomaton& a, EngineConfig cfg, std::int32_t formula_constant = 0);

  const SymbolicSystem& system() const noexcept { return sys_; }
  const EngineConfig& config() const noexcept { return cfg_; }
  const EngineStats& stats() const noexcept { return stats_; }
  void reset_stats() { stats_ = {}; }

  /// States satisfying E s1 U s2.
  StateSet rch_bck(const StateSet& s1, const StateSet& s2);

  StateSet nzf_exact(const StateSet& s0, const StateSet& s1, const StateSet& s2);

  /// Listed zones of s whose time successors never leave them.
  StateSet get_zones_wo_upperbounds(const StateSet& s) const;
  /// First listed zone of s1 and s2 (modes in order, zones in list order)
  /// lying on a cycle inside s1 with lap time at least the threshold.
  std::optional<CycleZone> get_a_zone_w_DFS(const StateSet& s1, const StateSet& s2);

  StateSet nzf_under(const StateSet& s0, const StateSet& s1, const StateSet& s2, std::size_t level);
  StateSet nzf_under_big_chunks(const StateSet& s0, const StateSet& s1, const StateSet& s2, std::size_t level);
  StateSet nzf(const StateSet& s0, const StateSet& s1, const StateSet& s2, ApproxMode mode);

  /// `f` must be in the core grammar.
  StateSet eval(const Formula& f, ApproxMode mode);
  CheckResult check(const Formula& f, ApproxMode mode);

 private:
  // gfp X. X subset of seed, and every X state starts a path inside
  // `within` that returns to X after at least the threshold time.
  StateSet cycle_gfp(const StateSet& within, const StateSet& seed);
  bool may_return(const StateSet& within, ModeId q, const Zone& zeta) const;
  StateSet under(const StateSet& s0, const StateSet& s1, const StateSet& s2, std::size_t level, bool big);
  StateSet non_zeno_states(ApproxMode mode);
  void tick();
  void note(const StateSet& s);

  EngineConfig cfg_;
  SymbolicSystem sys_;
  EngineStats stats_;
  std::map<ApproxMode, StateSet> non_zeno_cache_;
};

}  // namespace nzf

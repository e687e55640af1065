#include "nzf/benchmarks.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "nzf/model_io.hpp"

namespace nzf {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Fischer: return "fischer";
    case Family::FischerBug: return "fischer-bug";
    case Family::Csma: return "csma";
    case Family::CsmaBug: return "csma-bug";
    case Family::Pathos: return "pathos";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view s) {
  for (auto f : {Family::Fischer, Family::FischerBug, Family::Csma, Family::CsmaBug, Family::Pathos})
    if (to_string(f) == s) return f;
  return std::nullopt;
}

namespace {

using State = std::vector<int>;

struct Move {
  State target;
  Conjunction guard;
  std::vector<ClockIndex> resets;
};

struct ProductSpec {
  std::vector<std::string> clocks;
  State initial;
  std::function<std::string(const State&)> name;
  std::function<Conjunction(const State&)> invariant;
  std::function<std::vector<std::string>(const State&)> labels;
  std::function<std::vector<Move>(const State&)> moves;
};

TimedAutomaton build_product(const ProductSpec& spec) {
  TimedAutomaton a;
  for (const auto& c : spec.clocks) a.add_clock(c);
  std::map<State, ModeId> ids;
  std::vector<State> states;
  std::queue<State> work;
  auto visit = [&](const State& s) {
    auto [it, fresh] = ids.emplace(s, states.size());
    if (fresh) {
      states.push_back(s);
      work.push(s);
    }
    return it->second;
  };
  visit(spec.initial);
  struct Pending {
    ModeId from, to;
    Move m;
  };
  std::vector<Pending> edges;
  while (!work.empty()) {
    State s = work.front();
    work.pop();
    const ModeId from = ids.at(s);
    for (auto& m : spec.moves(s)) {
      const ModeId to = visit(m.target);
      edges.push_back({from, to, std::move(m)});
    }
  }
  for (const auto& s : states) a.modes.push_back(Mode{spec.name(s), spec.invariant(s), spec.labels(s)});
  for (auto& e : edges) {
    Transition t;
    t.id = a.transitions.size();
    t.source = e.from;
    t.target = e.to;
    t.guard = std::move(e.m.guard);
    t.resets = std::move(e.m.resets);
    a.transitions.push_back(std::move(t));
  }
  StatePredicate init = StatePredicate::proposition(spec.name(spec.initial));
  for (ClockIndex x = 1; x <= a.clocks.size(); ++x)
    init = StatePredicate::conj(std::move(init), StatePredicate::clock({x, CompareOp::Eq, 0}));
  a.initial = std::move(init);
  a.validate();
  return a;
}

ClockAtom atom(ClockIndex x, CompareOp op, int c) { return ClockAtom{x, op, c}; }

std::string join_disjunction(const std::string& prefix, int n) {
  std::string out;
  for (int i = 1; i <= n; ++i) {
    if (i > 1) out += " or ";
    out += prefix + std::to_string(i);
  }
  return out;
}

void check_range(std::string_view family, int n, int lo, int hi) {
  if (n < lo || n > hi)
    throw std::invalid_argument(std::string(family) + " needs " + std::to_string(lo) + " <= n <= " +
                                std::to_string(hi));
}

// ---- Fischer ----------------------------------------------------------------

constexpr int kFischerA = 1;  // write deadline
constexpr int kFischerB = 2;  // read delay

enum FischerLoc { kIdle, kReady, kWait, kCritical };
constexpr const char* kFischerNames[] = {"idle", "ready", "wait", "critical"};

}  // namespace

Benchmark gen_fischer(int n, bool bug) {
  check_range(bug ? "fischer-bug" : "fischer", n, 2, 5);
  ProductSpec spec;
  for (int i = 1; i <= n; ++i) spec.clocks.push_back("x" + std::to_string(i));
  spec.initial.assign(n + 1, 0);  // locations, then the lock owner (0 = free)
  spec.name = [n](const State& s) {
    std::string out;
    for (int i = 0; i < n; ++i) out += std::string(1, "IRWC"[s[i]]);
    return out + "_id" + std::to_string(s[n]);
  };
  spec.labels = [n](const State& s) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(kFischerNames[s[i]] + std::to_string(i + 1));
    return out;
  };
  spec.invariant = [n, bug](const State& s) {
    Conjunction inv;
    for (int i = 0; i < n; ++i) {
      const ClockIndex x = i + 1;
      if (s[i] == kReady) inv.push_back(atom(x, CompareOp::Le, kFischerA));
      if (!bug) continue;
      if (s[i] == kIdle) inv.push_back(atom(x, CompareOp::Le, 2));
      if (s[i] == kWait) inv.push_back(atom(x, CompareOp::Le, 3));
      if (s[i] == kCritical) inv.push_back(atom(x, CompareOp::Le, 2));
    }
    return inv;
  };
  spec.moves = [n, bug](const State& s) {
    std::vector<Move> out;
    const int id = s[n];
    for (int i = 0; i < n; ++i) {
      const ClockIndex x = i + 1;
      const int me = i + 1;
      auto go = [&](int loc, std::optional<int> new_id, Conjunction guard) {
        State t = s;
        t[i] = loc;
        if (new_id) t[n] = *new_id;
        out.push_back({t, std::move(guard), {x}});
      };
      switch (s[i]) {
        case kIdle:
          if (id == 0) go(kReady, std::nullopt, {});
          else if (bug) go(kIdle, std::nullopt, {});  // keep polling the lock
          break;
        case kReady: go(kWait, me, {atom(x, CompareOp::Le, kFischerA)}); break;
        case kWait:
          if (id == me) go(kCritical, std::nullopt, {atom(x, CompareOp::Gt, kFischerB)});
          if (bug) go(kIdle, 0, {});  // gives up without re-reading the lock
          else if (id != me) go(kIdle, std::nullopt, {});
          break;
        case kCritical: go(kIdle, 0, {}); break;
      }
    }
    return out;
  };
  Benchmark b;
  b.family = bug ? Family::FischerBug : Family::Fischer;
  b.n = n;
  b.automaton = build_product(spec);
  if (bug) {
    b.property = "AG(ready1 -> AF(" + join_disjunction("critical", n) + "))";
    b.notes =
        "Fischer mutual exclusion, " + std::to_string(n) +
        " processes, with a blocking bug.\n"
        "Every location is time-bounded. A waiting process may return to idle\n"
        "at any time and clears the lock when it does, so processes can keep\n"
        "cancelling each other and nobody reaches critical.";
  } else {
    b.property = "AG(ready1 -> AF critical1)";
    b.notes = "Fischer mutual exclusion, " + std::to_string(n) +
              " processes.\n"
              "Lock write within 1 time unit of reading it free, lock re-read after\n"
              "more than 2. Mode names list each process location (I, R, W, C) and\n"
              "the lock owner.";
  }
  return b;
}

namespace {

// ---- CSMA/CD ----------------------------------------------------------------

constexpr int kLambda = 808;  // frame transmission time
constexpr int kSigma = 26;    // propagation delay

enum BusLoc { kBusIdle, kBusActive, kBusCollision };
enum SenderLoc { kSWait, kSTransm, kSRetry, kSError };
constexpr const char* kSenderNames[] = {"wait", "transm", "retry", "error"};
constexpr const char* kBusNames[] = {"bus_idle", "bus_active", "bus_collision"};

}  // namespace

Benchmark gen_csma(int n, bool bug) {
  check_range(bug ? "csma-bug" : "csma", n, 2, 4);
  ProductSpec spec;
  spec.clocks.push_back("y");
  for (int i = 1; i <= n; ++i) spec.clocks.push_back("x" + std::to_string(i));
  const ClockIndex y = 1;
  auto xc = [](int i) -> ClockIndex { return static_cast<ClockIndex>(i) + 2; };  // sender i, 0-based
  spec.initial.assign(n + 1, 0);  // bus, then senders
  spec.name = [n](const State& s) {
    std::string out(1, "IAC"[s[0]]);
    out += "_";
    for (int i = 1; i <= n; ++i) out += std::string(1, "WTRE"[s[i]]);
    return out;
  };
  spec.labels = [n](const State& s) {
    std::vector<std::string> out{kBusNames[s[0]]};
    for (int i = 1; i <= n; ++i) out.push_back(kSenderNames[s[i]] + std::to_string(i));
    return out;
  };
  spec.invariant = [n, y, xc](const State& s) {
    Conjunction inv;
    if (s[0] == kBusCollision) inv.push_back(atom(y, CompareOp::Lt, kSigma));
    for (int i = 0; i < n; ++i) {
      if (s[i + 1] == kSTransm) inv.push_back(atom(xc(i), CompareOp::Le, kLambda));
      if (s[i + 1] == kSRetry) inv.push_back(atom(xc(i), CompareOp::Lt, 2 * kSigma));
    }
    return inv;
  };
  spec.moves = [n, bug, y, xc](const State& s) {
    std::vector<Move> out;
    for (int i = 0; i < n; ++i) {
      const int loc = s[i + 1];
      const ClockIndex x = xc(i);
      // begin: start sending; collides if the bus went active less than sigma ago
      if (loc == kSWait || loc == kSRetry) {
        Conjunction g;
        if (loc == kSRetry) g.push_back(atom(x, CompareOp::Lt, 2 * kSigma));
        State t = s;
        t[i + 1] = kSTransm;
        if (s[0] == kBusIdle) {
          t[0] = kBusActive;
          out.push_back({t, g, {y, x}});
        } else if (s[0] == kBusActive) {
          t[0] = kBusCollision;
          g.push_back(atom(y, CompareOp::Lt, kSigma));
          out.push_back({t, g, {y, x}});
        }
      }
      // end: frame completed
      if (loc == kSTransm && s[0] == kBusActive) {
        State t = s;
        t[0] = kBusIdle;
        t[i + 1] = kSWait;
        out.push_back({t, {atom(x, CompareOp::Eq, kLambda)}, {y, x}});
      }
      // busy: the carrier is sensed
      if (s[0] == kBusActive && (loc == kSWait || loc == kSRetry)) {
        Conjunction g{atom(y, CompareOp::Ge, kSigma)};
        if (loc == kSRetry) g.push_back(atom(x, CompareOp::Lt, 2 * kSigma));
        State t = s;
        t[i + 1] = kSRetry;
        out.push_back({t, g, {x}});
      }
      if (bug && loc == kSRetry) {
        State t = s;
        t[i + 1] = kSError;
        out.push_back({t, {}, {}});
      }
    }
    // cd: collision broadcast. Waiting and retrying senders always react; a
    // transmitting sender reacts only within the 2*sigma detection window.
    if (s[0] == kBusCollision) {
      std::vector<int> transmitting;
      for (int i = 0; i < n; ++i)
        if (s[i + 1] == kSTransm) transmitting.push_back(i);
      for (unsigned mask = 0; mask < (1u << transmitting.size()); ++mask) {
        State t = s;
        t[0] = kBusIdle;
        Conjunction g{atom(y, CompareOp::Lt, kSigma)};
        std::vector<ClockIndex> resets{y};
        for (int i = 0; i < n; ++i) {
          if (s[i + 1] == kSWait || s[i + 1] == kSRetry) {
            t[i + 1] = kSRetry;
            resets.push_back(xc(i));
          }
        }
        for (std::size_t k = 0; k < transmitting.size(); ++k) {
          const int i = transmitting[k];
          if (mask & (1u << k)) {
            g.push_back(atom(xc(i), CompareOp::Lt, 2 * kSigma));
            t[i + 1] = kSRetry;
            resets.push_back(xc(i));
          } else {
            g.push_back(atom(xc(i), CompareOp::Ge, 2 * kSigma));
          }
        }
        out.push_back({t, g, resets});
      }
    }
    return out;
  };
  Benchmark b;
  b.family = bug ? Family::CsmaBug : Family::Csma;
  b.n = n;
  b.automaton = build_product(spec);
  if (bug) {
    b.property = "AG(retry1 -> AF(" + join_disjunction("transm", n) + "))";
    b.notes = "CSMA/CD, " + std::to_string(n) +
              " senders, with an error sink.\n"
              "Any retrying sender may move to an error mode with no way out.";
  } else {
    b.property = "AG(transm1 -> AF(transm1 and x1 >= 52))";
    b.notes = "CSMA/CD, " + std::to_string(n) +
              " senders. Frame length 808, propagation delay 26; a sender\n"
              "that sees a collision within 52 of starting backs off and retries.\n"
              "Mode names: bus (I, A, C), then each sender (W, T, R).";
  }
  return b;
}

namespace {

enum PathosLoc { kPIdle, kPReady, kPRun };
constexpr const char* kPathosNames[] = {"idle", "ready", "run"};

}  // namespace

Benchmark gen_pathos(int n) {
  check_range("pathos", n, 2, 6);
  ProductSpec spec;
  for (int i = 1; i <= n; ++i) spec.clocks.push_back("x" + std::to_string(i));
  spec.initial.assign(n, kPIdle);
  spec.name = [n](const State& s) {
    std::string out = "P";
    for (int i = 0; i < n; ++i) out += std::string(1, "IRX"[s[i]]);
    return out;
  };
  spec.labels = [n](const State& s) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(kPathosNames[s[i]] + std::to_string(i + 1));
    return out;
  };
  spec.invariant = [n](const State& s) {
    Conjunction inv;
    for (int i = 0; i < n; ++i)
      if (s[i] == kPRun) inv.push_back(atom(static_cast<ClockIndex>(i) + 1, CompareOp::Le, 1));
    return inv;
  };
  spec.moves = [n](const State& s) {
    std::vector<Move> out;
    bool cpu_busy = false;
    for (int i = 0; i < n; ++i) cpu_busy = cpu_busy || s[i] == kPRun;
    for (int i = 0; i < n; ++i) {
      const ClockIndex x = static_cast<ClockIndex>(i) + 1;
      State t = s;
      switch (s[i]) {
        case kPIdle:
          t[i] = kPReady;
          out.push_back({t, {atom(x, CompareOp::Ge, n)}, {x}});
          break;
        case kPReady: {
          bool blocked = cpu_busy;
          for (int j = 0; j < i; ++j) blocked = blocked || s[j] == kPReady;
          if (blocked) break;
          t[i] = kPRun;
          out.push_back({t, {}, {x}});
          break;
        }
        case kPRun:
          t[i] = kPIdle;
          out.push_back({t, {}, {x}});
          break;
      }
    }
    return out;
  };
  Benchmark b;
  b.family = Family::Pathos;
  b.n = n;
  b.automaton = build_product(spec);
  b.property = "AGF run" + std::to_string(n);
  b.notes = "Priority scheduling, " + std::to_string(n) +
            " processes, process 1 highest. A process is\n"
            "released at least n time units after its previous release, waits\n"
            "until the CPU is free and no higher-priority process is ready, then\n"
            "runs for at most 1 time unit without preemption.";
  return b;
}

Benchmark generate(Family f, int n) {
  switch (f) {
    case Family::Fischer: return gen_fischer(n, false);
    case Family::FischerBug: return gen_fischer(n, true);
    case Family::Csma: return gen_csma(n, false);
    case Family::CsmaBug: return gen_csma(n, true);
    case Family::Pathos: return gen_pathos(n);
  }
  throw std::invalid_argument("unknown family");
}

FormulaPtr property_formula(const Benchmark& b, TimedAutomaton& a) {
  a = b.automaton;
  return parse_formula(b.property, a);
}

std::string model_text(const Benchmark& b) {
  std::ostringstream os;
  std::istringstream notes(b.notes);
  for (std::string line; std::getline(notes, line);) os << "// " << line << "\n";
  os << "// property: " << b.property << "\n" << print_model(b.automaton);
  return os.str();
}

std::string write_benchmark(const Benchmark& b, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const std::string stem = std::string(to_string(b.family)) + "_" + std::to_string(b.n);
  const fs::path model = fs::path(dir) / (stem + ".ta");
  const fs::path formula = fs::path(dir) / (stem + ".tctl");
  std::ofstream(model) << model_text(b);
  std::ofstream(formula) << b.property << "\n";
  if (!fs::exists(model) || !fs::exists(formula)) throw std::runtime_error("cannot write to '" + dir + "'");
  return model.string();
}

}  // namespace nzf

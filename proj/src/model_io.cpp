#include "nzf/model_io.hpp"

#include <fstream>
#include <sstream>

#include "lexer.hpp"

namespace nzf {

namespace {

using detail::Token;
using detail::TokenStream;

std::optional<CompareOp> compare_op(const Token& t) {
  if (t.kind != Token::Kind::Symbol) return std::nullopt;
  if (t.text == "<") return CompareOp::Lt;
  if (t.text == "<=") return CompareOp::Le;
  if (t.text == "==" || t.text == "=") return CompareOp::Eq;
  if (t.text == ">=") return CompareOp::Ge;
  if (t.text == ">") return CompareOp::Gt;
  return std::nullopt;
}

class ModelParser {
 public:
  explicit ModelParser(std::string_view text) : ts_(detail::tokenize(text)) {}

  TimedAutomaton run() {
    bool saw_init = false;
    // Modes may be referenced before their declaration, so
    // transitions and the initial condition are resolved in a second pass.
    struct PendingTrans {
      std::string src, dst;
      Token at;
      Conjunction guard;
      std::vector<std::string> resets;
    };
    std::vector<PendingTrans> pending;
    while (!ts_.at_end()) {
      const Token kw = ts_.peek();
      if (ts_.accept("clocks")) {
        while (!ts_.is(";")) {
          a_.add_clock(ts_.ident());
          ts_.accept(",");
        }
        ts_.expect(";");
      } else if (ts_.accept("mode")) {
        Mode m;
        m.name = ts_.ident();
        if (a_.find_mode(m.name)) throw ParseError("duplicate mode '" + m.name + "'", kw.line, kw.column);
        ts_.expect("{");
        while (!ts_.accept("}")) {
          if (ts_.accept("inv")) {
            ts_.expect(":");
            m.invariant = conjunction();
          } else if (ts_.accept("labels")) {
            ts_.expect(":");
            while (!ts_.is(";")) {
              m.labels.push_back(ts_.ident());
              ts_.accept(",");
            }
          } else {
            ts_.fail("expected 'inv' or 'labels'");
          }
          ts_.expect(";");
        }
        a_.modes.push_back(std::move(m));
      } else if (ts_.accept("trans")) {
        PendingTrans t;
        t.at = kw;
        t.src = ts_.ident();
        ts_.expect("->");
        t.dst = ts_.ident();
        ts_.expect("{");
        while (!ts_.accept("}")) {
          if (ts_.accept("guard")) {
            ts_.expect(":");
            t.guard = conjunction();
          } else if (ts_.accept("reset")) {
            ts_.expect(":");
            while (!ts_.is(";")) {
              t.resets.push_back(ts_.ident());
              ts_.accept(",");
            }
          } else {
            ts_.fail("expected 'guard' or 'reset'");
          }
          ts_.expect(";");
        }
        pending.push_back(std::move(t));
      } else if (ts_.accept("init")) {
        if (saw_init) throw ParseError("duplicate init", kw.line, kw.column);
        saw_init = true;
        a_.initial = predicate();
        ts_.expect(";");
      } else {
        ts_.fail("expected 'clocks', 'mode', 'trans' or 'init'");
      }
    }
    for (auto& p : pending) {
      Transition t;
      t.id = a_.transitions.size();
      auto src = a_.find_mode(p.src);
      auto dst = a_.find_mode(p.dst);
      if (!src) throw ParseError("unknown mode '" + p.src + "'", p.at.line, p.at.column);
      if (!dst) throw ParseError("unknown mode '" + p.dst + "'", p.at.line, p.at.column);
      t.source = *src;
      t.target = *dst;
      t.guard = std::move(p.guard);
      for (const auto& r : p.resets) {
        auto x = a_.find_clock(r);
        if (!x) throw ParseError("unknown clock '" + r + "'", p.at.line, p.at.column);
        t.resets.push_back(*x);
      }
      a_.transitions.push_back(std::move(t));
    }
    for (const auto& [name, tok] : props_)
      if (!a_.has_proposition(name)) throw ParseError("unknown mode or label '" + name + "'", tok.line, tok.column);
    a_.validate();
    return std::move(a_);
  }

 private:
  ClockAtom clock_atom() {
    const Token t = ts_.peek();
    ClockIndex x = 0;
    if (t.kind == Token::Kind::Int && t.text == "0") {
      ts_.next();
    } else {
      auto name = ts_.ident();
      auto idx = a_.find_clock(name);
      if (!idx) throw ParseError("unknown clock '" + name + "'", t.line, t.column);
      x = *idx;
    }
    auto op = compare_op(ts_.peek());
    if (!op) ts_.fail("expected comparison operator");
    ts_.next();
    return ClockAtom{x, *op, ts_.integer()};
  }

  Conjunction conjunction() {
    Conjunction c;
    if (ts_.accept("true")) return c;
    c.push_back(clock_atom());
    while (ts_.accept("and") || ts_.accept("&&")) c.push_back(clock_atom());
    return c;
  }

  StatePredicate predicate() {
    auto lhs = conj_pred();
    while (ts_.accept("or") || ts_.accept("||")) lhs = StatePredicate::disj(std::move(lhs), conj_pred());
    return lhs;
  }
  StatePredicate conj_pred() {
    auto lhs = unary_pred();
    while (ts_.accept("and") || ts_.accept("&&")) lhs = StatePredicate::conj(std::move(lhs), unary_pred());
    return lhs;
  }
  StatePredicate unary_pred() {
    if (ts_.accept("not") || ts_.accept("!")) return StatePredicate::negation(unary_pred());
    if (ts_.accept("(")) {
      auto p = predicate();
      ts_.expect(")");
      return p;
    }
    if (ts_.accept("true")) return StatePredicate::truth();
    if (ts_.accept("false")) return StatePredicate::negation(StatePredicate::truth());
    const Token t = ts_.peek();
    if (t.kind == Token::Kind::Int || compare_op(ts_.peek(1))) return StatePredicate::clock(clock_atom());
    auto name = ts_.ident();
    props_.emplace_back(name, t);
    return StatePredicate::proposition(std::move(name));
  }

  TokenStream ts_;
  TimedAutomaton a_;
  std::vector<std::pair<std::string, Token>> props_;
};

std::string clock_name(const TimedAutomaton& a, ClockIndex x) { return x == 0 ? "0" : a.clocks.at(x - 1); }

std::string print_conjunction(const Conjunction& c, const TimedAutomaton& a) {
  if (c.empty()) return "true";
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += " and ";
    out += clock_name(a, c[i].clock) + " " + std::string(to_string(c[i].op)) + " " + std::to_string(c[i].constant);
  }
  return out;
}

}  // namespace

TimedAutomaton parse_model(std::string_view text) { return ModelParser(text).run(); }

TimedAutomaton load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

std::string print_predicate(const StatePredicate& p, const TimedAutomaton& a) {
  using K = StatePredicate::Kind;
  switch (p.kind) {
    case K::True: return "true";
    case K::Prop: return p.prop;
    case K::Clock:
      return clock_name(a, p.atom.clock) + " " + std::string(to_string(p.atom.op)) + " " +
             std::to_string(p.atom.constant);
    case K::And: return "(" + print_predicate(p.children[0], a) + " and " + print_predicate(p.children[1], a) + ")";
    case K::Or: return "(" + print_predicate(p.children[0], a) + " or " + print_predicate(p.children[1], a) + ")";
    case K::Not: return "not " + print_predicate(p.children[0], a);
  }
  return "true";
}

std::string print_model(const TimedAutomaton& a) {
  std::ostringstream os;
  os << "clocks";
  for (const auto& c : a.clocks) os << " " << c;
  os << ";\n";
  for (const auto& m : a.modes) {
    os << "mode " << m.name << " { inv: " << print_conjunction(m.invariant, a) << ";";
    if (!m.labels.empty()) {
      os << " labels:";
      for (const auto& l : m.labels) os << " " << l;
      os << ";";
    }
    os << " }\n";
  }
  for (const auto& t : a.transitions) {
    os << "trans " << a.modes[t.source].name << " -> " << a.modes[t.target].name << " { guard: "
       << print_conjunction(t.guard, a) << ";";
    if (!t.resets.empty()) {
      os << " reset:";
      for (auto x : t.resets) os << " " << clock_name(a, x);
      os << ";";
    }
    os << " }\n";
  }
  os << "init " << print_predicate(a.initial, a) << ";\n";
  return os.str();
}

}  // namespace nzf

#include "nzf/formula.hpp"

#include <algorithm>

#include "lexer.hpp"
#include "nzf/model_io.hpp"

namespace nzf {

namespace f {
namespace {
FormulaPtr node(FormulaKind k, FormulaPtr a = nullptr, FormulaPtr b = nullptr) {
  auto n = std::make_shared<Formula>();
  n->kind = k;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}
}  // namespace

FormulaPtr atom(StatePredicate p) {
  auto n = std::make_shared<Formula>();
  n->kind = FormulaKind::Atom;
  n->atom = std::move(p);
  return n;
}
FormulaPtr prop(std::string name) { return atom(StatePredicate::proposition(std::move(name))); }
FormulaPtr clock(ClockIndex x, CompareOp op, std::int32_t c) { return atom(StatePredicate::clock({x, op, c})); }
FormulaPtr truth() { return node(FormulaKind::True); }
FormulaPtr falsity() { return node(FormulaKind::False); }
FormulaPtr lor(FormulaPtr a, FormulaPtr b) { return node(FormulaKind::Or, std::move(a), std::move(b)); }
FormulaPtr land(FormulaPtr a, FormulaPtr b) { return node(FormulaKind::And, std::move(a), std::move(b)); }
FormulaPtr implies(FormulaPtr a, FormulaPtr b) { return node(FormulaKind::Implies, std::move(a), std::move(b)); }
FormulaPtr lnot(FormulaPtr a) { return node(FormulaKind::Not, std::move(a)); }
FormulaPtr freeze(ClockIndex x, FormulaPtr body) {
  auto n = std::make_shared<Formula>();
  n->kind = FormulaKind::Freeze;
  n->freeze_clock = x;
  n->lhs = std::move(body);
  return n;
}
FormulaPtr eu(FormulaPtr a, FormulaPtr b) { return node(FormulaKind::ExistsUntil, std::move(a), std::move(b)); }
FormulaPtr au(FormulaPtr a, FormulaPtr b) { return node(FormulaKind::ForallUntil, std::move(a), std::move(b)); }
FormulaPtr eg(FormulaPtr a) { return node(FormulaKind::ExistsAlways, std::move(a)); }
FormulaPtr ef(FormulaPtr a) { return node(FormulaKind::ExistsEventually, std::move(a)); }
FormulaPtr egf(FormulaPtr a) { return node(FormulaKind::ExistsAlwaysEventually, std::move(a)); }
FormulaPtr efg(FormulaPtr a) { return node(FormulaKind::ExistsEventuallyAlways, std::move(a)); }
FormulaPtr ag(FormulaPtr a) { return node(FormulaKind::ForallAlways, std::move(a)); }
FormulaPtr af(FormulaPtr a) { return node(FormulaKind::ForallEventually, std::move(a)); }
FormulaPtr agf(FormulaPtr a) { return node(FormulaKind::ForallAlwaysEventually, std::move(a)); }
FormulaPtr afg(FormulaPtr a) { return node(FormulaKind::ForallEventuallyAlways, std::move(a)); }
}  // namespace f

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

class FormulaParser {
 public:
  FormulaParser(std::string_view text, TimedAutomaton& a)
      : ts_(detail::tokenize(text)), a_(a), own_clocks_(a.clocks.size()) {}

  FormulaPtr run() {
    auto f = implies();
    if (!ts_.at_end()) ts_.fail("unexpected trailing input");
    return f;
  }

 private:
  FormulaPtr implies() {
    auto lhs = disjunction();
    if (ts_.accept("->")) return f::implies(std::move(lhs), implies());
    return lhs;
  }
  FormulaPtr disjunction() {
    auto lhs = conjunction();
    while (ts_.accept("or") || ts_.accept("||")) lhs = f::lor(std::move(lhs), conjunction());
    return lhs;
  }
  FormulaPtr conjunction() {
    auto lhs = unary();
    while (ts_.accept("and") || ts_.accept("&&")) lhs = f::land(std::move(lhs), unary());
    return lhs;
  }

  std::pair<FormulaPtr, FormulaPtr> until_body() {
    if (ts_.accept("(")) {
      auto a = implies();
      if (ts_.accept("U")) {
        auto b = implies();
        ts_.expect(")");
        return {a, b};
      }
      ts_.expect(")");
      ts_.expect("U");
      return {a, unary()};
    }
    auto a = unary();
    ts_.expect("U");
    return {a, unary()};
  }

  std::pair<FormulaPtr, FormulaPtr> call_args() {
    ts_.expect("(");
    auto a = implies();
    ts_.expect(",");
    auto b = implies();
    ts_.expect(")");
    return {a, b};
  }

  FormulaPtr unary() {
    if (ts_.accept("not") || ts_.accept("!")) return f::lnot(unary());
    if (ts_.accept("EG")) return f::eg(unary());
    if (ts_.accept("EF")) return f::ef(unary());
    if (ts_.accept("EGF")) return f::egf(unary());
    if (ts_.accept("EFG")) return f::efg(unary());
    if (ts_.accept("AG")) return f::ag(unary());
    if (ts_.accept("AF")) return f::af(unary());
    if (ts_.accept("AGF")) return f::agf(unary());
    if (ts_.accept("AFG")) return f::afg(unary());
    if (ts_.accept("EU")) {
      auto [a, b] = call_args();
      return f::eu(a, b);
    }
    if (ts_.accept("AU")) {
      auto [a, b] = call_args();
      return f::au(a, b);
    }
    if (ts_.accept("E")) {
      auto [a, b] = until_body();
      return f::eu(a, b);
    }
    if (ts_.accept("A")) {
      auto [a, b] = until_body();
      return f::au(a, b);
    }
    if (ts_.accept("freeze")) {
      const Token at = ts_.peek();
      auto name = ts_.ident();
      ClockIndex x;
      if (auto existing = a_.find_clock(name)) {
        if (*existing <= own_clocks_)
          throw ParseError("freeze clock '" + name + "' clashes with an automaton clock", at.line, at.column);
        x = *existing;
      } else {
        x = a_.add_clock(name);
      }
      ts_.expect(":");
      return f::freeze(x, implies());
    }
    return primary();
  }

  FormulaPtr primary() {
    if (ts_.accept("(")) {
      auto inner = implies();
      ts_.expect(")");
      return inner;
    }
    if (ts_.accept("true")) return f::truth();
    if (ts_.accept("false")) return f::falsity();
    const Token t = ts_.peek();
    if (t.kind == Token::Kind::Int || compare_op(ts_.peek(1))) {
      ClockIndex x = 0;
      if (t.kind == Token::Kind::Int) {
        if (t.text != "0") ts_.fail("expected clock name or 0");
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
      return f::clock(x, *op, ts_.integer());
    }
    auto name = ts_.ident();
    if (!a_.has_proposition(name)) throw ParseError("unknown mode or label '" + name + "'", t.line, t.column);
    return f::prop(std::move(name));
  }

  TokenStream ts_;
  TimedAutomaton& a_;
  std::size_t own_clocks_;
};

std::string clock_name(const TimedAutomaton& a, ClockIndex x) { return x == 0 ? "0" : a.clocks.at(x - 1); }

}  // namespace

FormulaPtr parse_formula_raw(std::string_view text, TimedAutomaton& a) { return FormulaParser(text, a).run(); }

FormulaPtr parse_formula(std::string_view text, TimedAutomaton& a) {
  return expand_shorthands(parse_formula_raw(text, a));
}

FormulaPtr expand_shorthands(const FormulaPtr& g) {
  using K = FormulaKind;
  auto ex = [](const FormulaPtr& p) { return expand_shorthands(p); };
  auto core_true = [] { return f::clock(0, CompareOp::Eq, 0); };
  switch (g->kind) {
    case K::Atom: return g;
    case K::Or: return f::lor(ex(g->lhs), ex(g->rhs));
    case K::Not: return f::lnot(ex(g->lhs));
    case K::Freeze: return f::freeze(g->freeze_clock, ex(g->lhs));
    case K::ExistsUntil: return f::eu(ex(g->lhs), ex(g->rhs));
    case K::ExistsAlways: return f::eg(ex(g->lhs));
    case K::ExistsAlwaysEventually: return f::egf(ex(g->lhs));
    case K::ExistsEventuallyAlways: return f::efg(ex(g->lhs));
    case K::True: return core_true();
    case K::False: return f::lnot(core_true());
    case K::And: return f::lnot(f::lor(f::lnot(ex(g->lhs)), f::lnot(ex(g->rhs))));
    case K::Implies: return f::lor(f::lnot(ex(g->lhs)), ex(g->rhs));
    case K::ExistsEventually: return f::eu(core_true(), ex(g->lhs));
    case K::ForallUntil: {
      auto a = ex(g->lhs);
      auto b = ex(g->rhs);
      return f::lnot(f::lor(f::eu(f::lnot(b), f::lnot(f::lor(a, b))), f::eg(f::lnot(b))));
    }
    case K::ForallAlways: return f::lnot(f::eu(core_true(), f::lnot(ex(g->lhs))));
    case K::ForallEventually: return expand_shorthands(f::au(f::truth(), g->lhs));
    case K::ForallAlwaysEventually: return f::lnot(f::efg(f::lnot(ex(g->lhs))));
    case K::ForallEventuallyAlways: return f::lnot(f::egf(f::lnot(ex(g->lhs))));
  }
  return g;
}

bool is_core(const Formula& g) {
  switch (g.kind) {
    case FormulaKind::Atom: return true;
    case FormulaKind::Or:
    case FormulaKind::ExistsUntil: return is_core(*g.lhs) && is_core(*g.rhs);
    case FormulaKind::Not:
    case FormulaKind::Freeze:
    case FormulaKind::ExistsAlways:
    case FormulaKind::ExistsAlwaysEventually:
    case FormulaKind::ExistsEventuallyAlways: return is_core(*g.lhs);
    default: return false;
  }
}

bool same_formula(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == FormulaKind::Atom) return a.atom == b.atom;
  if (a.kind == FormulaKind::Freeze && a.freeze_clock != b.freeze_clock) return false;
  if (bool(a.lhs) != bool(b.lhs) || bool(a.rhs) != bool(b.rhs)) return false;
  if (a.lhs && !same_formula(*a.lhs, *b.lhs)) return false;
  if (a.rhs && !same_formula(*a.rhs, *b.rhs)) return false;
  return true;
}

std::string print_formula(const Formula& g, const TimedAutomaton& a) {
  using K = FormulaKind;
  auto p = [&](const FormulaPtr& x) { return print_formula(*x, a); };
  switch (g.kind) {
    case K::Atom: return print_predicate(g.atom, a);
    case K::True: return "true";
    case K::False: return "false";
    case K::Or: return "(" + p(g.lhs) + " or " + p(g.rhs) + ")";
    case K::And: return "(" + p(g.lhs) + " and " + p(g.rhs) + ")";
    case K::Implies: return "(" + p(g.lhs) + " -> " + p(g.rhs) + ")";
    case K::Not: return "not " + p(g.lhs);
    case K::Freeze: return "(freeze " + clock_name(a, g.freeze_clock) + ": " + p(g.lhs) + ")";
    case K::ExistsUntil: return "E (" + p(g.lhs) + " U " + p(g.rhs) + ")";
    case K::ForallUntil: return "A (" + p(g.lhs) + " U " + p(g.rhs) + ")";
    case K::ExistsAlways: return "EG " + p(g.lhs);
    case K::ExistsAlwaysEventually: return "EGF " + p(g.lhs);
    case K::ExistsEventuallyAlways: return "EFG " + p(g.lhs);
    case K::ExistsEventually: return "EF " + p(g.lhs);
    case K::ForallAlways: return "AG " + p(g.lhs);
    case K::ForallEventually: return "AF " + p(g.lhs);
    case K::ForallAlwaysEventually: return "AGF " + p(g.lhs);
    case K::ForallEventuallyAlways: return "AFG " + p(g.lhs);
  }
  return "?";
}

std::int32_t max_constant(const Formula& g) {
  std::int32_t c = 0;
  if (g.kind == FormulaKind::Atom) c = max_constant(g.atom);
  if (g.lhs) c = std::max(c, max_constant(*g.lhs));
  if (g.rhs) c = std::max(c, max_constant(*g.rhs));
  return c;
}

}  // namespace nzf

#include "rdf/parser.hpp"

namespace rdf {

namespace {

int precedence(BinOp op) { return op == BinOp::Add || op == BinOp::Sub ? 1 : 2; }

const char* spelling(BinOp op) {
  switch (op) {
    case BinOp::Add: return " + ";
    case BinOp::Sub: return " - ";
    case BinOp::Mul: return " * ";
    case BinOp::Div: return " / ";
  }
  return "?";
}

// Operator precedence of a term's top node; leaves bind tightest.
int term_precedence(const TermPtr& t) {
  if (const auto* b = std::get_if<Term::Binary>(&t->node)) return precedence(b->op);
  return 3;
}

std::string term_text(const TermPtr& t) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term::Var>) {
          return n.name;
        } else if constexpr (std::is_same_v<T, Term::Const>) {
          return to_string(n.value);
        } else if constexpr (std::is_same_v<T, Term::Binary>) {
          int p = precedence(n.op);
          std::string lhs = term_text(n.lhs);
          std::string rhs = term_text(n.rhs);
          if (term_precedence(n.lhs) < p) lhs = "(" + lhs + ")";
          if (term_precedence(n.rhs) <= p) rhs = "(" + rhs + ")";
          return lhs + spelling(n.op) + rhs;
        } else if constexpr (std::is_same_v<T, Term::Apply>) {
          return n.f.name + "(" + term_text(n.arg) + ")";
        } else {
          return "D[" + n.f.name + "](" + term_text(n.arg) + ")";
        }
      },
      t->node);
}

std::string interval_text(const Endpoint& lo, const Endpoint& hi) {
  return "[" + print(lo) + ", " + print(hi) + "]";
}

enum Prec { kOr = 1, kAnd = 2, kUnary = 3 };

int formula_precedence(const FormulaPtr& f) {
  if (std::holds_alternative<Formula::Or>(f->node)) return kOr;
  if (std::holds_alternative<Formula::And>(f->node)) return kAnd;
  return kUnary;
}

std::string formula_text(const FormulaPtr& f);

std::string wrap_if(bool cond, std::string s) { return cond ? "(" + s + ")" : s; }

std::string formula_text(const FormulaPtr& f) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Formula::AtomNode>) {
          return print(n.atom);
        } else if constexpr (std::is_same_v<T, Formula::Not>) {
          const auto* a = std::get_if<Formula::AtomNode>(&n.sub->node);
          bool bare = std::holds_alternative<Formula::Not>(n.sub->node) ||
                      (a && !std::holds_alternative<NumAtom>(a->atom));
          return "!" + wrap_if(!bare, formula_text(n.sub));
        } else {
          int p = std::is_same_v<T, Formula::And> ? kAnd : kOr;
          std::string lhs = wrap_if(formula_precedence(n.lhs) < p, formula_text(n.lhs));
          std::string rhs = wrap_if(formula_precedence(n.rhs) <= p, formula_text(n.rhs));
          return lhs + (p == kAnd ? " & " : " | ") + rhs;
        }
      },
      f->node);
}

}  // namespace

std::string print(const TermPtr& term) { return term_text(term); }

std::string print(const Endpoint& e) {
  switch (e.kind) {
    case Endpoint::Kind::NegInf: return "-inf";
    case Endpoint::Kind::PosInf: return "+inf";
    case Endpoint::Kind::Finite: break;
  }
  return term_text(e.term);
}

std::string print(const Atom& a) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, NumAtom>) {
          return term_text(x.lhs) + (x.rel == NumRel::Eq ? " = " : " > ") + term_text(x.rhs);
        } else if constexpr (std::is_same_v<T, FunEqAtom>) {
          return "(" + x.f.name + " = " + x.g.name + ")" + interval_text(x.lo, x.hi);
        } else if constexpr (std::is_same_v<T, FunGtAtom>) {
          return "(" + x.f.name + " > " + x.g.name + ")" + interval_text(x.lo, x.hi);
        } else if constexpr (std::is_same_v<T, DerAtom>) {
          return "(D[" + x.f.name + "] " + to_string(x.rel) + " " + term_text(x.bound) + ")" +
                 interval_text(x.lo, x.hi);
        } else {
          return std::string(to_string(x.kind)) + "(" + x.f.name + ")" + interval_text(x.lo, x.hi);
        }
      },
      a);
}

std::string print(const FormulaPtr& formula) { return formula_text(formula); }

}  // namespace rdf

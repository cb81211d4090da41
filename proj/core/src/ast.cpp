#include "rdf/ast.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace rdf {

TermPtr var(std::string name, SourceSpan span) {
  return std::make_shared<const Term>(Term{Term::Var{std::move(name)}, span});
}
TermPtr constant(Rational value, SourceSpan span) {
  value.canonicalize();
  return std::make_shared<const Term>(Term{Term::Const{std::move(value)}, span});
}
TermPtr binary(BinOp op, TermPtr lhs, TermPtr rhs, SourceSpan span) {
  return std::make_shared<const Term>(Term{Term::Binary{op, std::move(lhs), std::move(rhs)}, span});
}
TermPtr apply(FuncVar f, TermPtr arg, SourceSpan span) {
  return std::make_shared<const Term>(Term{Term::Apply{std::move(f), std::move(arg)}, span});
}
TermPtr deriv(FuncVar f, TermPtr arg, SourceSpan span) {
  return std::make_shared<const Term>(Term{Term::Deriv{std::move(f), std::move(arg)}, span});
}

FormulaPtr atom(Atom a, SourceSpan span) {
  return std::make_shared<const Formula>(Formula{Formula::AtomNode{std::move(a)}, span});
}
FormulaPtr negation(FormulaPtr f, SourceSpan span) {
  return std::make_shared<const Formula>(Formula{Formula::Not{std::move(f)}, span});
}
FormulaPtr conj(FormulaPtr lhs, FormulaPtr rhs, SourceSpan span) {
  return std::make_shared<const Formula>(Formula{Formula::And{std::move(lhs), std::move(rhs)}, span});
}
FormulaPtr disj(FormulaPtr lhs, FormulaPtr rhs, SourceSpan span) {
  return std::make_shared<const Formula>(Formula{Formula::Or{std::move(lhs), std::move(rhs)}, span});
}
FormulaPtr conj_all(const std::vector<FormulaPtr>& parts) {
  if (parts.empty()) throw Error("conj_all: empty conjunction");
  FormulaPtr out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = conj(out, parts[i]);
  return out;
}

const char* to_string(DerRel rel) {
  switch (rel) {
    case DerRel::Eq: return "=";
    case DerRel::Gt: return ">";
    case DerRel::Ge: return ">=";
    case DerRel::Lt: return "<";
    case DerRel::Le: return "<=";
  }
  return "?";
}

const char* to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Up: return "Up";
    case ShapeKind::StrictUp: return "StrictUp";
    case ShapeKind::Down: return "Down";
    case ShapeKind::StrictDown: return "StrictDown";
    case ShapeKind::Convex: return "Convex";
    case ShapeKind::StrictConvex: return "StrictConvex";
    case ShapeKind::Concave: return "Concave";
    case ShapeKind::StrictConcave: return "StrictConcave";
  }
  return "?";
}

DerRel complement(DerRel rel) {
  switch (rel) {
    case DerRel::Gt: return DerRel::Le;
    case DerRel::Ge: return DerRel::Lt;
    case DerRel::Lt: return DerRel::Ge;
    case DerRel::Le: return DerRel::Gt;
    case DerRel::Eq: break;
  }
  throw Error("complement: '=' has no single-relation complement");
}

// ---------------------------------------------------------------------------
// Structural equality
// ---------------------------------------------------------------------------

bool equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, Term::Var>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, Term::Const>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, Term::Binary>) {
          return x.op == y.op && equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
        } else {
          return x.f == y.f && equal(x.arg, y.arg);
        }
      },
      a->node);
}

bool equal(const Endpoint& a, const Endpoint& b) {
  return a.kind == b.kind && (a.kind != Endpoint::Kind::Finite || equal(a.term, b.term));
}

bool equal(const Atom& a, const Atom& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b);
        if constexpr (std::is_same_v<T, NumAtom>) {
          return x.rel == y.rel && equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
        } else if constexpr (std::is_same_v<T, FunEqAtom> || std::is_same_v<T, FunGtAtom>) {
          return x.f == y.f && x.g == y.g && equal(x.lo, y.lo) && equal(x.hi, y.hi);
        } else if constexpr (std::is_same_v<T, DerAtom>) {
          return x.f == y.f && x.rel == y.rel && equal(x.bound, y.bound) && equal(x.lo, y.lo) &&
                 equal(x.hi, y.hi);
        } else {
          return x.kind == y.kind && x.f == y.f && equal(x.lo, y.lo) && equal(x.hi, y.hi);
        }
      },
      a);
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, Formula::AtomNode>) {
          return equal(x.atom, y.atom);
        } else if constexpr (std::is_same_v<T, Formula::Not>) {
          return equal(x.sub, y.sub);
        } else {
          return equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
        }
      },
      a->node);
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

class Validator {
 public:
  std::vector<Violation> out;

  void formula(const FormulaPtr& f, const std::string& path) {
    if (!f) {
      report(ViolationKind::MalformedArity, path, "missing subformula", {});
      return;
    }
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Formula::AtomNode>) {
            atom(n.atom, path + "/atom", f->span);
          } else if constexpr (std::is_same_v<T, Formula::Not>) {
            formula(n.sub, path + "/not");
          } else if constexpr (std::is_same_v<T, Formula::And>) {
            formula(n.lhs, path + "/and.0");
            formula(n.rhs, path + "/and.1");
          } else {
            formula(n.lhs, path + "/or.0");
            formula(n.rhs, path + "/or.1");
          }
        },
        f->node);
  }

 private:
  void report(ViolationKind kind, const std::string& path, std::string message, SourceSpan span) {
    out.push_back({kind, path, std::move(message), span});
  }

  void term(const TermPtr& t, const std::string& path, SourceSpan span) {
    if (!t) {
      report(ViolationKind::MalformedArity, path, "missing numerical term", span);
      return;
    }
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Term::Var>) {
            if (n.name.empty()) report(ViolationKind::MalformedArity, path, "empty variable name", t->span);
          } else if constexpr (std::is_same_v<T, Term::Const>) {
          } else if constexpr (std::is_same_v<T, Term::Binary>) {
            term(n.lhs, path, t->span);
            term(n.rhs, path, t->span);
          } else {
            func(n.f, path, t->span);
            term(n.arg, path, t->span);
          }
        },
        t->node);
  }

  void func(const FuncVar& f, const std::string& path, SourceSpan span) {
    if (f.name.empty()) report(ViolationKind::MalformedArity, path, "empty function name", span);
  }

  void endpoint(const Endpoint& e, const std::string& path, SourceSpan span) {
    if (e.kind == Endpoint::Kind::Finite) term(e.term, path, span);
  }

  void bounds(const Endpoint& lo, const Endpoint& hi, const std::string& path, SourceSpan span) {
    if (lo.kind == Endpoint::Kind::PosInf)
      report(ViolationKind::IllegalEndpoint, path, "left bound is +inf", span);
    if (hi.kind == Endpoint::Kind::NegInf)
      report(ViolationKind::IllegalEndpoint, path, "right bound is -inf", span);
    endpoint(lo, path, span);
    endpoint(hi, path, span);
  }

  void atom(const Atom& a, const std::string& path, SourceSpan span) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, NumAtom>) {
            term(x.lhs, path, span);
            term(x.rhs, path, span);
          } else if constexpr (std::is_same_v<T, FunEqAtom>) {
            func(x.f, path, span);
            func(x.g, path, span);
            bounds(x.lo, x.hi, path, span);
          } else if constexpr (std::is_same_v<T, FunGtAtom>) {
            func(x.f, path, span);
            func(x.g, path, span);
            if (!x.lo.is_finite() || !x.hi.is_finite())
              report(ViolationKind::UnboundedStrictComparison, path,
                     "function comparison needs numerical bounds", span);
            endpoint(x.lo, path, span);
            endpoint(x.hi, path, span);
          } else if constexpr (std::is_same_v<T, DerAtom>) {
            func(x.f, path, span);
            term(x.bound, path, span);
            bounds(x.lo, x.hi, path, span);
          } else {
            func(x.f, path, span);
            bounds(x.lo, x.hi, path, span);
          }
        },
        a);
  }
};

// Generic depth-first walker over terms, in textual order.
struct Walker {
  std::function<void(const TermPtr&)> on_term;
  std::function<void(const FuncVar&)> on_func;
  std::function<void(const Endpoint&)> on_endpoint;

  void term(const TermPtr& t) const {
    if (!t) return;
    if (on_term) on_term(t);
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Term::Binary>) {
            term(n.lhs);
            term(n.rhs);
          } else if constexpr (std::is_same_v<T, Term::Apply> || std::is_same_v<T, Term::Deriv>) {
            if (on_func) on_func(n.f);
            term(n.arg);
          }
        },
        t->node);
  }

  void endpoint(const Endpoint& e) const {
    if (on_endpoint) on_endpoint(e);
    if (e.is_finite()) term(e.term);
  }

  void atom(const Atom& a) const {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, NumAtom>) {
            term(x.lhs);
            term(x.rhs);
          } else if constexpr (std::is_same_v<T, DerAtom>) {
            if (on_func) on_func(x.f);
            term(x.bound);
            endpoint(x.lo);
            endpoint(x.hi);
          } else if constexpr (std::is_same_v<T, ShapeAtom>) {
            if (on_func) on_func(x.f);
            endpoint(x.lo);
            endpoint(x.hi);
          } else {
            if (on_func) {
              on_func(x.f);
              on_func(x.g);
            }
            endpoint(x.lo);
            endpoint(x.hi);
          }
        },
        a);
  }

  void formula(const FormulaPtr& f) const {
    if (!f) return;
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Formula::AtomNode>) {
            atom(n.atom);
          } else if constexpr (std::is_same_v<T, Formula::Not>) {
            formula(n.sub);
          } else {
            formula(n.lhs);
            formula(n.rhs);
          }
        },
        f->node);
  }
};

void push_unique(std::vector<std::string>& out, std::set<std::string>& seen, const std::string& name) {
  if (seen.insert(name).second) out.push_back(name);
}

}  // namespace

std::vector<Violation> collect_violations(const FormulaPtr& formula) {
  Validator v;
  v.formula(formula, "root");
  return std::move(v.out);
}

FormulaPtr validate(const FormulaPtr& formula) {
  auto violations = collect_violations(formula);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return formula;
}

std::vector<std::string> domain_vars(const FormulaPtr& formula, DomainVarOptions options) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  Walker w;
  w.on_term = [&](const TermPtr& t) {
    if (const auto* a = std::get_if<Term::Apply>(&t->node)) {
      if (a->arg && a->arg->is_var()) push_unique(out, seen, a->arg->var_name());
    } else if (const auto* d = std::get_if<Term::Deriv>(&t->node)) {
      if (d->arg && d->arg->is_var()) push_unique(out, seen, d->arg->var_name());
    }
  };
  w.on_endpoint = [&](const Endpoint& e) {
    if (!e.is_finite()) return;
    if (e.term->is_var()) {
      push_unique(out, seen, e.term->var_name());
    } else if (options.assert_snf) {
      throw ValidationError({Violation{ViolationKind::NonVariableEndpointAfterSNF, "endpoint",
                                       "compound interval endpoint in standard normal form",
                                       e.term->span}});
    }
  };
  w.formula(formula);
  return out;
}

std::vector<std::string> numeric_vars(const FormulaPtr& formula) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  Walker w;
  w.on_term = [&](const TermPtr& t) {
    if (t->is_var()) push_unique(out, seen, t->var_name());
  };
  w.formula(formula);
  return out;
}

std::vector<std::string> function_vars(const FormulaPtr& formula) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  Walker w;
  w.on_func = [&](const FuncVar& f) { push_unique(out, seen, f.name); };
  w.formula(formula);
  return out;
}

// ---------------------------------------------------------------------------
// Functional constants
// ---------------------------------------------------------------------------

namespace {

FuncVar rename_func(const FuncVar& f) {
  if (f.name == kZeroFunction) return {"$zero"};
  if (f.name == kOneFunction) return {"$one"};
  return f;
}

TermPtr rename_term(const TermPtr& t) {
  if (!t) return t;
  return std::visit(
      [&](const auto& n) -> TermPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term::Binary>) {
          return binary(n.op, rename_term(n.lhs), rename_term(n.rhs), t->span);
        } else if constexpr (std::is_same_v<T, Term::Apply>) {
          return apply(rename_func(n.f), rename_term(n.arg), t->span);
        } else if constexpr (std::is_same_v<T, Term::Deriv>) {
          return deriv(rename_func(n.f), rename_term(n.arg), t->span);
        } else {
          return t;
        }
      },
      t->node);
}

Endpoint rename_endpoint(const Endpoint& e) {
  return e.is_finite() ? Endpoint::finite(rename_term(e.term)) : e;
}

FormulaPtr rename_formula(const FormulaPtr& f) {
  return std::visit(
      [&](const auto& n) -> FormulaPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Formula::AtomNode>) {
          Atom a = std::visit(
              [](const auto& x) -> Atom {
                using A = std::decay_t<decltype(x)>;
                A y = x;
                if constexpr (std::is_same_v<A, NumAtom>) {
                  y.lhs = rename_term(x.lhs);
                  y.rhs = rename_term(x.rhs);
                } else {
                  y.f = rename_func(x.f);
                  if constexpr (std::is_same_v<A, FunEqAtom> || std::is_same_v<A, FunGtAtom>) {
                    y.g = rename_func(x.g);
                  }
                  if constexpr (std::is_same_v<A, DerAtom>) y.bound = rename_term(x.bound);
                  y.lo = rename_endpoint(x.lo);
                  y.hi = rename_endpoint(x.hi);
                }
                return y;
              },
              n.atom);
          return atom(std::move(a), f->span);
        } else if constexpr (std::is_same_v<T, Formula::Not>) {
          return negation(rename_formula(n.sub), f->span);
        } else if constexpr (std::is_same_v<T, Formula::And>) {
          return conj(rename_formula(n.lhs), rename_formula(n.rhs), f->span);
        } else {
          return disj(rename_formula(n.lhs), rename_formula(n.rhs), f->span);
        }
      },
      f->node);
}

FormulaPtr pin_constant(const std::string& fname, const std::string& anchor, int value) {
  FuncVar f{fname};
  auto flat = atom(DerAtom{f, DerRel::Eq, constant(0), Endpoint::neg_inf(), Endpoint::pos_inf()});
  auto at = atom(NumAtom{NumRel::Eq, apply(f, var(anchor)), constant(value)});
  return conj(flat, at);
}

}  // namespace

FormulaPtr desugar_function_constants(const FormulaPtr& formula) {
  auto funcs = function_vars(formula);
  bool zero = std::find(funcs.begin(), funcs.end(), kZeroFunction) != funcs.end();
  bool one = std::find(funcs.begin(), funcs.end(), kOneFunction) != funcs.end();
  if (!zero && !one) return formula;
  FormulaPtr out = rename_formula(formula);
  if (zero) out = conj(out, pin_constant("$zero", "$anchor.zero", 0));
  if (one) out = conj(out, pin_constant("$one", "$anchor.one", 1));
  return out;
}

}  // namespace rdf

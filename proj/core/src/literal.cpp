#include "rdf/literal.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "rdf/parser.hpp"

namespace rdf {

Literal Literal::sum(std::string x, std::string y, std::string w) {
  Literal l;
  l.kind = LitKind::Sum;
  l.x = std::move(x);
  l.y = std::move(y);
  l.w = std::move(w);
  return l;
}
Literal Literal::prod(std::string x, std::string y, std::string w) {
  Literal l = sum(std::move(x), std::move(y), std::move(w));
  l.kind = LitKind::Prod;
  return l;
}
Literal Literal::pos(std::string x) {
  Literal l;
  l.kind = LitKind::Pos;
  l.x = std::move(x);
  return l;
}
Literal Literal::constant(std::string x, Rational c) {
  Literal l;
  l.kind = LitKind::Const;
  l.x = std::move(x);
  c.canonicalize();
  l.c = std::move(c);
  return l;
}
Literal Literal::eq(std::string x, std::string y) {
  Literal l;
  l.kind = LitKind::Eq;
  l.x = std::move(x);
  l.y = std::move(y);
  return l;
}
Literal Literal::neq(std::string x, std::string y) {
  Literal l = eq(std::move(x), std::move(y));
  l.kind = LitKind::Neq;
  return l;
}
Literal Literal::app(std::string x, std::string f, std::string arg) {
  Literal l;
  l.kind = LitKind::App;
  l.x = std::move(x);
  l.f = std::move(f);
  l.y = std::move(arg);
  return l;
}
Literal Literal::dapp(std::string x, std::string f, std::string arg) {
  Literal l = app(std::move(x), std::move(f), std::move(arg));
  l.kind = LitKind::DApp;
  return l;
}
Literal Literal::fun_eq(std::string f, std::string g, Bound lo, Bound hi, bool negated) {
  Literal l;
  l.kind = LitKind::FunEq;
  l.f = std::move(f);
  l.g = std::move(g);
  l.lo = std::move(lo);
  l.hi = std::move(hi);
  l.negated = negated;
  return l;
}
Literal Literal::fun_gt(std::string f, std::string g, Bound lo, Bound hi, bool negated) {
  Literal l = fun_eq(std::move(f), std::move(g), std::move(lo), std::move(hi), negated);
  l.kind = LitKind::FunGt;
  return l;
}
Literal Literal::der(std::string f, DerRel rel, std::string bound, Bound lo, Bound hi, bool negated) {
  Literal l;
  l.kind = LitKind::DerRel;
  l.f = std::move(f);
  l.rel = rel;
  l.y = std::move(bound);
  l.lo = std::move(lo);
  l.hi = std::move(hi);
  l.negated = negated;
  return l;
}
Literal Literal::shape_of(ShapeKind kind, std::string f, Bound lo, Bound hi, bool negated) {
  Literal l;
  l.kind = LitKind::Shape;
  l.shape = kind;
  l.f = std::move(f);
  l.lo = std::move(lo);
  l.hi = std::move(hi);
  l.negated = negated;
  return l;
}

namespace {
auto key(const Literal& l) {
  return std::tie(l.kind, l.negated, l.x, l.y, l.w, l.f, l.g, l.rel, l.shape, l.lo, l.hi);
}
}  // namespace

bool operator==(const Literal& a, const Literal& b) { return key(a) == key(b) && a.c == b.c; }

bool operator<(const Literal& a, const Literal& b) {
  if (key(a) != key(b)) return key(a) < key(b);
  return a.c < b.c;
}

namespace {

Endpoint endpoint_of(const Bound& b) {
  switch (b.kind) {
    case Endpoint::Kind::NegInf: return Endpoint::neg_inf();
    case Endpoint::Kind::PosInf: return Endpoint::pos_inf();
    case Endpoint::Kind::Finite: break;
  }
  return Endpoint::finite(var(b.var));
}

}  // namespace

FormulaPtr to_formula(const Literal& l) {
  FormulaPtr f;
  switch (l.kind) {
    case LitKind::Sum:
      f = atom(NumAtom{NumRel::Eq, var(l.x), binary(BinOp::Add, var(l.y), var(l.w))});
      break;
    case LitKind::Prod:
      f = atom(NumAtom{NumRel::Eq, var(l.x), binary(BinOp::Mul, var(l.y), var(l.w))});
      break;
    case LitKind::Pos: f = atom(NumAtom{NumRel::Gt, var(l.x), constant(0)}); break;
    case LitKind::Const: f = atom(NumAtom{NumRel::Eq, var(l.x), constant(l.c)}); break;
    case LitKind::Eq: f = atom(NumAtom{NumRel::Eq, var(l.x), var(l.y)}); break;
    case LitKind::Neq: return negation(atom(NumAtom{NumRel::Eq, var(l.x), var(l.y)}));
    case LitKind::App:
      f = atom(NumAtom{NumRel::Eq, var(l.x), apply(FuncVar{l.f}, var(l.y))});
      break;
    case LitKind::DApp:
      f = atom(NumAtom{NumRel::Eq, var(l.x), deriv(FuncVar{l.f}, var(l.y))});
      break;
    case LitKind::FunEq:
      f = atom(FunEqAtom{FuncVar{l.f}, FuncVar{l.g}, endpoint_of(l.lo), endpoint_of(l.hi)});
      break;
    case LitKind::FunGt:
      f = atom(FunGtAtom{FuncVar{l.f}, FuncVar{l.g}, endpoint_of(l.lo), endpoint_of(l.hi)});
      break;
    case LitKind::DerRel:
      f = atom(DerAtom{FuncVar{l.f}, l.rel, var(l.y), endpoint_of(l.lo), endpoint_of(l.hi)});
      break;
    case LitKind::Shape:
      f = atom(ShapeAtom{l.shape, FuncVar{l.f}, endpoint_of(l.lo), endpoint_of(l.hi)});
      break;
  }
  return l.negated ? negation(f) : f;
}

std::string to_string(const Literal& lit) { return print(to_formula(lit)); }

Conjunct::Conjunct(std::vector<Literal> literals, std::size_t fresh)
    : literals_(std::move(literals)), fresh_(fresh) {
  std::sort(literals_.begin(), literals_.end());
  literals_.erase(std::unique(literals_.begin(), literals_.end()), literals_.end());
}

void Conjunct::add(Literal lit) {
  auto it = std::lower_bound(literals_.begin(), literals_.end(), lit);
  if (it != literals_.end() && *it == lit) return;
  literals_.insert(it, std::move(lit));
}

void Conjunct::add_all(const Conjunct& other) {
  for (const auto& l : other.literals_) add(l);
  fresh_ = std::max(fresh_, other.fresh_);
}

namespace {
void push(std::vector<std::string>& out, std::set<std::string>& seen, const std::string& s) {
  if (!s.empty() && seen.insert(s).second) out.push_back(s);
}
}  // namespace

std::vector<std::string> Conjunct::domain_vars() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& l : literals_) {
    if (l.kind == LitKind::App || l.kind == LitKind::DApp) push(out, seen, l.y);
    if (l.has_interval()) {
      if (l.lo.is_var()) push(out, seen, l.lo.var);
      if (l.hi.is_var()) push(out, seen, l.hi.var);
    }
  }
  return out;
}

std::vector<std::string> Conjunct::numeric_vars() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& l : literals_) {
    push(out, seen, l.x);
    push(out, seen, l.y);
    push(out, seen, l.w);
    if (l.has_interval()) {
      if (l.lo.is_var()) push(out, seen, l.lo.var);
      if (l.hi.is_var()) push(out, seen, l.hi.var);
    }
  }
  return out;
}

std::vector<std::string> Conjunct::function_vars() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& l : literals_) {
    push(out, seen, l.f);
    push(out, seen, l.g);
  }
  return out;
}

Conjunct Conjunct::substitute(const std::map<std::string, std::string>& subst) const {
  auto ren = [&](std::string& s) {
    if (s.empty()) return;
    auto it = subst.find(s);
    if (it != subst.end()) s = it->second;
  };
  std::vector<Literal> out;
  out.reserve(literals_.size());
  for (Literal l : literals_) {
    ren(l.x);
    ren(l.y);
    ren(l.w);
    if (l.has_interval()) {
      if (l.lo.is_var()) ren(l.lo.var);
      if (l.hi.is_var()) ren(l.hi.var);
    }
    out.push_back(std::move(l));
  }
  return Conjunct(std::move(out), fresh_);
}

FormulaPtr Conjunct::to_formula() const {
  if (literals_.empty()) return atom(NumAtom{NumRel::Eq, constant(0), constant(0)});
  std::vector<FormulaPtr> parts;
  for (const auto& l : literals_) parts.push_back(rdf::to_formula(l));
  return conj_all(parts);
}

std::string to_string(const Conjunct& c) {
  if (c.empty()) return "true";
  std::string out;
  for (const auto& l : c.literals()) {
    if (!out.empty()) out += " & ";
    out += to_string(l);
  }
  return out;
}

bool is_snf(const Conjunct& c, std::string* why) {
  auto bad = [&](const Literal& l, const char* reason) {
    if (why) *why = to_string(l) + ": " + reason;
    return false;
  };
  for (const auto& l : c.literals()) {
    switch (l.kind) {
      case LitKind::Sum:
      case LitKind::Prod:
        if (l.x.empty() || l.y.empty() || l.w.empty()) return bad(l, "missing operand");
        break;
      case LitKind::Pos:
      case LitKind::Const:
        if (l.x.empty()) return bad(l, "missing variable");
        break;
      case LitKind::Eq:
        if (l.x.empty() || l.y.empty()) return bad(l, "missing operand");
        break;
      case LitKind::Neq: return bad(l, "disequality is not a standard-normal-form literal");
      case LitKind::App:
      case LitKind::DApp:
        if (l.x.empty() || l.y.empty() || l.f.empty()) return bad(l, "missing operand");
        break;
      case LitKind::FunEq:
      case LitKind::FunGt:
      case LitKind::DerRel:
      case LitKind::Shape: {
        if (l.f.empty()) return bad(l, "missing function");
        if ((l.kind == LitKind::FunEq || l.kind == LitKind::FunGt) && l.g.empty())
          return bad(l, "missing function");
        if (l.kind == LitKind::DerRel && l.y.empty()) return bad(l, "missing bound");
        if (l.lo.is_var() && l.lo.var.empty()) return bad(l, "empty endpoint");
        if (l.hi.is_var() && l.hi.var.empty()) return bad(l, "empty endpoint");
        if (l.lo.kind == Endpoint::Kind::PosInf || l.hi.kind == Endpoint::Kind::NegInf)
          return bad(l, "illegal infinite endpoint");
        if (l.kind == LitKind::FunGt && (!l.lo.is_var() || !l.hi.is_var()))
          return bad(l, "unbounded function comparison");
        if (l.kind == LitKind::Shape && (l.shape == ShapeKind::Up || l.shape == ShapeKind::Down))
          return bad(l, "non-strict monotonicity is rewritten to a derivative bound");
        break;
      }
    }
    if (l.negated && !l.is_functional()) return bad(l, "negated arithmetic literal");
  }
  return true;
}

}  // namespace rdf

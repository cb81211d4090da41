#include "rdf/reducer.hpp"

#include <algorithm>
#include <set>

namespace rdf {

// ---------------------------------------------------------------------------
// Context
// ---------------------------------------------------------------------------

std::size_t ReductionContext::position(const std::string& v) const {
  auto it = std::find(chain.begin(), chain.end(), v);
  if (it == chain.end()) throw MissingChain("variable " + v + " is not on the domain chain");
  return static_cast<std::size_t>(it - chain.begin());
}

std::size_t ReductionContext::ind(const Bound& b) const {
  if (chain.empty()) throw MissingChain("empty domain chain");
  switch (b.kind) {
    case Endpoint::Kind::NegInf: return 0;
    case Endpoint::Kind::PosInf: return chain.size() - 1;
    case Endpoint::Kind::Finite: break;
  }
  return position(b.var);
}

ReductionContext make_context(const OrderedConjunct& ordered) {
  ReductionContext ctx;
  ctx.chain = ordered.chain;
  auto fs = ordered.conjunct.function_vars();
  std::sort(fs.begin(), fs.end());
  ctx.functions = fs;
  for (const auto& f : fs) {
    for (std::size_t j = 1; j <= ctx.chain.size(); ++j) {
      ctx.y[f].push_back("$y." + f + "." + std::to_string(j));
      ctx.t[f].push_back("$t." + f + "." + std::to_string(j));
    }
    ctx.gamma_left[f] = "$g0." + f;
    ctx.gamma_right[f] = "$gr." + f;
  }
  return ctx;
}

Coverage coverage(const Literal& lit, const ReductionContext& ctx) {
  Coverage c;
  c.left_tail = lit.lo.kind == Endpoint::Kind::NegInf;
  c.right_tail = lit.hi.kind == Endpoint::Kind::PosInf;
  c.first = ctx.ind(lit.lo);
  c.last = ctx.ind(lit.hi);
  if (!c.left_tail && !c.right_tail) {
    // Shapes hold vacuously when Ms1 >= Ms2, the other forms when Ms1 > Ms2.
    c.vacuous = lit.kind == LitKind::Shape ? c.first >= c.last : c.first > c.last;
  }
  return c;
}

// ---------------------------------------------------------------------------
// Step 1
// ---------------------------------------------------------------------------

namespace {

TermPtr v(const std::string& name) { return var(name); }

FormulaPtr gt(TermPtr a, TermPtr b) { return atom(NumAtom{NumRel::Gt, std::move(a), std::move(b)}); }
FormulaPtr eq(TermPtr a, TermPtr b) { return atom(NumAtom{NumRel::Eq, std::move(a), std::move(b)}); }
FormulaPtr le(TermPtr a, TermPtr b) { return negation(gt(std::move(a), std::move(b))); }
FormulaPtr ge(TermPtr a, TermPtr b) { return negation(gt(std::move(b), std::move(a))); }
FormulaPtr ne(TermPtr a, TermPtr b) { return negation(eq(std::move(a), std::move(b))); }
TermPtr sub(TermPtr a, TermPtr b) { return binary(BinOp::Sub, std::move(a), std::move(b)); }
TermPtr mul(TermPtr a, TermPtr b) { return binary(BinOp::Mul, std::move(a), std::move(b)); }

FormulaPtr der_relation(DerRel rel, TermPtr a, TermPtr b) {
  switch (rel) {
    case DerRel::Eq: return eq(a, b);
    case DerRel::Gt: return gt(a, b);
    case DerRel::Ge: return ge(a, b);
    case DerRel::Lt: return gt(b, a);
    case DerRel::Le: return le(a, b);
  }
  return eq(a, b);
}

// z1 <= x1 < x2 < ... < xk <= z2 with infinite bounds dropping their guard.
void guard(std::vector<FormulaPtr>& parts, const Bound& lo, const std::vector<std::string>& xs,
           const Bound& hi) {
  if (lo.is_var()) parts.push_back(le(v(lo.var), v(xs.front())));
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) parts.push_back(gt(v(xs[i + 1]), v(xs[i])));
  if (hi.is_var()) parts.push_back(le(v(xs.back()), v(hi.var)));
}

FormulaPtr gadget(const Literal& l, FreshNames& names) {
  std::vector<FormulaPtr> parts;
  auto fresh = [&] { return names.make("s"); };
  switch (l.kind) {
    case LitKind::FunEq:
    case LitKind::FunGt: {
      std::string x = fresh(), y1 = fresh(), y2 = fresh();
      guard(parts, l.lo, {x}, l.hi);
      parts.push_back(eq(v(y1), apply(FuncVar{l.f}, v(x))));
      parts.push_back(eq(v(y2), apply(FuncVar{l.g}, v(x))));
      parts.push_back(l.kind == LitKind::FunEq ? ne(v(y1), v(y2)) : le(v(y1), v(y2)));
      break;
    }
    case LitKind::DerRel: {
      std::string x = fresh(), y1 = fresh();
      guard(parts, l.lo, {x}, l.hi);
      parts.push_back(eq(v(y1), deriv(FuncVar{l.f}, v(x))));
      parts.push_back(l.rel == DerRel::Eq ? ne(v(y1), v(l.y))
                                          : der_relation(complement(l.rel), v(y1), v(l.y)));
      break;
    }
    case LitKind::Shape: {
      bool three = l.shape == ShapeKind::Convex || l.shape == ShapeKind::StrictConvex ||
                   l.shape == ShapeKind::Concave || l.shape == ShapeKind::StrictConcave;
      std::vector<std::string> xs, ys;
      for (int i = 0; i < (three ? 3 : 2); ++i) {
        xs.push_back(fresh());
        ys.push_back(fresh());
      }
      guard(parts, l.lo, xs, l.hi);
      for (std::size_t i = 0; i < xs.size(); ++i)
        parts.push_back(eq(v(ys[i]), apply(FuncVar{l.f}, v(xs[i]))));
      TermPtr y1 = v(ys[0]), y2 = v(ys[1]);
      switch (l.shape) {
        case ShapeKind::Up: parts.push_back(gt(y1, y2)); break;
        case ShapeKind::StrictUp: parts.push_back(ge(y1, y2)); break;
        case ShapeKind::Down: parts.push_back(gt(y2, y1)); break;
        case ShapeKind::StrictDown: parts.push_back(le(y1, y2)); break;
        default: {
          // (y2 - y1)(x3 - x1) against (x2 - x1)(y3 - y1)
          TermPtr lhs = mul(sub(y2, y1), sub(v(xs[2]), v(xs[0])));
          TermPtr rhs = mul(sub(v(xs[1]), v(xs[0])), sub(v(ys[2]), y1));
          if (l.shape == ShapeKind::Convex) parts.push_back(gt(lhs, rhs));
          if (l.shape == ShapeKind::StrictConvex) parts.push_back(ge(lhs, rhs));
          if (l.shape == ShapeKind::Concave) parts.push_back(gt(rhs, lhs));
          if (l.shape == ShapeKind::StrictConcave) parts.push_back(le(lhs, rhs));
        }
      }
      break;
    }
    default: throw Error("step 1: not a functional literal: " + to_string(l));
  }
  return conj_all(parts);
}

}  // namespace

std::vector<Conjunct> step1_remove_negatives(const Conjunct& conjunct, std::size_t branch_cap) {
  bool any = std::any_of(conjunct.literals().begin(), conjunct.literals().end(),
                         [](const Literal& l) { return l.negated; });
  if (!any) return {conjunct};
  FreshNames names = conjunct.names();
  std::vector<FormulaPtr> parts;
  for (const auto& l : conjunct.literals()) {
    parts.push_back(l.negated ? gadget(l, names) : to_formula(l));
  }
  NormalizeOptions options;
  options.branch_cap = branch_cap;
  options.fresh_start = names.next();
  return normalize(conj_all(parts), options);
}

// ---------------------------------------------------------------------------
// Step 2
// ---------------------------------------------------------------------------

Conjunct step2_explicit_eval(const Conjunct& conjunct, const ReductionContext& ctx) {
  Conjunct out = conjunct;
  for (const auto& f : ctx.functions) {
    for (std::size_t j = 0; j < ctx.size(); ++j) {
      out.add(Literal::app(ctx.y.at(f)[j], f, ctx.chain[j]));
      out.add(Literal::dapp(ctx.t.at(f)[j], f, ctx.chain[j]));
    }
  }
  for (const auto& l : conjunct.literals()) {
    if (l.kind != LitKind::App && l.kind != LitKind::DApp) continue;
    std::size_t j = ctx.position(l.y);
    const auto& sample = l.kind == LitKind::App ? ctx.y.at(l.f)[j] : ctx.t.at(l.f)[j];
    out.add(Literal::eq(l.x, sample));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Step 3
// ---------------------------------------------------------------------------

namespace {

using P = Polynomial;

P pv(const std::string& name) { return P::variable(name); }

TNodePtr relate(DerRel rel, const P& a, const P& b) {
  switch (rel) {
    case DerRel::Eq: return tarski::eq(a, b);
    case DerRel::Gt: return tarski::gt(a, b);
    case DerRel::Ge: return tarski::ge(a, b);
    case DerRel::Lt: return tarski::lt(a, b);
    case DerRel::Le: return tarski::le(a, b);
  }
  return tarski::eq(a, b);
}

class Emitter {
 public:
  Emitter(const ReductionContext& ctx, TarskiFormula& out) : ctx_(ctx), out_(out) {}

  P y(const std::string& f, std::size_t i) const { return pv(ctx_.y.at(f)[i]); }
  P t(const std::string& f, std::size_t i) const { return pv(ctx_.t.at(f)[i]); }
  P g0(const std::string& f) const { return pv(ctx_.gamma_left.at(f)); }
  P gr(const std::string& f) const { return pv(ctx_.gamma_right.at(f)); }
  // y_{j+1} - y_j and v_{j+1} - v_j
  P rise(const std::string& f, std::size_t j) const { return y(f, j + 1) - y(f, j); }
  P run(std::size_t j) const { return pv(ctx_.chain[j + 1]) - pv(ctx_.chain[j]); }

  void emit(const Literal& l) {
    Coverage c = coverage(l, ctx_);
    if (c.vacuous) return;
    switch (l.kind) {
      case LitKind::FunEq: fun_eq(l, c); break;
      case LitKind::FunGt:
        for (std::size_t i = c.first; i <= c.last; ++i) out_.add(tarski::gt(y(l.f, i), y(l.g, i)));
        break;
      case LitKind::DerRel: der(l.f, l.rel, pv(l.y), c); break;
      case LitKind::Shape: shape(l, c); break;
      default: break;
    }
  }

 private:
  const ReductionContext& ctx_;
  TarskiFormula& out_;

  void fun_eq(const Literal& l, const Coverage& c) {
    for (std::size_t i = c.first; i <= c.last; ++i) out_.add(tarski::eq(y(l.f, i), y(l.g, i)));
    // Equality at an isolated point says nothing about derivatives.
    if (c.single_point()) return;
    for (std::size_t i = c.first; i <= c.last; ++i) out_.add(tarski::eq(t(l.f, i), t(l.g, i)));
    if (c.left_tail) out_.add(tarski::eq(g0(l.f), g0(l.g)));
    if (c.right_tail) out_.add(tarski::eq(gr(l.f), gr(l.g)));
  }

  void der(const std::string& f, DerRel rel, const P& bound, const Coverage& c) {
    for (std::size_t i = c.first; i <= c.last; ++i) out_.add(relate(rel, t(f, i), bound));
    for (std::size_t j = c.first; j < c.last; ++j) {
      P scaled = bound * run(j);
      out_.add(relate(rel, rise(f, j), scaled));
      if (rel == DerRel::Ge || rel == DerRel::Le) {
        out_.add(tarski::implies(tarski::eq(rise(f, j), scaled),
                                 tarski::all({tarski::eq(t(f, j), bound), tarski::eq(t(f, j + 1), bound)})));
      }
    }
    if (c.left_tail) out_.add(relate(rel, g0(f), bound));
    if (c.right_tail) out_.add(relate(rel, gr(f), bound));
  }

  void monotone(const std::string& f, bool up, const Coverage& c) {
    P zero;
    for (std::size_t i = c.first; i <= c.last; ++i)
      out_.add(up ? tarski::ge(t(f, i), zero) : tarski::le(t(f, i), zero));
    for (std::size_t j = c.first; j < c.last; ++j)
      out_.add(up ? tarski::gt(y(f, j + 1), y(f, j)) : tarski::lt(y(f, j + 1), y(f, j)));
    if (c.left_tail) out_.add(up ? tarski::gt(g0(f), zero) : tarski::lt(g0(f), zero));
    if (c.right_tail) out_.add(up ? tarski::gt(gr(f), zero) : tarski::lt(gr(f), zero));
  }

  void convexity(const std::string& f, bool convex, bool strict, const Coverage& c) {
    // For concavity the roles of the two sides swap.
    auto below = [&](const P& a, const P& b) {
      if (convex) return strict ? tarski::lt(a, b) : tarski::le(a, b);
      return strict ? tarski::gt(a, b) : tarski::ge(a, b);
    };
    for (std::size_t j = c.first; j < c.last; ++j) {
      P lo = t(f, j) * run(j), hi = t(f, j + 1) * run(j), d = rise(f, j);
      out_.add(below(lo, d));
      out_.add(below(d, hi));
      if (!strict) {
        out_.add(tarski::implies(tarski::any({tarski::eq(d, lo), tarski::eq(d, hi)}),
                                 tarski::eq(t(f, j), t(f, j + 1))));
      }
    }
    if (c.left_tail) out_.add(below(g0(f), t(f, c.first)));
    if (c.right_tail) out_.add(below(t(f, c.last), gr(f)));
  }

  void shape(const Literal& l, const Coverage& c) {
    switch (l.shape) {
      case ShapeKind::Up: der(l.f, DerRel::Ge, P(), c); break;
      case ShapeKind::Down: der(l.f, DerRel::Le, P(), c); break;
      case ShapeKind::StrictUp: monotone(l.f, true, c); break;
      case ShapeKind::StrictDown: monotone(l.f, false, c); break;
      case ShapeKind::Convex: convexity(l.f, true, false, c); break;
      case ShapeKind::StrictConvex: convexity(l.f, true, true, c); break;
      case ShapeKind::Concave: convexity(l.f, false, false, c); break;
      case ShapeKind::StrictConcave: convexity(l.f, false, true, c); break;
    }
  }
};

void check_chain(const Conjunct& conjunct, const ReductionContext& ctx) {
  std::set<std::string> positive;
  for (const auto& l : conjunct.literals())
    if (l.kind == LitKind::Pos) positive.insert(l.x);
  for (std::size_t i = 0; i + 1 < ctx.size(); ++i) {
    bool linked = std::any_of(conjunct.literals().begin(), conjunct.literals().end(), [&](const Literal& l) {
      return l.kind == LitKind::Sum && l.x == ctx.chain[i + 1] && l.y == ctx.chain[i] && positive.count(l.w);
    });
    if (!linked) {
      throw MissingChain("no order literal between " + ctx.chain[i] + " and " + ctx.chain[i + 1]);
    }
  }
}

}  // namespace

TarskiFormula step3_remove_functionals(const Conjunct& conjunct, const ReductionContext& ctx) {
  check_chain(conjunct, ctx);
  TarskiFormula out;
  Emitter emit(ctx, out);
  for (const auto& l : conjunct.literals()) {
    if (l.negated) throw Error("step 3: negated literal " + to_string(l));
    switch (l.kind) {
      case LitKind::Sum: out.add(tarski::eq(pv(l.x), pv(l.y) + pv(l.w))); break;
      case LitKind::Prod: out.add(tarski::eq(pv(l.x), pv(l.y) * pv(l.w))); break;
      case LitKind::Pos: out.add(tarski::gt(pv(l.x), P())); break;
      case LitKind::Const: out.add(tarski::eq(pv(l.x), P::constant(l.c))); break;
      case LitKind::Eq:
        if (l.x != l.y) out.add(tarski::eq(pv(l.x), pv(l.y)));
        break;
      case LitKind::Neq: out.add(tarski::negate(tarski::eq(pv(l.x), pv(l.y)))); break;
      case LitKind::App:
      case LitKind::DApp:
        // Dropped; step 2 linked the value to a sample variable.
        ctx.position(l.y);
        break;
      default: emit.emit(l); break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Composition
// ---------------------------------------------------------------------------

Reduction reduce_ordered(const OrderedConjunct& ordered) {
  Reduction r;
  r.ordered = ordered;
  r.context = make_context(ordered);
  r.evaluated = step2_explicit_eval(ordered.conjunct, r.context);
  r.formula = step3_remove_functionals(r.evaluated, r.context);
  return r;
}

std::vector<Reduction> reduce(const Conjunct& conjunct, const ReduceOptions& options) {
  std::vector<Reduction> out;
  auto branches = step1_remove_negatives(conjunct, options.branch_cap);
  for (std::size_t b = 0; b < branches.size(); ++b) {
    OrderFacts facts(branches[b]);
    if (facts.contradictory()) continue;
    auto vars = arrangement_vars(branches[b]);
    for (const auto& arr : consistent_arrangements(vars, facts, options.arrangement_limit)) {
      Reduction r = reduce_ordered(apply_arrangement(branches[b], arr));
      r.branch = b;
      r.positive = branches[b];
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace rdf

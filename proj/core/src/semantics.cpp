#include "rdf/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rdf {

const char* to_string(Truth t) {
  switch (t) {
    case Truth::True: return "true";
    case Truth::False: return "false";
    case Truth::Borderline: return "borderline";
  }
  return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const PiecewiseModel& function(const FuncVar& f, const ExplicitModel& model) {
  static const PiecewiseModel zero = PiecewiseModel::affine(0, 0);
  static const PiecewiseModel one = PiecewiseModel::affine(0, 1);
  if (f.name == kZeroFunction) return zero;
  if (f.name == kOneFunction) return one;
  auto it = model.functional.find(f.name);
  if (it == model.functional.end()) throw UnassignedSymbol(f.name);
  return it->second;
}

bool function_free(const TermPtr& t) {
  if (const auto* b = std::get_if<Term::Binary>(&t->node)) return function_free(b->lhs) && function_free(b->rhs);
  return t->is_var() || std::holds_alternative<Term::Const>(t->node);
}

std::optional<Rational> exact_term(const TermPtr& t, const ExplicitModel& model) {
  return std::visit(
      [&](const auto& n) -> std::optional<Rational> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term::Var>) {
          auto it = model.numeric.find(n.name);
          if (it == model.numeric.end()) throw UnassignedSymbol(n.name);
          return it->second;
        } else if constexpr (std::is_same_v<T, Term::Const>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, Term::Binary>) {
          auto a = exact_term(n.lhs, model);
          auto b = exact_term(n.rhs, model);
          if (!a || !b) return std::nullopt;
          switch (n.op) {
            case BinOp::Add: return Rational(*a + *b);
            case BinOp::Sub: return Rational(*a - *b);
            case BinOp::Mul: return Rational(*a * *b);
            case BinOp::Div:
              if (*b == 0) return std::nullopt;
              return Rational(*a / *b);
          }
          return std::nullopt;
        } else {
          throw Error("exact_term: function application");
        }
      },
      t->node);
}

std::optional<double> endpoint(const Endpoint& e, const ExplicitModel& model) {
  switch (e.kind) {
    case Endpoint::Kind::NegInf: return -kInf;
    case Endpoint::Kind::PosInf: return kInf;
    case Endpoint::Kind::Finite: break;
  }
  return evaluate_term(e.term, model);
}

Verdict vacuous() { return {Truth::True, kInf}; }
Verdict undefined() { return {Truth::False, -kInf}; }

// Non-strict sign test of a margin; `scale` bounds the magnitudes that
// produced it, so rounding noise in the last bits still counts as true.
Verdict weak(double m, double tol, double scale) {
  if (m >= -1e-12 * (1 + scale)) return {Truth::True, m};
  return {m >= -tol ? Truth::Borderline : Truth::False, m};
}

// Sample points: uniform grid plus every breakpoint and knot inside.
std::vector<double> sample_points(double a, double b, const std::vector<const PiecewiseModel*>& fs,
                                  std::size_t n) {
  std::vector<double> xs;
  if (a == b) return {a};
  for (std::size_t i = 0; i < n; ++i) xs.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  for (const auto* f : fs) {
    for (const auto& p : f->pieces())
      for (const auto& [x, d] : p.knots)
        if (x > a && x < b) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

// Finite window standing in for an infinite interval when sampling.
std::pair<double, double> window(double a, double b, const PiecewiseModel& f, const PiecewiseModel& g) {
  double lo = std::min(f.breakpoints().front(), g.breakpoints().front());
  double hi = std::max(f.breakpoints().back(), g.breakpoints().back());
  if (std::isfinite(a)) lo = std::min(lo, a);
  if (std::isfinite(b)) hi = std::max(hi, b);
  double pad = 10 * (hi - lo + 1);
  return {std::isfinite(a) ? a : lo - pad, std::isfinite(b) ? b : hi + pad};
}

bool same_structure(const PiecewiseModel& f, const PiecewiseModel& g, double a, double b) {
  if (&f == &g) return true;
  if (f.breakpoints() != g.breakpoints()) return false;
  for (std::size_t j = 0; j < f.pieces().size(); ++j) {
    const Piece& p = f.pieces()[j];
    if (p.hi() < a || p.lo() > b) continue;
    if (!(p == g.pieces()[j])) return false;
  }
  return true;
}

Verdict check_fun_eq(const FunEqAtom& a, const ExplicitModel& model, const EvalOptions& o) {
  auto s1 = endpoint(a.lo, model), s2 = endpoint(a.hi, model);
  if (!s1 || !s2) return undefined();
  if (*s1 > *s2) return vacuous();
  const auto& f = function(a.f, model);
  const auto& g = function(a.g, model);
  if (same_structure(f, g, *s1, *s2)) return vacuous();
  auto [lo, hi] = window(*s1, *s2, f, g);
  double worst = 0;
  for (double x : sample_points(lo, hi, {&f, &g}, o.samples)) worst = std::max(worst, std::fabs(f.value(x) - g.value(x)));
  // Tail limits of the derivative must agree as well.
  if (std::isinf(*s1)) worst = std::max(worst, std::fabs(f.pieces().front().gamma - g.pieces().front().gamma));
  if (std::isinf(*s2)) worst = std::max(worst, std::fabs(f.pieces().back().gamma - g.pieces().back().gamma));
  return {worst <= o.tolerance ? Truth::True : Truth::False, -worst};
}

Verdict check_fun_gt(const FunGtAtom& a, const ExplicitModel& model, const EvalOptions& o) {
  auto s1 = endpoint(a.lo, model), s2 = endpoint(a.hi, model);
  if (!s1 || !s2 || std::isinf(*s1) || std::isinf(*s2)) return undefined();
  if (*s1 > *s2) return vacuous();
  const auto& f = function(a.f, model);
  const auto& g = function(a.g, model);
  double m = kInf;
  for (double x : sample_points(*s1, *s2, {&f, &g}, o.samples)) m = std::min(m, f.value(x) - g.value(x));
  if (m > o.tolerance) return {Truth::True, m};
  return {m < -o.tolerance ? Truth::False : Truth::Borderline, m};
}

Verdict check_der(const DerAtom& a, const ExplicitModel& model, const EvalOptions& o) {
  auto s1 = endpoint(a.lo, model), s2 = endpoint(a.hi, model);
  auto yb = evaluate_term(a.bound, model);
  if (!s1 || !s2 || !yb) return undefined();
  if (*s1 > *s2) return vacuous();
  double y = *yb;
  auto prof = function(a.f, model).profile(*s1, *s2);
  double attained = kInf, limit = kInf;
  for (std::size_t i = 0; i < prof.d.size(); ++i) {
    double d = prof.d[i], m = 0;
    switch (a.rel) {
      case DerRel::Eq: m = -std::fabs(d - y); break;
      case DerRel::Gt:
      case DerRel::Ge: m = d - y; break;
      case DerRel::Lt:
      case DerRel::Le: m = y - d; break;
    }
    if (prof.attained[i]) {
      attained = std::min(attained, m);
    } else {
      limit = std::min(limit, m);
    }
  }
  double m = std::min(attained, limit);
  switch (a.rel) {
    case DerRel::Eq: return {m >= -o.tolerance ? Truth::True : Truth::False, m};
    case DerRel::Ge:
    case DerRel::Le: {
      double scale = std::fabs(y);
      for (double d : prof.d) scale = std::max(scale, std::fabs(d));
      return weak(m, o.tolerance, scale);
    }
    case DerRel::Gt:
    case DerRel::Lt:
      // An unattained limit may touch the bound.
      if (attained > 0 && limit >= 0) return {Truth::True, m};
      return {m < -o.tolerance ? Truth::False : Truth::Borderline, m};
  }
  return undefined();
}

Verdict check_shape(const ShapeAtom& a, const ExplicitModel& model, const EvalOptions& o) {
  auto s1 = endpoint(a.lo, model), s2 = endpoint(a.hi, model);
  if (!s1 || !s2) return undefined();
  if (*s1 >= *s2) return vacuous();
  auto prof = function(a.f, model).profile(*s1, *s2);
  bool mirrored = a.kind == ShapeKind::Down || a.kind == ShapeKind::StrictDown || a.kind == ShapeKind::Concave ||
                  a.kind == ShapeKind::StrictConcave;
  if (mirrored)
    for (auto& d : prof.d) d = -d;
  bool strict = a.kind == ShapeKind::StrictUp || a.kind == ShapeKind::StrictDown ||
                a.kind == ShapeKind::StrictConvex || a.kind == ShapeKind::StrictConcave;
  bool monotone = a.kind == ShapeKind::Up || a.kind == ShapeKind::Down || a.kind == ShapeKind::StrictUp ||
                  a.kind == ShapeKind::StrictDown;

  double m = kInf;
  bool flat = false;
  if (monotone) {
    for (double d : prof.d) m = std::min(m, d);
    for (std::size_t i = 0; i + 1 < prof.d.size(); ++i) flat = flat || (prof.d[i] == 0 && prof.d[i + 1] == 0);
  } else {
    for (std::size_t i = 0; i + 1 < prof.d.size(); ++i) {
      double diff = prof.d[i + 1] - prof.d[i];
      m = std::min(m, diff);
      flat = flat || diff == 0;
    }
  }
  double scale = 0;
  for (double d : prof.d) scale = std::max(scale, std::fabs(d));
  if (!strict) return weak(m, o.tolerance, scale);
  if (m < -o.tolerance || flat) return {Truth::False, flat ? std::min(m, 0.0) : m};
  if (m < 0) return {Truth::Borderline, m};
  return {Truth::True, m};
}

Truth kleene_not(Truth t) {
  if (t == Truth::True) return Truth::False;
  if (t == Truth::False) return Truth::True;
  return t;
}

}  // namespace

std::optional<double> evaluate_term(const TermPtr& t, const ExplicitModel& model) {
  if (function_free(t)) {
    auto q = exact_term(t, model);
    if (!q) return std::nullopt;
    return to_double(*q);
  }
  return std::visit(
      [&](const auto& n) -> std::optional<double> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term::Binary>) {
          auto a = evaluate_term(n.lhs, model);
          auto b = evaluate_term(n.rhs, model);
          if (!a || !b) return std::nullopt;
          switch (n.op) {
            case BinOp::Add: return *a + *b;
            case BinOp::Sub: return *a - *b;
            case BinOp::Mul: return *a * *b;
            case BinOp::Div:
              if (*b == 0) return std::nullopt;
              return *a / *b;
          }
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, Term::Apply>) {
          auto x = evaluate_term(n.arg, model);
          if (!x) return std::nullopt;
          return function(n.f, model).value(*x);
        } else if constexpr (std::is_same_v<T, Term::Deriv>) {
          auto x = evaluate_term(n.arg, model);
          if (!x) return std::nullopt;
          return function(n.f, model).derivative(*x);
        } else {
          return std::nullopt;  // leaves are function-free
        }
      },
      t->node);
}

Verdict check_atom(const Atom& atom, const ExplicitModel& model, const EvalOptions& options) {
  if (const auto* n = std::get_if<NumAtom>(&atom)) {
    if (function_free(n->lhs) && function_free(n->rhs)) {
      auto a = exact_term(n->lhs, model), b = exact_term(n->rhs, model);
      if (!a || !b) return undefined();
      double diff = to_double(*a - *b);
      if (n->rel == NumRel::Eq) return {*a == *b ? Truth::True : Truth::False, *a == *b ? kInf : -std::fabs(diff)};
      return {*a > *b ? Truth::True : Truth::False, diff};
    }
    auto a = evaluate_term(n->lhs, model), b = evaluate_term(n->rhs, model);
    if (!a || !b) return undefined();
    double diff = *a - *b;
    if (n->rel == NumRel::Eq) {
      return {std::fabs(diff) <= options.tolerance ? Truth::True : Truth::False, -std::fabs(diff)};
    }
    if (diff > options.tolerance) return {Truth::True, diff};
    return {diff < -options.tolerance ? Truth::False : Truth::Borderline, diff};
  }
  if (const auto* x = std::get_if<FunEqAtom>(&atom)) return check_fun_eq(*x, model, options);
  if (const auto* x = std::get_if<FunGtAtom>(&atom)) return check_fun_gt(*x, model, options);
  if (const auto* x = std::get_if<DerAtom>(&atom)) return check_der(*x, model, options);
  return check_shape(std::get<ShapeAtom>(atom), model, options);
}

Truth evaluate(const FormulaPtr& f, const ExplicitModel& model, const EvalOptions& options) {
  return std::visit(
      [&](const auto& n) -> Truth {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Formula::AtomNode>) {
          return check_atom(n.atom, model, options).truth;
        } else if constexpr (std::is_same_v<T, Formula::Not>) {
          return kleene_not(evaluate(n.sub, model, options));
        } else {
          constexpr bool is_and = std::is_same_v<T, Formula::And>;
          Truth a = evaluate(n.lhs, model, options);
          Truth b = evaluate(n.rhs, model, options);
          Truth absorbing = is_and ? Truth::False : Truth::True;
          if (a == absorbing || b == absorbing) return absorbing;
          if (a == Truth::Borderline || b == Truth::Borderline) return Truth::Borderline;
          return is_and ? Truth::True : Truth::False;
        }
      },
      f->node);
}

}  // namespace rdf

#include "support/generators.hpp"

#include <algorithm>
#include <array>

namespace rdf::support {

namespace {

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& xs) {
  return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
}

std::size_t upto(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

const std::vector<std::string> kVars = {"a", "b", "c"};
const std::vector<std::string> kFuns = {"f", "g"};
const std::vector<ShapeKind> kShapes = {ShapeKind::Up,     ShapeKind::StrictUp,     ShapeKind::Down,
                                        ShapeKind::StrictDown, ShapeKind::Convex,   ShapeKind::StrictConvex,
                                        ShapeKind::Concave, ShapeKind::StrictConcave};
// Up and Down normalize to derivative bounds.
const std::vector<ShapeKind> kSnfShapes = {ShapeKind::StrictUp, ShapeKind::StrictDown, ShapeKind::Convex,
                                           ShapeKind::StrictConvex, ShapeKind::Concave, ShapeKind::StrictConcave};
const std::vector<DerRel> kRels = {DerRel::Eq, DerRel::Gt, DerRel::Ge, DerRel::Lt, DerRel::Le};

Endpoint finite_end(Rng& rng) { return Endpoint::finite(var(pick(rng, kVars))); }

}  // namespace

Rational random_rational(Rng& rng, int num, int den) {
  int p = std::uniform_int_distribution<int>(-num, num)(rng);
  int q = std::uniform_int_distribution<int>(1, den)(rng);
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Atom random_atom(Rng& rng) {
  switch (upto(rng, 0, 5)) {
    case 0: return NumAtom{NumRel::Gt, var(pick(rng, kVars)), var(pick(rng, kVars))};
    case 1: return NumAtom{NumRel::Eq, var(pick(rng, kVars)), constant(random_rational(rng, 3, 2))};
    case 2: return FunEqAtom{{pick(rng, kFuns)}, {pick(rng, kFuns)}, finite_end(rng), Endpoint::pos_inf()};
    case 3: return FunGtAtom{{"f"}, {"g"}, finite_end(rng), finite_end(rng)};
    case 4: return DerAtom{{pick(rng, kFuns)}, pick(rng, kRels), var(pick(rng, kVars)), Endpoint::neg_inf(), finite_end(rng)};
    default: return ShapeAtom{pick(rng, kShapes), {pick(rng, kFuns)}, finite_end(rng), finite_end(rng)};
  }
}

FormulaPtr random_formula(Rng& rng, std::size_t max_atoms) {
  std::size_t n = upto(rng, 1, max_atoms);
  // Random binary tree over n leaves, negations sprinkled on any node.
  std::vector<FormulaPtr> parts;
  for (std::size_t i = 0; i < n; ++i) {
    FormulaPtr leaf = atom(random_atom(rng));
    parts.push_back(coin(rng, 0.3) ? negation(leaf) : leaf);
  }
  while (parts.size() > 1) {
    std::size_t i = upto(rng, 0, parts.size() - 2);
    FormulaPtr joined = coin(rng, 0.5) ? conj(parts[i], parts[i + 1]) : disj(parts[i], parts[i + 1]);
    if (coin(rng, 0.2)) joined = negation(joined);
    parts[i] = joined;
    parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(i) + 1);
  }
  return parts.front();
}

Conjunct random_snf_conjunct(Rng& rng, const ConjunctShape& shape) {
  const std::vector<std::string> dom_all = {"a", "b", "c", "d"};
  const std::vector<std::string> fun_all = {"f", "g", "h"};
  std::vector<std::string> dom(dom_all.begin(), dom_all.begin() + static_cast<std::ptrdiff_t>(upto(rng, 1, shape.domain_vars)));
  std::vector<std::string> funs(fun_all.begin(), fun_all.begin() + static_cast<std::ptrdiff_t>(upto(rng, 1, shape.functions)));
  std::size_t counter = 0;
  auto fresh = [&](const char* stem) { return std::string(stem) + std::to_string(counter++); };

  Conjunct out;
  // A few strict order facts x = y + w, w > 0.
  for (std::size_t i = 0; i + 1 < dom.size(); ++i) {
    if (!coin(rng, 0.5)) continue;
    std::string w = fresh("w");
    out.add(Literal::sum(dom[i + 1], dom[i], w));
    out.add(Literal::pos(w));
  }
  if (coin(rng, 0.3)) out.add(Literal::constant(pick(rng, dom), random_rational(rng, 4, 2)));

  auto lower = [&]() { return coin(rng, 0.2) ? Bound::neg_inf() : Bound::of(pick(rng, dom)); };
  auto upper = [&]() { return coin(rng, 0.2) ? Bound::pos_inf() : Bound::of(pick(rng, dom)); };

  std::size_t atoms = upto(rng, 1, shape.functional_atoms);
  for (std::size_t i = 0; i < atoms; ++i) {
    bool neg = coin(rng, shape.negation_rate);
    const std::string& f = pick(rng, funs);
    switch (upto(rng, 0, 9)) {
      case 0:
        out.add(Literal::fun_eq(f, pick(rng, funs), lower(), upper(), neg));
        break;
      case 1:
        out.add(Literal::fun_gt(f, pick(rng, funs), Bound::of(pick(rng, dom)), Bound::of(pick(rng, dom)), neg));
        break;
      case 2:
      case 3: {
        std::string bound = fresh("k");
        out.add(Literal::constant(bound, random_rational(rng, 3, 2)));
        out.add(Literal::der(f, pick(rng, kRels), bound, lower(), upper(), neg));
        break;
      }
      case 4: {
        std::string y = fresh("u");
        out.add(Literal::app(y, f, pick(rng, dom)));
        if (coin(rng, 0.5)) out.add(Literal::constant(y, random_rational(rng, 4, 1)));
        break;
      }
      case 5: {
        std::string y = fresh("s");
        out.add(Literal::dapp(y, f, pick(rng, dom)));
        if (coin(rng, 0.5)) out.add(Literal::constant(y, random_rational(rng, 2, 1)));
        break;
      }
      default:
        out.add(Literal::shape_of(pick(rng, kSnfShapes), f, lower(), upper(), neg));
        break;
    }
  }
  return out;
}

namespace {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

SegmentCase make_case(Rng& rng, double t_lo, double delta, double t_hi, const char* variant) {
  SegmentCase s;
  s.v_lo = uniform(rng, -5, 5);
  s.v_hi = s.v_lo + uniform(rng, 0.1, 5);
  s.y_lo = uniform(rng, -5, 5);
  s.y_hi = s.y_lo + delta * (s.v_hi - s.v_lo);
  s.t_lo = t_lo;
  s.t_hi = t_hi;
  s.variant = variant;
  return s;
}

// Three increasing slopes a < d < b.
std::array<double, 3> increasing(Rng& rng, double lo = -3) {
  double a = uniform(rng, lo, 2);
  double d = a + uniform(rng, 0.01, 2);
  return {a, d, d + uniform(rng, 0.01, 2)};
}

DerivativeBound bound(double value, bool lower, bool strict) { return {value, lower, strict}; }

}  // namespace

SegmentCase feasible_segment(Rng& rng, std::size_t k) {
  auto [a, d, b] = increasing(rng);
  bool flat = coin(rng, 0.15);
  double e = uniform(rng, -3, 3);
  SegmentCase s;
  switch (k % kSegmentVariants) {
    case 0:
      return make_case(rng, uniform(rng, -3, 3), uniform(rng, -3, 3), uniform(rng, -3, 3), "free");
    case 1:
      s = flat ? make_case(rng, e, e, e, "convex") : make_case(rng, a, d, b, "convex");
      s.req.convex = true;
      return s;
    case 2:
      s = make_case(rng, a, d, b, "strict-convex");
      s.req.strict_convex = true;
      return s;
    case 3:
      s = flat ? make_case(rng, e, e, e, "concave") : make_case(rng, b, d, a, "concave");
      s.req.concave = true;
      return s;
    case 4:
      s = make_case(rng, b, d, a, "strict-concave");
      s.req.strict_concave = true;
      return s;
    case 5: {
      double lo = coin(rng, 0.2) ? 0 : uniform(rng, 0, 3), hi = coin(rng, 0.2) ? 0 : uniform(rng, 0, 3);
      s = make_case(rng, lo, uniform(rng, 0.01, 3), hi, "strict-up");
      s.req.strict_up = true;
      return s;
    }
    case 6: {
      double lo = coin(rng, 0.2) ? 0 : -uniform(rng, 0, 3), hi = coin(rng, 0.2) ? 0 : -uniform(rng, 0, 3);
      s = make_case(rng, lo, -uniform(rng, 0.01, 3), hi, "strict-down");
      s.req.strict_down = true;
      return s;
    }
    case 7: {
      double x = uniform(rng, -3, 3), y = uniform(rng, -3, 3), z = uniform(rng, -3, 3);
      double c = std::min({x, y, z}) - uniform(rng, 0, 1);
      s = flat ? make_case(rng, c, c, c, "lower-bound") : make_case(rng, x, y, z, "lower-bound");
      if (!flat) c = std::min({x, y, z}) - uniform(rng, 0.001, 1);
      s.req.bounds.push_back(bound(c, true, false));
      return s;
    }
    case 8: {
      double x = uniform(rng, -3, 3), y = uniform(rng, -3, 3), z = uniform(rng, -3, 3);
      s = make_case(rng, x, y, z, "strict-lower-bound");
      s.req.bounds.push_back(bound(std::min({x, y, z}) - uniform(rng, 0.001, 1), true, true));
      return s;
    }
    case 9: {
      double x = uniform(rng, -3, 3), y = uniform(rng, -3, 3), z = uniform(rng, -3, 3);
      double c = std::max({x, y, z}) + uniform(rng, 0.001, 1);
      s = flat ? make_case(rng, c, c, c, "upper-bound") : make_case(rng, x, y, z, "upper-bound");
      s.req.bounds.push_back(bound(c, false, false));
      return s;
    }
    case 10: {
      auto [p, q, r] = increasing(rng, 0);
      s = make_case(rng, coin(rng, 0.3) ? 0 : p, q, r, "convex-strict-up");
      s.req.convex = true;
      s.req.strict_up = true;
      return s;
    }
    default: {
      auto [p, q, r] = increasing(rng, -8);
      double shift = std::min(0.0, -r);  // keep all slopes <= 0
      s = make_case(rng, r + shift, q + shift, p + shift, "strict-concave-down-bounded");
      s.req.strict_concave = true;
      s.req.strict_down = true;
      s.req.bounds.push_back(bound(r + shift + uniform(rng, 0, 1), false, false));
      s.req.bounds.push_back(bound(p + shift - uniform(rng, 0.001, 1), true, true));
      return s;
    }
  }
}

SegmentCase infeasible_segment(Rng& rng, std::size_t k) {
  auto [a, d, b] = increasing(rng);
  double m = uniform(rng, 0.01, 1);
  SegmentCase s;
  switch (k % kInfeasibleVariants) {
    case 0:
      s = make_case(rng, a, a - m, b, "convex-mean-below");
      s.req.convex = true;
      return s;
    case 1:
      s = make_case(rng, a, b + m, b, "convex-mean-above");
      s.req.convex = true;
      return s;
    case 2:
      s = make_case(rng, a, a, a + m, "convex-collapse");
      s.req.convex = true;
      return s;
    case 3:
      s = make_case(rng, a, a, b, "strict-convex-touch");
      s.req.strict_convex = true;
      return s;
    case 4:
      s = make_case(rng, uniform(rng, 0, 2), -uniform(rng, 0, 2), uniform(rng, 0, 2), "strict-up-no-rise");
      s.req.strict_up = true;
      return s;
    case 5:
      s = make_case(rng, -m, uniform(rng, 0.01, 2), uniform(rng, 0, 2), "strict-up-negative-slope");
      s.req.strict_up = true;
      return s;
    case 6:
      s = make_case(rng, d, a, b, "lower-bound-mean");
      s.req.bounds.push_back(bound(a + m, true, false));
      return s;
    case 7:
      s = make_case(rng, a, d, b, "strict-lower-bound-touch");
      s.req.bounds.push_back(bound(a, true, true));
      return s;
    case 8:
      s = make_case(rng, b - m, b, b, "upper-bound-mean-meets");
      s.req.bounds.push_back(bound(b, false, false));
      return s;
    default:
      s = make_case(rng, a, d, b, "concave-rising");
      s.req.concave = true;
      return s;
  }
}

}  // namespace rdf::support

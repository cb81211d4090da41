#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <random>

#include "rdf/backend.hpp"

namespace rdf {

namespace {

// Margin asked of violated strict inequalities so that the climb aims for
// the interior instead of the boundary.
constexpr double kStrictMargin = 1e-3;

struct CTerm {
  double coef;
  std::vector<std::pair<std::size_t, unsigned>> factors;
};

struct CNode {
  TNode::Kind kind = TNode::Kind::Atom;
  PolyRel rel = PolyRel::Eq;
  std::vector<CTerm> poly;
  std::vector<CNode> kids;
};

// Linear solver for one variable of an equation p = u*a + b.
struct Solver {
  std::size_t var;
  Polynomial a, b;
};

struct Equation {
  std::vector<std::size_t> vars;
  std::vector<Solver> solvers;
};

class Problem {
 public:
  explicit Problem(const TarskiFormula& f) : formula_(f) {
    for (const auto& v : f.variables()) {
      index_.emplace(v, names_.size());
      names_.push_back(v);
    }
    for (const auto& c : f.conjuncts()) {
      roots_.push_back(compile(c));
      if (c->kind == TNode::Kind::Atom && c->rel == PolyRel::Eq) add_equation(c->poly);
    }
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  /// Assigns every variable: equations with one open linear variable are
  /// solved, otherwise the next variable in `order` takes its proposal.
  /// Records which variables were decided by proposal.
  std::vector<Rational> complete(const std::vector<Rational>& proposal, const std::vector<std::size_t>& order,
                                 std::vector<std::size_t>& decided) const {
    std::vector<std::optional<Rational>> val(size());
    std::map<std::string, Rational> env;
    decided.clear();
    std::size_t next = 0, assigned = 0;
    while (assigned < size()) {
      bool progress = true;
      while (progress) {
        progress = false;
        for (const auto& e : equations_) {
          std::size_t open = 0, which = 0;
          for (auto v : e.vars)
            if (!val[v]) ++open, which = v;
          if (open != 1) continue;
          for (const auto& s : e.solvers) {
            if (s.var != which) continue;
            Rational a = s.a.evaluate(env);
            if (a == 0) break;
            Rational x = -s.b.evaluate(env) / a;
            val[which] = x;
            env[names_[which]] = x;
            ++assigned;
            progress = true;
            break;
          }
        }
      }
      while (next < order.size() && val[order[next]]) ++next;
      if (next == order.size()) break;
      std::size_t v = order[next];
      val[v] = proposal[v];
      env[names_[v]] = proposal[v];
      decided.push_back(v);
      ++assigned;
    }
    std::vector<Rational> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = *val[i];
    return out;
  }

  double score(const std::vector<Rational>& values) const {
    std::vector<double> d(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) d[i] = to_double(values[i]);
    double s = 0;
    for (const auto& r : roots_) s += violation(r, d, true);
    return s;
  }

  bool exact(const std::vector<Rational>& values, std::map<std::string, Rational>& out) const {
    out.clear();
    for (std::size_t i = 0; i < size(); ++i) out[names_[i]] = values[i];
    return evaluate_exact(formula_, out);
  }

 private:
  const TarskiFormula& formula_;
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
  std::vector<CNode> roots_;
  std::vector<Equation> equations_;

  CNode compile(const TNodePtr& n) const {
    CNode c;
    c.kind = n->kind;
    c.rel = n->rel;
    for (const auto& [m, coef] : n->poly.terms()) {
      CTerm t{to_double(coef), {}};
      for (const auto& [v, e] : m) t.factors.emplace_back(index_.at(v), e);
      c.poly.push_back(std::move(t));
    }
    for (const auto& k : n->kids) c.kids.push_back(compile(k));
    return c;
  }

  void add_equation(const Polynomial& p) {
    Equation e;
    for (const auto& v : p.variables()) e.vars.push_back(index_.at(v));
    for (const auto& v : p.variables()) {
      if (p.degree_in(v) != 1) continue;
      Solver s{index_.at(v), {}, {}};
      for (const auto& [m, coef] : p.terms()) {
        Monomial rest;
        bool has = false;
        for (const auto& f : m) {
          if (f.first == v) {
            has = true;
          } else {
            rest.push_back(f);
          }
        }
        Polynomial term = Polynomial::constant(coef);
        for (const auto& [name, exp] : rest)
          for (unsigned k = 0; k < exp; ++k) term *= Polynomial::variable(name);
        (has ? s.a : s.b) += term;
      }
      e.solvers.push_back(std::move(s));
    }
    equations_.push_back(std::move(e));
  }

  static double eval(const std::vector<CTerm>& p, const std::vector<double>& d) {
    double s = 0;
    for (const auto& t : p) {
      double x = t.coef;
      for (const auto& [v, e] : t.factors) x *= std::pow(d[v], static_cast<double>(e));
      s += x;
    }
    return s;
  }

  // Distance from satisfying `n` (when positive) or its negation.
  static double violation(const CNode& n, const std::vector<double>& d, bool positive) {
    switch (n.kind) {
      case TNode::Kind::Atom: {
        double p = eval(n.poly, d);
        if (positive) {
          switch (n.rel) {
            case PolyRel::Eq: return std::fabs(p);
            case PolyRel::Lt: return p < 0 ? 0 : p + kStrictMargin;
            case PolyRel::Le: return std::max(p, 0.0);
          }
        }
        switch (n.rel) {
          case PolyRel::Eq: return std::fabs(p) < 1e-12 ? 1.0 : 0.0;
          case PolyRel::Lt: return std::max(-p, 0.0);
          case PolyRel::Le: return p > 0 ? 0 : -p + kStrictMargin;
        }
        return 0;
      }
      case TNode::Kind::And:
      case TNode::Kind::Or: {
        bool sum = (n.kind == TNode::Kind::And) == positive;
        double acc = sum ? 0 : INFINITY;
        for (const auto& k : n.kids) {
          double v = violation(k, d, positive);
          acc = sum ? acc + v : std::min(acc, v);
        }
        return n.kids.empty() ? (sum ? 0 : 1) : acc;
      }
      case TNode::Kind::Not: return violation(n.kids[0], d, !positive);
      case TNode::Kind::Implies: {
        double a = violation(n.kids[0], d, false), b = violation(n.kids[1], d, true);
        if (positive) return std::min(a, b);
        return violation(n.kids[0], d, true) + violation(n.kids[1], d, false);
      }
    }
    return 0;
  }
};

}  // namespace

SolveResult search_internal(const TarskiFormula& formula, const SearchBudget& budget) {
  SolveResult result;
  result.solver = "internal";
  auto start = std::chrono::steady_clock::now();
  auto finish = [&](SolveResult& r) {
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  };

  Problem prob(formula);
  std::map<std::string, Rational> witness;
  std::vector<std::size_t> decided;
  std::mt19937_64 rng(budget.seed);
  std::vector<std::size_t> order(prob.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  // Distinct small integers are a good first guess for chains.
  std::vector<Rational> proposal(prob.size());
  for (std::size_t i = 0; i < proposal.size(); ++i) proposal[i] = Rational(static_cast<long>(i % 7) + 1);
  {
    auto values = prob.complete(proposal, order, decided);
    if (prob.score(values) == 0 && prob.exact(values, witness)) {
      result.status = SolveStatus::Sat;
      result.witness = witness;
      result.validated = true;
      return finish(result);
    }
  }
  if (prob.size() == 0) {
    result.diagnostics.push_back("internal search: constant formula is false");
    return finish(result);
  }

  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (std::int64_t den = 1, num = 4;; den = std::min(den * 2, budget.max_denominator),
                    num = std::min(num * 2, budget.max_numerator)) {
    std::uniform_int_distribution<std::int64_t> pick_den(1, den), pick_num(-num, num);
    auto random_value = [&] {
      Rational q(pick_num(rng), pick_den(rng));
      q.canonicalize();
      return q;
    };
    for (auto& p : proposal) p = random_value();
    auto values = prob.complete(proposal, order, decided);
    double current = prob.score(values);
    for (std::size_t step = 0; step < budget.steps; ++step) {
      if (current == 0 && prob.exact(values, witness)) {
        result.status = SolveStatus::Sat;
        result.witness = witness;
        result.validated = true;
        return finish(result);
      }
      if (step % 500 == 499) {
        // Restart with a new decision order.
        std::shuffle(order.begin(), order.end(), rng);
        for (auto& p : proposal) p = random_value();
        values = prob.complete(proposal, order, decided);
        current = prob.score(values);
        continue;
      }
      if (decided.empty()) break;
      std::size_t v = decided[std::uniform_int_distribution<std::size_t>(0, decided.size() - 1)(rng)];
      Rational old = proposal[v];
      double r = coin(rng);
      if (r < 0.5) {
        proposal[v] = random_value();
      } else if (r < 0.8) {
        proposal[v] += Rational(pick_num(rng) >= 0 ? 1 : -1, pick_den(rng));
      } else {
        proposal[v] = values[v] + Rational(pick_num(rng), 4 * den);
      }
      proposal[v].canonicalize();
      std::vector<std::size_t> trial_decided;
      auto trial = prob.complete(proposal, order, trial_decided);
      double s = prob.score(trial);
      if (s <= current || coin(rng) < 0.01) {
        values = std::move(trial);
        decided = std::move(trial_decided);
        current = s;
      } else {
        proposal[v] = old;
      }
    }
    if (den == budget.max_denominator && num == budget.max_numerator) break;
  }
  result.diagnostics.push_back("internal search exhausted its budget");
  return finish(result);
}

}  // namespace rdf

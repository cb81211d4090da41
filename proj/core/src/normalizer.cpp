#include "rdf/normalizer.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace rdf {

// ---------------------------------------------------------------------------
// DNF
// ---------------------------------------------------------------------------

namespace {

class DnfBuilder {
 public:
  explicit DnfBuilder(std::size_t cap) : cap_(cap) {}

  const std::vector<Branch>& build(const FormulaPtr& f, bool positive) {
    auto key = std::make_pair(f.get(), positive);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Branch> out = std::visit(
        [&](const auto& n) -> std::vector<Branch> {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Formula::AtomNode>) {
            return {Branch{SignedAtom{n.atom, positive}}};
          } else if constexpr (std::is_same_v<T, Formula::Not>) {
            return build(n.sub, !positive);
          } else {
            // And under positive polarity (or Or under negation) is a product.
            bool product = std::is_same_v<T, Formula::And> == positive;
            const auto& lhs = build(n.lhs, positive);
            const auto& rhs = build(n.rhs, positive);
            return product ? cross(lhs, rhs) : concat(lhs, rhs);
          }
        },
        f->node);
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  std::size_t cap_;
  std::map<std::pair<const Formula*, bool>, std::vector<Branch>> memo_;

  void check(std::size_t n) const {
    if (n > cap_) {
      throw BranchExplosion("disjunctive normal form exceeds " + std::to_string(cap_) + " branches");
    }
  }

  std::vector<Branch> concat(const std::vector<Branch>& a, const std::vector<Branch>& b) const {
    check(a.size() + b.size());
    std::vector<Branch> out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
  }

  std::vector<Branch> cross(const std::vector<Branch>& a, const std::vector<Branch>& b) const {
    check(a.size() * b.size());
    std::vector<Branch> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a) {
      for (const auto& y : b) {
        Branch z = x;
        z.insert(z.end(), y.begin(), y.end());
        out.push_back(std::move(z));
      }
    }
    return out;
  }
};

}  // namespace

std::vector<Branch> to_dnf(const FormulaPtr& formula, std::size_t cap) {
  DnfBuilder b(cap);
  return b.build(formula, true);
}

// ---------------------------------------------------------------------------
// Equivalence rewriting
// ---------------------------------------------------------------------------

namespace {

const Term::Binary* as_binary(const TermPtr& t, BinOp op) {
  const auto* b = std::get_if<Term::Binary>(&t->node);
  return b && b->op == op ? b : nullptr;
}

SignedAtom pos_atom(Atom a) { return {std::move(a), true}; }
SignedAtom neg_atom(Atom a) { return {std::move(a), false}; }

/// Alternatives (each a conjunction) replacing one literal, or nullopt when
/// the literal is already in rewritten form.
std::optional<std::vector<Branch>> rewrite_one(const SignedAtom& lit) {
  if (const auto* n = std::get_if<NumAtom>(&lit.atom)) {
    if (lit.positive && n->rel == NumRel::Eq) {
      // t1 = t2 - t3  ==>  t2 = t1 + t3 (either side)
      if (const auto* s = as_binary(n->rhs, BinOp::Sub)) {
        return std::vector<Branch>{{pos_atom(NumAtom{NumRel::Eq, s->lhs, binary(BinOp::Add, n->lhs, s->rhs)})}};
      }
      if (const auto* s = as_binary(n->lhs, BinOp::Sub)) {
        return std::vector<Branch>{{pos_atom(NumAtom{NumRel::Eq, s->lhs, binary(BinOp::Add, n->rhs, s->rhs)})}};
      }
      // t1 = t2 / t3  ==>  t3 != 0  &  t2 = t1 * t3
      if (const auto* d = as_binary(n->rhs, BinOp::Div)) {
        return std::vector<Branch>{{neg_atom(NumAtom{NumRel::Eq, d->rhs, constant(0)}),
                                    pos_atom(NumAtom{NumRel::Eq, d->lhs, binary(BinOp::Mul, n->lhs, d->rhs)})}};
      }
      if (const auto* d = as_binary(n->lhs, BinOp::Div)) {
        return std::vector<Branch>{{neg_atom(NumAtom{NumRel::Eq, d->rhs, constant(0)}),
                                    pos_atom(NumAtom{NumRel::Eq, d->lhs, binary(BinOp::Mul, n->rhs, d->rhs)})}};
      }
      return std::nullopt;
    }
    if (!lit.positive && n->rel == NumRel::Eq) {
      // t1 != t2  ==>  t2 > t1  |  t1 > t2
      return std::vector<Branch>{{pos_atom(NumAtom{NumRel::Gt, n->rhs, n->lhs})},
                                 {pos_atom(NumAtom{NumRel::Gt, n->lhs, n->rhs})}};
    }
    if (!lit.positive && n->rel == NumRel::Gt) {
      // !(t1 > t2)  ==>  t1 = t2  |  t2 > t1
      return std::vector<Branch>{{pos_atom(NumAtom{NumRel::Eq, n->lhs, n->rhs})},
                                 {pos_atom(NumAtom{NumRel::Gt, n->rhs, n->lhs})}};
    }
    return std::nullopt;
  }
  if (const auto* s = std::get_if<ShapeAtom>(&lit.atom)) {
    if (s->kind == ShapeKind::Up || s->kind == ShapeKind::Down) {
      DerRel rel = s->kind == ShapeKind::Up ? DerRel::Ge : DerRel::Le;
      return std::vector<Branch>{{SignedAtom{DerAtom{s->f, rel, constant(0), s->lo, s->hi}, lit.positive}}};
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<Branch> rewrite_equivalences(const Branch& branch, std::size_t cap) {
  std::vector<Branch> done;
  std::vector<Branch> work{branch};
  while (!work.empty()) {
    Branch b = std::move(work.back());
    work.pop_back();
    bool changed = false;
    for (std::size_t i = 0; i < b.size(); ++i) {
      auto alts = rewrite_one(b[i]);
      if (!alts) continue;
      // Push in reverse so that alternatives come out in their listed order.
      for (auto it = alts->rbegin(); it != alts->rend(); ++it) {
        Branch nb(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(i));
        nb.insert(nb.end(), it->begin(), it->end());
        nb.insert(nb.end(), b.begin() + static_cast<std::ptrdiff_t>(i) + 1, b.end());
        work.push_back(std::move(nb));
      }
      changed = true;
      break;
    }
    if (!changed) {
      done.push_back(std::move(b));
      if (done.size() + work.size() > cap) {
        throw BranchExplosion("equivalence rewriting exceeds " + std::to_string(cap) + " branches");
      }
    }
  }
  return done;
}

// ---------------------------------------------------------------------------
// Flattening
// ---------------------------------------------------------------------------

namespace {

class Flattener {
 public:
  explicit Flattener(std::size_t fresh) : names_(fresh) {}

  std::vector<Literal> literals;
  Branch side;  // constraints that must re-enter DNF (division guards)

  std::size_t fresh() const { return names_.next(); }

  std::string flat(const TermPtr& t) {
    if (t->is_var()) return t->var_name();
    if (const auto* c = std::get_if<Term::Const>(&t->node)) {
      auto key = to_string(c->value);
      if (auto it = consts_.find(key); it != consts_.end()) return it->second;
      std::string u = names_.make();
      literals.push_back(Literal::constant(u, c->value));
      consts_.emplace(key, u);
      return u;
    }
    std::string u = names_.make();
    define(u, t);
    return u;
  }

  /// Emits literals asserting x = t.
  void define(const std::string& x, const TermPtr& t) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Term::Var>) {
            literals.push_back(Literal::eq(x, n.name));
          } else if constexpr (std::is_same_v<T, Term::Const>) {
            literals.push_back(Literal::constant(x, n.value));
          } else if constexpr (std::is_same_v<T, Term::Binary>) {
            std::string a = flat(n.lhs);
            std::string b = flat(n.rhs);
            switch (n.op) {
              case BinOp::Add: literals.push_back(Literal::sum(x, a, b)); break;
              case BinOp::Sub: literals.push_back(Literal::sum(a, x, b)); break;
              case BinOp::Mul: literals.push_back(Literal::prod(x, a, b)); break;
              case BinOp::Div:
                literals.push_back(Literal::prod(a, x, b));
                side.push_back(neg_atom(NumAtom{NumRel::Eq, var(b), constant(0)}));
                break;
            }
          } else if constexpr (std::is_same_v<T, Term::Apply>) {
            literals.push_back(Literal::app(x, n.f.name, flat(n.arg)));
          } else {
            literals.push_back(Literal::dapp(x, n.f.name, flat(n.arg)));
          }
        },
        t->node);
  }

  Bound bound(const Endpoint& e) {
    switch (e.kind) {
      case Endpoint::Kind::NegInf: return Bound::neg_inf();
      case Endpoint::Kind::PosInf: return Bound::pos_inf();
      case Endpoint::Kind::Finite: break;
    }
    return Bound::of(flat(e.term));
  }

  void add(const SignedAtom& lit) {
    std::visit(
        [&](const auto& a) {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, NumAtom>) {
            if (!lit.positive) throw Error("to_snf: negated arithmetic atom survived rewriting");
            if (a.rel == NumRel::Eq) {
              if (a.lhs->is_var()) {
                define(a.lhs->var_name(), a.rhs);
              } else if (a.rhs->is_var()) {
                define(a.rhs->var_name(), a.lhs);
              } else {
                define(flat(a.lhs), a.rhs);
              }
            } else {
              const auto* c = std::get_if<Term::Const>(&a.rhs->node);
              if (c && c->value == 0) {
                literals.push_back(Literal::pos(flat(a.lhs)));
              } else {
                // t1 > t2  ==>  t1 = t2 + v  &  v > 0
                std::string lhs = flat(a.lhs);
                std::string rhs = flat(a.rhs);
                std::string v = names_.make();
                literals.push_back(Literal::sum(lhs, rhs, v));
                literals.push_back(Literal::pos(v));
              }
            }
          } else if constexpr (std::is_same_v<T, FunEqAtom>) {
            literals.push_back(Literal::fun_eq(a.f.name, a.g.name, bound(a.lo), bound(a.hi), !lit.positive));
          } else if constexpr (std::is_same_v<T, FunGtAtom>) {
            literals.push_back(Literal::fun_gt(a.f.name, a.g.name, bound(a.lo), bound(a.hi), !lit.positive));
          } else if constexpr (std::is_same_v<T, DerAtom>) {
            std::string y = flat(a.bound);
            literals.push_back(Literal::der(a.f.name, a.rel, y, bound(a.lo), bound(a.hi), !lit.positive));
          } else {
            literals.push_back(Literal::shape_of(a.kind, a.f.name, bound(a.lo), bound(a.hi), !lit.positive));
          }
        },
        lit.atom);
  }

 private:
  FreshNames names_;
  std::map<std::string, std::string> consts_;
};

}  // namespace

std::vector<Conjunct> to_snf(const Branch& branch, NormalizeOptions options) {
  Flattener fl(options.fresh_start);
  for (const auto& lit : branch) fl.add(lit);
  Conjunct base(std::move(fl.literals), fl.fresh());
  if (fl.side.empty()) return {base};

  std::vector<Conjunct> out;
  for (const auto& alt : rewrite_equivalences(fl.side, options.branch_cap)) {
    NormalizeOptions sub = options;
    sub.fresh_start = base.fresh_counter();
    for (auto& c : to_snf(alt, sub)) {
      Conjunct merged = base;
      merged.add_all(c);
      out.push_back(std::move(merged));
      if (out.size() > options.branch_cap) {
        throw BranchExplosion("standard normal form exceeds " + std::to_string(options.branch_cap) +
                              " branches");
      }
    }
  }
  return out;
}

namespace {

std::vector<Conjunct> normalize_branches(const std::vector<Branch>& branches, NormalizeOptions options) {
  std::vector<Conjunct> out;
  for (const auto& b : branches) {
    for (const auto& r : rewrite_equivalences(b, options.branch_cap)) {
      for (auto& c : to_snf(r, options)) {
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
        if (out.size() > options.branch_cap) {
          throw BranchExplosion("normalization exceeds " + std::to_string(options.branch_cap) + " branches");
        }
      }
    }
  }
  return out;
}

// Past every fresh-looking name already present, so printed normal forms
// can be normalized again without capture.
std::size_t fresh_floor(const FormulaPtr& formula) {
  std::size_t floor = 0;
  auto scan = [&](const std::vector<std::string>& names) {
    for (const auto& n : names) {
      if (n.empty() || n.front() != kFreshPrefix) continue;
      std::size_t i = n.size();
      while (i > 1 && std::isdigit(static_cast<unsigned char>(n[i - 1]))) --i;
      if (i == n.size() || n.size() - i > 9) continue;
      floor = std::max(floor, static_cast<std::size_t>(std::stoul(n.substr(i))) + 1);
    }
  };
  scan(numeric_vars(formula));
  scan(function_vars(formula));
  return floor;
}

}  // namespace

std::vector<Conjunct> normalize(const FormulaPtr& formula, NormalizeOptions options) {
  options.fresh_start = std::max(options.fresh_start, fresh_floor(formula));
  return normalize_branches(to_dnf(formula, options.branch_cap), options);
}

std::vector<Conjunct> normalize(const Conjunct& conjunct, std::size_t branch_cap) {
  Branch b;
  for (const auto& l : conjunct.literals()) {
    FormulaPtr f = to_formula(l);
    bool positive = true;
    if (const auto* n = std::get_if<Formula::Not>(&f->node)) {
      positive = false;
      f = n->sub;
    }
    b.push_back({std::get<Formula::AtomNode>(f->node).atom, positive});
  }
  NormalizeOptions options;
  options.branch_cap = branch_cap;
  options.fresh_start = conjunct.fresh_counter();
  return normalize_branches({b}, options);
}

FormulaPtr to_formula(const Branch& branch) {
  if (branch.empty()) return atom(NumAtom{NumRel::Eq, constant(0), constant(0)});
  std::vector<FormulaPtr> parts;
  for (const auto& l : branch) {
    auto a = atom(l.atom);
    parts.push_back(l.positive ? a : negation(a));
  }
  return conj_all(parts);
}

FormulaPtr to_formula(const std::vector<Branch>& branches) {
  if (branches.empty()) return atom(NumAtom{NumRel::Gt, constant(0), constant(0)});
  FormulaPtr out = to_formula(branches.front());
  for (std::size_t i = 1; i < branches.size(); ++i) out = disj(out, to_formula(branches[i]));
  return out;
}

}  // namespace rdf

#pragma once

#include <map>
#include <string>
#include <vector>

#include "rdf/ast.hpp"

namespace rdf {

/// Interval bound of a flat literal: a variable or an infinity.
struct Bound {
  Endpoint::Kind kind = Endpoint::Kind::Finite;
  std::string var;

  static Bound of(std::string v) { return {Endpoint::Kind::Finite, std::move(v)}; }
  static Bound neg_inf() { return {Endpoint::Kind::NegInf, {}}; }
  static Bound pos_inf() { return {Endpoint::Kind::PosInf, {}}; }
  bool is_var() const { return kind == Endpoint::Kind::Finite; }

  friend bool operator==(const Bound&, const Bound&) = default;
  friend auto operator<=>(const Bound&, const Bound&) = default;
};

enum class LitKind {
  Sum,     // x = y + w
  Prod,    // x = y * w
  Pos,     // x > 0
  Const,   // x = c
  Eq,      // x = y
  Neq,     // x != y
  App,     // x = f(y)
  DApp,    // x = D[f](y)
  FunEq,   // (f = g)[lo, hi]
  FunGt,   // (f > g)[lo, hi]
  DerRel,  // (D[f] rel x)[lo, hi]
  Shape,   // Kind(f)[lo, hi]
};

/// Flat literal of the standard normal form. Only the fields relevant to the
/// kind are meaningful; the rest stay default so that ordering and equality
/// are plain member-wise comparisons.
struct Literal {
  LitKind kind = LitKind::Pos;
  bool negated = false;
  std::string x, y, w;
  std::string f, g;
  DerRel rel = DerRel::Eq;
  ShapeKind shape = ShapeKind::Up;
  Rational c;
  Bound lo, hi;

  static Literal sum(std::string x, std::string y, std::string w);
  static Literal prod(std::string x, std::string y, std::string w);
  static Literal pos(std::string x);
  static Literal constant(std::string x, Rational c);
  static Literal eq(std::string x, std::string y);
  static Literal neq(std::string x, std::string y);
  static Literal app(std::string x, std::string f, std::string arg);
  static Literal dapp(std::string x, std::string f, std::string arg);
  static Literal fun_eq(std::string f, std::string g, Bound lo, Bound hi, bool negated = false);
  static Literal fun_gt(std::string f, std::string g, Bound lo, Bound hi, bool negated = false);
  static Literal der(std::string f, DerRel rel, std::string bound, Bound lo, Bound hi,
                     bool negated = false);
  static Literal shape_of(ShapeKind kind, std::string f, Bound lo, Bound hi, bool negated = false);

  bool is_functional() const {
    return kind == LitKind::FunEq || kind == LitKind::FunGt || kind == LitKind::DerRel ||
           kind == LitKind::Shape;
  }
  bool has_interval() const { return is_functional(); }

  friend bool operator==(const Literal& a, const Literal& b);
  friend bool operator<(const Literal& a, const Literal& b);
};

std::string to_string(const Literal& lit);

/// Converts a literal back to a primitive atom (possibly under a negation).
FormulaPtr to_formula(const Literal& lit);

/// Generator of names in the reserved namespace, e.g. "$n7".
class FreshNames {
 public:
  explicit FreshNames(std::size_t next = 0) : next_(next) {}
  std::string make(const std::string& stem = "n") { return std::string(1, kFreshPrefix) + stem + std::to_string(next_++); }
  std::size_t next() const { return next_; }

 private:
  std::size_t next_;
};

/// A conjunction of flat literals (set semantics: sorted, duplicate-free).
class Conjunct {
 public:
  Conjunct() = default;
  explicit Conjunct(std::vector<Literal> literals, std::size_t fresh = 0);

  const std::vector<Literal>& literals() const { return literals_; }
  std::size_t fresh_counter() const { return fresh_; }
  void set_fresh_counter(std::size_t n) { fresh_ = n; }
  bool empty() const { return literals_.empty(); }
  std::size_t size() const { return literals_.size(); }

  void add(Literal lit);
  void add_all(const Conjunct& other);
  FreshNames names() const { return FreshNames(fresh_); }

  /// Variables used as function arguments or interval endpoints, in literal order.
  std::vector<std::string> domain_vars() const;
  std::vector<std::string> numeric_vars() const;
  std::vector<std::string> function_vars() const;

  /// Renames numeric variables according to `subst` (missing names unchanged).
  Conjunct substitute(const std::map<std::string, std::string>& subst) const;

  FormulaPtr to_formula() const;

  friend bool operator==(const Conjunct& a, const Conjunct& b) { return a.literals_ == b.literals_; }

 private:
  std::vector<Literal> literals_;
  std::size_t fresh_ = 0;
};

std::string to_string(const Conjunct& c);

/// Mechanical check of the standard-normal-form literal inventory: flat
/// arguments, no `!=`, bounds respecting the endpoint restriction, and
/// negations only on functional literals.
bool is_snf(const Conjunct& c, std::string* why = nullptr);

}  // namespace rdf

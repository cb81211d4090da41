#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rdf/rational.hpp"

namespace rdf {

/// Product of variables with positive exponents, sorted by name.
using Monomial = std::vector<std::pair<std::string, unsigned>>;

/// Multivariate polynomial with exact rational coefficients. Zero
/// coefficients are never stored.
class Polynomial {
 public:
  Polynomial() = default;
  static Polynomial constant(const Rational& c);
  static Polynomial variable(const std::string& name);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (0 when absent).
  Rational constant_term() const;
  unsigned total_degree() const;
  /// Highest exponent of `v` over all monomials.
  unsigned degree_in(const std::string& v) const;
  std::set<std::string> variables() const;

  /// Evaluates with every variable taken from `values`; throws
  /// UnassignedSymbol on a missing variable.
  Rational evaluate(const std::map<std::string, Rational>& values) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  Polynomial operator-() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;
  friend bool operator<(const Polynomial& a, const Polynomial& b) { return a.terms_ < b.terms_; }

 private:
  std::map<Monomial, Rational> terms_;

  void add_term(const Monomial& m, const Rational& c);
};

std::string to_string(const Polynomial& p);

}  // namespace rdf

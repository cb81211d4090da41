#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "rdf/polynomial.hpp"

namespace rdf {

/// p rel 0
enum class PolyRel { Eq, Lt, Le };

struct TNode;
using TNodePtr = std::shared_ptr<const TNode>;

/// Boolean combination of polynomial sign conditions.
struct TNode {
  enum class Kind { Atom, And, Or, Not, Implies };
  Kind kind = Kind::Atom;
  Polynomial poly;
  PolyRel rel = PolyRel::Eq;
  std::vector<TNodePtr> kids;
};

namespace tarski {

TNodePtr atom(Polynomial p, PolyRel rel);
TNodePtr eq(const Polynomial& a, const Polynomial& b);
TNodePtr lt(const Polynomial& a, const Polynomial& b);
TNodePtr le(const Polynomial& a, const Polynomial& b);
TNodePtr gt(const Polynomial& a, const Polynomial& b);
TNodePtr ge(const Polynomial& a, const Polynomial& b);
TNodePtr all(std::vector<TNodePtr> kids);
TNodePtr any(std::vector<TNodePtr> kids);
TNodePtr negate(TNodePtr sub);
TNodePtr implies(TNodePtr premise, TNodePtr conclusion);

}  // namespace tarski

/// Existentially closed conjunction of Tarski constraints. An empty formula
/// is trivially true.
class TarskiFormula {
 public:
  /// Appends a top-level conjunct; exact structural duplicates are dropped.
  void add(TNodePtr node);
  const std::vector<TNodePtr>& conjuncts() const { return conjuncts_; }
  bool empty() const { return conjuncts_.empty(); }
  std::set<std::string> variables() const;

 private:
  std::vector<TNodePtr> conjuncts_;
  std::set<std::string> keys_;
};

std::string to_string(const TNodePtr& node);
std::string to_string(const TarskiFormula& formula);

/// Exact evaluation. Throws UnassignedSymbol when a variable is missing.
bool evaluate_exact(const TNodePtr& node, const std::map<std::string, Rational>& assignment);
bool evaluate_exact(const TarskiFormula& formula, const std::map<std::string, Rational>& assignment);

std::set<std::string> variables(const TNodePtr& node);

}  // namespace rdf

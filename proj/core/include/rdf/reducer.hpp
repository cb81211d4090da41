#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rdf/arranger.hpp"
#include "rdf/literal.hpp"
#include "rdf/normalizer.hpp"
#include "rdf/tarski.hpp"

namespace rdf {

/// Chain, sample variables and tail variables of one ordered conjunct.
struct ReductionContext {
  std::vector<std::string> chain;      // v_1 < ... < v_r
  std::vector<std::string> functions;  // sorted
  std::map<std::string, std::vector<std::string>> y;  // f -> y_1^f .. y_r^f
  std::map<std::string, std::vector<std::string>> t;  // f -> t_1^f .. t_r^f
  std::map<std::string, std::string> gamma_left;      // f -> gamma_0^f
  std::map<std::string, std::string> gamma_right;     // f -> gamma_r^f

  std::size_t size() const { return chain.size(); }
  /// 0-based position of a chain variable; throws MissingChain otherwise.
  std::size_t position(const std::string& v) const;
  /// Index of a bound, 0-based: -inf -> 0, +inf -> r-1.
  std::size_t ind(const Bound& b) const;
};

/// Builds the context for an ordered conjunct: one y/t pair per function and
/// chain position, plus both tail variables per function.
ReductionContext make_context(const OrderedConjunct& ordered);

/// Chain positions covered by a functional literal.
struct Coverage {
  std::size_t first = 0;
  std::size_t last = 0;
  bool left_tail = false;   // lower bound is -inf
  bool right_tail = false;  // upper bound is +inf
  /// No point of the interval lies in the domain (vacuous by the semantics
  /// of the literal kind).
  bool vacuous = false;
  /// Interval is a single chain point without tails.
  bool single_point() const { return !left_tail && !right_tail && first == last; }
};

Coverage coverage(const Literal& lit, const ReductionContext& ctx);

/// Replaces every negated functional literal by its existential gadget and
/// renormalizes; the result has no negated functional literal.
std::vector<Conjunct> step1_remove_negatives(const Conjunct& conjunct,
                                             std::size_t branch_cap = kDefaultBranchCap);

/// Adds y_j^f = f(v_j), t_j^f = D[f](v_j) and links existing applications to
/// the sample variables.
Conjunct step2_explicit_eval(const Conjunct& conjunct, const ReductionContext& ctx);

/// Emits the polynomial constraint families for each functional literal and
/// transcribes the arithmetic literals. Throws MissingChain when the chain
/// literals are absent or a literal refers to a variable off the chain.
TarskiFormula step3_remove_functionals(const Conjunct& conjunct, const ReductionContext& ctx);

/// One (step-1 branch, arrangement) pair carried through steps 2 and 3.
struct Reduction {
  std::size_t branch = 0;         // index among step-1 outputs
  Conjunct positive;              // step-1 output
  OrderedConjunct ordered;        // after the arrangement
  Conjunct evaluated;             // after step 2
  ReductionContext context;
  TarskiFormula formula;
};

struct ReduceOptions {
  std::size_t branch_cap = kDefaultBranchCap;
  /// Bound on the number of consistent arrangements per step-1 branch.
  std::size_t arrangement_limit = 47293;  // fubini(7)
};

/// Step 1, arrangement, steps 2 and 3. Branches whose order facts are
/// contradictory produce no reduction (they are unsatisfiable).
std::vector<Reduction> reduce(const Conjunct& conjunct, const ReduceOptions& options = {});

/// Reduces one ordered conjunct that is already free of negated functional
/// literals.
Reduction reduce_ordered(const OrderedConjunct& ordered);

}  // namespace rdf

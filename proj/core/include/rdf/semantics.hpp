#pragma once

#include <map>
#include <optional>
#include <string>

#include "rdf/ast.hpp"
#include "rdf/piecewise.hpp"

namespace rdf {

/// Numeric values are exact; functions are floating-point piecewise models.
/// The constants @0 and @1 need no entry.
struct ExplicitModel {
  std::map<std::string, Rational> numeric;
  std::map<std::string, PiecewiseModel> functional;
};

enum class Truth { True, False, Borderline };

const char* to_string(Truth t);

struct Verdict {
  Truth truth = Truth::True;
  /// Signed slack of the check (positive when satisfied); +inf for vacuous
  /// or structurally exact verdicts.
  double margin = 0.0;
};

struct EvalOptions {
  double tolerance = 1e-6;
  /// Sample points per bounded interval for sampled checks.
  std::size_t samples = 10000;
};

/// Atom semantics, including the vacuity conventions: equality, comparison
/// and derivative atoms hold when s1 > s2, shape atoms when s1 >= s2.
/// Throws UnassignedSymbol for missing variables or functions.
Verdict check_atom(const Atom& atom, const ExplicitModel& model, const EvalOptions& options = {});

/// Kleene three-valued combination of atom verdicts.
Truth evaluate(const FormulaPtr& formula, const ExplicitModel& model, const EvalOptions& options = {});

/// Value of a numeric term; nullopt when a division by zero occurs.
/// Function-free terms are evaluated exactly.
std::optional<double> evaluate_term(const TermPtr& term, const ExplicitModel& model);

}  // namespace rdf

#pragma once

#include <map>
#include <string>
#include <vector>

#include "rdf/ast.hpp"
#include "rdf/normalizer.hpp"
#include "rdf/piecewise.hpp"
#include "rdf/semantics.hpp"
#include "support/generators.hpp"

namespace rdf::support {

/// Every weak order of n labelled elements as a rank vector (rank[i] is the
/// block of element i, blocks 0..k-1 all used), found by exhaustive search
/// over all n^n rank maps.
std::vector<std::vector<int>> brute_force_weak_orders(int n);

/// Distinct atoms of a formula keyed by their printed form.
std::vector<std::string> atom_keys(const FormulaPtr& formula);

/// Propositional value of a formula when each atom (by printed form) has
/// the given truth value.
bool eval_propositional(const FormulaPtr& formula, const std::map<std::string, bool>& value);

/// Propositional value of a DNF.
bool eval_dnf(const std::vector<Branch>& dnf, const std::map<std::string, bool>& value);

/// Compares formula and DNF on every assignment of the formula's atoms.
/// Returns the number of disagreeing rows.
std::size_t truth_table_disagreements(const FormulaPtr& formula, const std::vector<Branch>& dnf);

/// Exchange text declares only nullary Real symbols and divides numerals
/// only. Returns an explanation of the first offence, empty when clean.
std::string exchange_offence(const std::string& smt);

/// True when the default external solver can be executed.
bool solver_available();

/// Independent check of a fitted bounded piece: end values and slopes within
/// 1e-9, then derivative monotonicity, sign and bounds at `samples` uniform
/// points within `tol`. Returns the first failure, empty when all pass.
std::string check_fitted_segment(const Piece& piece, const SegmentCase& data, std::size_t samples = 10000,
                                 double tol = 1e-6);

/// Twenty atoms over empty intervals (s1 > s2, and s1 = s2 for shapes),
/// each false on the reversed non-empty interval under vacuity_model().
struct VacuityCase {
  std::string vacuous;   // must evaluate true
  std::string reversed;  // same atom over [a, b], must evaluate false
};
std::vector<VacuityCase> vacuity_table();
ExplicitModel vacuity_model();

/// Central finite differences.
double fd_first(const PiecewiseModel& f, double x, double h = 1e-5);
double fd_second(const PiecewiseModel& f, double x, double h = 1e-4);

}  // namespace rdf::support

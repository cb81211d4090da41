#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rdf/ast.hpp"
#include "rdf/literal.hpp"
#include "rdf/witness.hpp"

namespace rdf::support {

using Rng = std::mt19937_64;

/// Atom drawn from a small pool: numeric comparisons and functional atoms
/// over a, b, c and f, g.
Atom random_atom(Rng& rng);

/// Propositional combination of at most `max_atoms` atoms (&, |, !).
FormulaPtr random_formula(Rng& rng, std::size_t max_atoms);

struct ConjunctShape {
  std::size_t functions = 3;       // at most
  std::size_t domain_vars = 4;     // at most
  std::size_t functional_atoms = 10;  // at most
  double negation_rate = 0.15;
};

/// Random SNF conjunct: order facts and constants over domain variables,
/// functional literals (some negated), applications and derivative bounds.
Conjunct random_snf_conjunct(Rng& rng, const ConjunctShape& shape = {});

/// Boundary data and requirements for one bounded segment.
struct SegmentCase {
  double v_lo = 0, v_hi = 1, y_lo = 0, y_hi = 0, t_lo = 0, t_hi = 0;
  ShapeRequirements req;
  std::string variant;
};

inline constexpr std::size_t kSegmentVariants = 12;
inline constexpr std::size_t kInfeasibleVariants = 10;

/// Data consistent with the requirements of variant `k % kSegmentVariants`.
SegmentCase feasible_segment(Rng& rng, std::size_t k);

/// Data contradicting the requirements of variant `k % kInfeasibleVariants`
/// by a clear margin.
SegmentCase infeasible_segment(Rng& rng, std::size_t k);

/// Random rational p/q with |p| <= num, 1 <= q <= den.
Rational random_rational(Rng& rng, int num, int den);

}  // namespace rdf::support

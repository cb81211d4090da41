#pragma once

#include <cstddef>
#include <vector>

#include "rdf/ast.hpp"
#include "rdf/literal.hpp"

namespace rdf {

/// A possibly negated primitive atom.
struct SignedAtom {
  Atom atom;
  bool positive = true;
};

/// Conjunction of signed atoms; one disjunct of a DNF.
using Branch = std::vector<SignedAtom>;

inline constexpr std::size_t kDefaultBranchCap = 10000;

struct NormalizeOptions {
  std::size_t branch_cap = kDefaultBranchCap;
  /// First index handed to the fresh-name generator.
  std::size_t fresh_start = 0;
};

/// Propositional DNF over opaque atoms. Throws BranchExplosion past `cap`.
std::vector<Branch> to_dnf(const FormulaPtr& formula, std::size_t cap = kDefaultBranchCap);

/// Applies the arithmetic and monotonicity equivalences to fixpoint;
/// disjunctive right-hand sides fan out into separate branches.
std::vector<Branch> rewrite_equivalences(const Branch& branch, std::size_t cap = kDefaultBranchCap);

/// Flattens a rewritten branch into standard-normal-form conjuncts.
std::vector<Conjunct> to_snf(const Branch& branch, NormalizeOptions options = {});

/// Full pipeline: to_dnf, rewrite_equivalences, to_snf.
std::vector<Conjunct> normalize(const FormulaPtr& formula, NormalizeOptions options = {});

/// Runs the pipeline on a conjunct (used after step-1 gadgets and for the
/// fixpoint property); fresh names continue from the conjunct's counter.
std::vector<Conjunct> normalize(const Conjunct& conjunct, std::size_t branch_cap = kDefaultBranchCap);

FormulaPtr to_formula(const Branch& branch);
FormulaPtr to_formula(const std::vector<Branch>& branches);

}  // namespace rdf

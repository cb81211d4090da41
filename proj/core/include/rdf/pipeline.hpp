#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rdf/backend.hpp"
#include "rdf/reducer.hpp"
#include "rdf/witness.hpp"

namespace rdf {

struct PipelineConfig {
  /// Run the external solver; when false only the internal search is used
  /// and unsat is never reported for reductions that reach the solver.
  bool use_solver = true;
  /// Command template, see ExternalConfig. Empty means the default.
  std::string solver_command;
  double timeout_seconds = 30.0;
  /// Where scripts and transcripts go; a temporary directory when empty.
  std::string output_dir;
  std::size_t branch_cap = kDefaultBranchCap;
  std::size_t arrangement_limit = 47293;
  std::size_t jobs = 1;
  SearchBudget search;
  EvalOptions eval;
  BuildOptions build;
};

/// Parse-independent front half: desugared, normalized conjuncts.
std::vector<Conjunct> prepare(const FormulaPtr& formula, const PipelineConfig& config = {});

/// Outcome of one (conjunct, branch, arrangement) task.
struct TaskOutcome {
  std::size_t conjunct = 0;
  std::size_t branch = 0;
  std::string arrangement;
  SolveResult external;
  std::optional<SolveResult> search;
  SolveStatus status = SolveStatus::Unknown;
  std::optional<CertStatus> certification;
  std::vector<std::string> diagnostics;
};

struct Decision {
  SolveStatus status = SolveStatus::Unknown;
  /// Set for sat: a model certified against the input formula.
  std::optional<ExplicitModel> model;
  CertificationReport report;
  std::vector<TaskOutcome> tasks;
  std::size_t conjuncts = 0;
  /// The configured solver could not be executed.
  bool solver_missing = false;
  /// A solver ran but its output could not be interpreted.
  bool protocol_error = false;
  std::vector<std::string> diagnostics;
};

/// Full decision: normalize, reduce, solve every task (first certified sat
/// wins), build and certify a model. Sat is reported only with a model whose
/// evaluation of `formula` is true; unsat only when every task is refuted.
Decision decide(const FormulaPtr& formula, const PipelineConfig& config = {});

/// Checks a model against the input formula. Variables and functions the
/// model leaves open (they occur only in other disjuncts) default to 0.
Truth check_formula(const FormulaPtr& formula, ExplicitModel& model, const EvalOptions& options = {});

}  // namespace rdf

#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rdf/tarski.hpp"

namespace rdf {

enum class SolveStatus { Sat, Unsat, Unknown };

const char* to_string(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::Unknown;
  std::optional<std::map<std::string, Rational>> witness;
  /// Witness passed evaluate_exact.
  bool validated = false;
  std::string solver;
  double seconds = 0.0;
  /// Path of the persisted transcript, when one was written.
  std::string transcript;
  std::vector<std::string> diagnostics;
};

// ---------------------------------------------------------------------------
// Exchange format
// ---------------------------------------------------------------------------

/// SMT-LIB 2 script (QF_NRA) asserting the formula, followed by check-sat,
/// get-model and exit. Byte-stable for equal inputs.
std::string emit_exchange(const TarskiFormula& formula);

/// SMT-LIB rendering of a single rational ("(/ 1.0 3.0)", "(- 2.0)").
std::string smt_rational(const Rational& q);
std::string smt_term(const Polynomial& p);
std::string smt_formula(const TNodePtr& node);

/// Parsed solver output: the verdict line and any model values that could be
/// read as exact rationals. Values the parser cannot represent (algebraic
/// numbers) are listed in `unreadable`.
struct SolverOutput {
  SolveStatus status = SolveStatus::Unknown;
  std::map<std::string, Rational> model;
  std::vector<std::string> unreadable;
};

/// Throws SolverError(ProtocolError) when no verdict line is present.
SolverOutput parse_solver_output(const std::string& text);

// ---------------------------------------------------------------------------
// External solver
// ---------------------------------------------------------------------------

struct ExternalConfig {
  /// Shell command template; "{file}" is replaced by the script path. An
  /// empty template means "z3 {file}" with the solver binary taken from the
  /// RDF_SOLVER environment variable, else "z3" on PATH.
  std::string command;
  double timeout_seconds = 30.0;
  /// Where scripts and transcripts are written; a temporary directory when
  /// empty.
  std::string output_dir;
  /// File stem for the script and transcript.
  std::string stem = "query";
};

/// Default command template honouring RDF_SOLVER.
std::string default_solver_command();

/// Runs the solver. A timeout yields Unknown with a "SolverTimeout"
/// diagnostic. Throws SolverError(SolverNotFound) when the command cannot be
/// executed and SolverError(ProtocolError) on unparseable output.
SolveResult solve_external(const TarskiFormula& formula, const ExternalConfig& config);

// ---------------------------------------------------------------------------
// Internal search
// ---------------------------------------------------------------------------

struct SearchBudget {
  /// Largest denominator / numerator magnitude of pool values.
  std::int64_t max_denominator = 16;
  std::int64_t max_numerator = 64;
  /// Hill-climbing steps per deepening level.
  std::size_t steps = 4000;
  std::uint64_t seed = 0x5eed;
};

/// Sound for sat: returns Sat with a validated witness or Unknown. Never
/// returns Unsat.
SolveResult search_internal(const TarskiFormula& formula, const SearchBudget& budget = {});

}  // namespace rdf

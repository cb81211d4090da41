#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "rdf/literal.hpp"
#include "rdf/piecewise.hpp"
#include "rdf/reducer.hpp"
#include "rdf/semantics.hpp"

namespace rdf {

/// Derivative bound f' rel value.
struct DerivativeBound {
  double value = 0.0;
  bool lower = true;  // f' >= value (or > when strict)
  bool strict = false;
};

/// Everything a piece must satisfy besides its boundary data.
struct ShapeRequirements {
  bool convex = false, strict_convex = false;
  bool concave = false, strict_concave = false;
  bool strict_up = false, strict_down = false;
  std::vector<DerivativeBound> bounds;
  /// Largest allowed |f - chord| on a bounded segment.
  double envelope = std::numeric_limits<double>::infinity();

  void merge(const ShapeRequirements& other);
  bool empty() const;
};

std::string to_string(const ShapeRequirements& req);

/// Bounded piece through (v_lo, y_lo) and (v_hi, y_hi) with end slopes t_lo,
/// t_hi. Throws InfeasibleSegment when the data contradict the requirements
/// or no boundary-layer width satisfies them.
Piece fit_segment(double v_lo, double v_hi, double y_lo, double y_hi, double t_lo, double t_hi,
                  const ShapeRequirements& req);

enum class Side { Left, Right };

/// Exponential tail with f(v) = y, f'(v) = t and f' -> gamma at the infinite
/// end. Throws InfeasibleTail when gamma contradicts the requirements.
Piece fit_tail(Side side, double v, double y, double t, double gamma, const ShapeRequirements& req);

/// Analytic requirement check of a fitted bounded piece (used by the fitter
/// and the tests). Returns an empty string when every requirement holds.
std::string segment_violation(const Piece& piece, double y_lo, double y_hi, const ShapeRequirements& req);

struct BuildOptions {
  std::size_t envelope_retries = 20;
  std::size_t samples = 10000;
  double tolerance = 1e-6;
};

/// Explicit model from a reduction and a witness of its Tarski formula.
/// Numeric values are copied unchanged; variables merged by the arrangement
/// take their representative's value. Throws ModelConstructionFailure.
ExplicitModel build_model(const Reduction& reduction, const std::map<std::string, Rational>& witness,
                          const BuildOptions& options = {});

enum class CertStatus { Certified, Borderline, Failed };

const char* to_string(CertStatus s);

struct LiteralVerdict {
  std::string literal;
  Truth truth = Truth::True;
  double margin = 0.0;
};

struct CertificationReport {
  CertStatus status = CertStatus::Certified;
  std::vector<LiteralVerdict> literals;
  double min_margin = std::numeric_limits<double>::infinity();
  /// Name of the first false literal, if any.
  std::string violated;
};

/// Checks every literal of the conjunct against the model.
CertificationReport certify(const Conjunct& conjunct, const ExplicitModel& model, const EvalOptions& options = {});

/// Combines two reports (status is the worse one).
CertificationReport combine(CertificationReport a, const CertificationReport& b);

// ---------------------------------------------------------------------------
// Witness document
// ---------------------------------------------------------------------------

inline constexpr const char* kWitnessSchema = "rdf-witness/1";

/// JSON text; numeric values are exact rationals written as strings.
std::string witness_to_json(const ExplicitModel& model, const CertificationReport* report = nullptr);
ExplicitModel witness_from_json(const std::string& text);

}  // namespace rdf

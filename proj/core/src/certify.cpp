#include <algorithm>
#include <cmath>

#include "rdf/witness.hpp"

namespace rdf {

const char* to_string(CertStatus s) {
  switch (s) {
    case CertStatus::Certified: return "certified";
    case CertStatus::Borderline: return "borderline";
    case CertStatus::Failed: return "failed";
  }
  return "?";
}

namespace {

CertStatus status_of(Truth t) {
  switch (t) {
    case Truth::True: return CertStatus::Certified;
    case Truth::Borderline: return CertStatus::Borderline;
    case Truth::False: return CertStatus::Failed;
  }
  return CertStatus::Failed;
}

}  // namespace

CertificationReport certify(const Conjunct& conjunct, const ExplicitModel& model, const EvalOptions& options) {
  CertificationReport report;
  for (const auto& lit : conjunct.literals()) {
    LiteralVerdict v;
    v.literal = to_string(lit);
    FormulaPtr f = to_formula(lit);
    v.truth = evaluate(f, model, options);
    // Margin of the underlying atom; negated literals flip its sign.
    const Formula* node = f.get();
    bool flip = false;
    while (auto* n = std::get_if<Formula::Not>(&node->node)) {
      flip = !flip;
      node = n->sub.get();
    }
    if (auto* a = std::get_if<Formula::AtomNode>(&node->node)) {
      double m = check_atom(a->atom, model, options).margin;
      v.margin = flip && !std::isinf(m) ? -m : m;
      if (flip && std::isinf(m)) v.margin = v.truth == Truth::True ? m : -m;
    }
    report.min_margin = std::min(report.min_margin, v.margin);
    CertStatus s = status_of(v.truth);
    if (s == CertStatus::Failed && report.violated.empty()) report.violated = v.literal;
    report.status = std::max(report.status, s);
    report.literals.push_back(std::move(v));
  }
  return report;
}

CertificationReport combine(CertificationReport a, const CertificationReport& b) {
  a.status = std::max(a.status, b.status);
  a.min_margin = std::min(a.min_margin, b.min_margin);
  if (a.violated.empty()) a.violated = b.violated;
  for (const auto& l : b.literals) {
    bool seen = std::any_of(a.literals.begin(), a.literals.end(),
                            [&](const LiteralVerdict& x) { return x.literal == l.literal; });
    if (!seen) a.literals.push_back(l);
  }
  return a;
}

}  // namespace rdf

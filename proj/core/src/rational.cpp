#include "rdf/rational.hpp"

#include <cctype>

#include "rdf/error.hpp"

namespace rdf {

SyntaxError::SyntaxError(const std::string& message, SourceSpan span)
    : Error(message + " at line " + std::to_string(span.line) + ", column " +
            std::to_string(span.column)),
      span_(span) {}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::UnboundedStrictComparison:
      return "UnboundedStrictComparison";
    case ViolationKind::IllegalEndpoint:
      return "IllegalEndpoint";
    case ViolationKind::MalformedArity:
      return "MalformedArity";
    case ViolationKind::NonVariableEndpointAfterSNF:
      return "NonVariableEndpointAfterSNF";
  }
  return "?";
}

namespace {
std::string summarize(const std::vector<Violation>& violations) {
  std::string out = "validation failed:";
  for (const auto& v : violations) {
    out += " [" + std::string(to_string(v.kind)) + " at " + v.path + ": " + v.message + "]";
  }
  return out;
}
}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(summarize(violations)), violations_(std::move(violations)) {}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '-' || text[i] == '+') {
    negative = text[i] == '-';
    ++i;
  }
  auto digits = [&](std::string& out) {
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) out += text[i++];
  };
  std::string whole;
  digits(whole);
  Rational value;
  if (i < text.size() && text[i] == '/') {
    ++i;
    std::string den;
    digits(den);
    if (whole.empty() || den.empty() || i != text.size()) return std::nullopt;
    mpz_class d(den, 10);
    if (d == 0) return std::nullopt;
    value = Rational(mpz_class(whole, 10), d);
  } else {
    std::string frac;
    if (i < text.size() && text[i] == '.') {
      ++i;
      digits(frac);
    }
    if (whole.empty() && frac.empty()) return std::nullopt;
    long exponent = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
      ++i;
      bool eneg = false;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) eneg = text[i++] == '-';
      std::string ed;
      digits(ed);
      if (ed.empty() || ed.size() > 6) return std::nullopt;
      exponent = std::stol(ed) * (eneg ? -1 : 1);
    }
    if (i != text.size()) return std::nullopt;
    // base 10: a leading zero would otherwise read as octal
    mpz_class num(whole + frac, 10);
    exponent -= static_cast<long>(frac.size());
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    value = exponent < 0 ? Rational(num, scale) : Rational(num * scale);
  }
  value.canonicalize();
  if (negative) value = -value;
  return value;
}

Rational simplest_between(const Rational& lo, const Rational& hi) {
  // Continued-fraction walk: the simplest rational in [lo, hi].
  if (lo <= 0 && hi >= 0) return Rational(0);
  if (hi < 0) return -simplest_between(-hi, -lo);
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  // lo and hi share the integer part fl; recurse on reciprocals of fractional parts.
  Rational lo_frac = lo - fl;
  Rational hi_frac = hi - fl;
  Rational inner = simplest_between(1 / hi_frac, 1 / lo_frac);
  Rational result = fl + 1 / inner;
  result.canonicalize();
  return result;
}

}  // namespace rdf

#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace rdf {

using Rational = mpq_class;

/// "3", "-1/2". Always canonical.
std::string to_string(const Rational& q);

/// Parses "12", "-3/4", "0.125", "2.5e-3" (decimal exponent allowed). Returns
/// nullopt on malformed input or a zero denominator.
std::optional<Rational> parse_rational(std::string_view text);

double to_double(const Rational& q);

/// Smallest-denominator rational inside [lo, hi] (Stern-Brocot descent).
/// Requires lo <= hi.
Rational simplest_between(const Rational& lo, const Rational& hi);

}  // namespace rdf

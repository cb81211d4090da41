#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "rdf/ast.hpp"

namespace rdf {

/// Parses one formula. Surface sugar (!=, >=, <, <=, negated predicates)
/// lowers onto the primitive atom set. The result is validated; throws
/// SyntaxError or ValidationError.
///
///   formula  := disj
///   disj     := conj { "|" conj }
///   conj     := unary { "&" unary }
///   unary    := "!" unary | "(" formula ")" | atom
///   atom     := term rel term
///             | "(" fid ("=" | "!=" | ">") fid ")" interval
///             | "(" "D[" fid "]" rel term ")" interval
///             | shape "(" fid ")" interval
///   interval := "[" endpoint "," endpoint "]"
///   endpoint := term | "-inf" | "+inf"
///   fid      := identifier | "@0" | "@1"
///
/// `#` starts a comment running to the end of the line. Numerals are
/// integers, decimals (0.25) or ratios written without blanks (1/4).
FormulaPtr parse(std::string_view text);

/// Parses without running validation (diagnostic tooling).
FormulaPtr parse_unvalidated(std::string_view text);

/// Reads a .rdf file and parses it.
FormulaPtr parse_file(const std::filesystem::path& path);

/// Canonical text; parse(print(f)) is structurally equal to f.
std::string print(const FormulaPtr& formula);
std::string print(const TermPtr& term);
std::string print(const Atom& atom);
std::string print(const Endpoint& endpoint);

}  // namespace rdf

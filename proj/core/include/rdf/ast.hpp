#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "rdf/error.hpp"
#include "rdf/rational.hpp"

namespace rdf {

// ---------------------------------------------------------------------------
// Function variables
// ---------------------------------------------------------------------------

/// Reserved spellings of the two functional constants.
inline constexpr const char* kZeroFunction = "@0";
inline constexpr const char* kOneFunction = "@1";

struct FuncVar {
  std::string name;

  bool is_constant() const { return name == kZeroFunction || name == kOneFunction; }
  friend bool operator==(const FuncVar&, const FuncVar&) = default;
  friend auto operator<=>(const FuncVar&, const FuncVar&) = default;
};

// ---------------------------------------------------------------------------
// Numerical terms
// ---------------------------------------------------------------------------

enum class BinOp { Add, Sub, Mul, Div };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  struct Var {
    std::string name;
  };
  struct Const {
    Rational value;
  };
  struct Binary {
    BinOp op;
    TermPtr lhs;
    TermPtr rhs;
  };
  struct Apply {
    FuncVar f;
    TermPtr arg;
  };
  struct Deriv {
    FuncVar f;
    TermPtr arg;
  };

  std::variant<Var, Const, Binary, Apply, Deriv> node;
  SourceSpan span{};

  bool is_var() const { return std::holds_alternative<Var>(node); }
  const std::string& var_name() const { return std::get<Var>(node).name; }
};

TermPtr var(std::string name, SourceSpan span = {});
TermPtr constant(Rational value, SourceSpan span = {});
TermPtr binary(BinOp op, TermPtr lhs, TermPtr rhs, SourceSpan span = {});
TermPtr apply(FuncVar f, TermPtr arg, SourceSpan span = {});
TermPtr deriv(FuncVar f, TermPtr arg, SourceSpan span = {});

// ---------------------------------------------------------------------------
// Extended endpoints
// ---------------------------------------------------------------------------

struct Endpoint {
  enum class Kind { Finite, NegInf, PosInf };
  Kind kind = Kind::Finite;
  TermPtr term;  // set iff kind == Finite

  static Endpoint finite(TermPtr t) { return {Kind::Finite, std::move(t)}; }
  static Endpoint neg_inf() { return {Kind::NegInf, nullptr}; }
  static Endpoint pos_inf() { return {Kind::PosInf, nullptr}; }
  bool is_finite() const { return kind == Kind::Finite; }
};

// ---------------------------------------------------------------------------
// Atoms
// ---------------------------------------------------------------------------

enum class NumRel { Eq, Gt };
enum class DerRel { Eq, Gt, Ge, Lt, Le };
enum class ShapeKind {
  Up,
  StrictUp,
  Down,
  StrictDown,
  Convex,
  StrictConvex,
  Concave,
  StrictConcave,
};

const char* to_string(DerRel rel);
const char* to_string(ShapeKind kind);
/// Relation whose truth is the negation of `rel` (= maps to != which has no
/// DerRel spelling, so it is excluded).
DerRel complement(DerRel rel);

struct NumAtom {
  NumRel rel;
  TermPtr lhs;
  TermPtr rhs;
};

/// (f = g)[lo, hi]
struct FunEqAtom {
  FuncVar f, g;
  Endpoint lo, hi;
};

/// (f > g)[lo, hi]; bounds must be finite, kept as endpoints so that
/// validation can report infinite ones.
struct FunGtAtom {
  FuncVar f, g;
  Endpoint lo, hi;
};

/// (D[f] rel bound)[lo, hi]
struct DerAtom {
  FuncVar f;
  DerRel rel;
  TermPtr bound;
  Endpoint lo, hi;
};

struct ShapeAtom {
  ShapeKind kind;
  FuncVar f;
  Endpoint lo, hi;
};

using Atom = std::variant<NumAtom, FunEqAtom, FunGtAtom, DerAtom, ShapeAtom>;

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  struct AtomNode {
    Atom atom;
  };
  struct Not {
    FormulaPtr sub;
  };
  struct And {
    FormulaPtr lhs, rhs;
  };
  struct Or {
    FormulaPtr lhs, rhs;
  };

  std::variant<AtomNode, Not, And, Or> node;
  SourceSpan span{};
};

FormulaPtr atom(Atom a, SourceSpan span = {});
FormulaPtr negation(FormulaPtr f, SourceSpan span = {});
FormulaPtr conj(FormulaPtr lhs, FormulaPtr rhs, SourceSpan span = {});
FormulaPtr disj(FormulaPtr lhs, FormulaPtr rhs, SourceSpan span = {});
/// Left-nested conjunction; empty input is rejected.
FormulaPtr conj_all(const std::vector<FormulaPtr>& parts);

// Structural equality; source spans are ignored.
bool equal(const TermPtr& a, const TermPtr& b);
bool equal(const Endpoint& a, const Endpoint& b);
bool equal(const Atom& a, const Atom& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);

// ---------------------------------------------------------------------------
// Formula-level operations
// ---------------------------------------------------------------------------

/// Checks the endpoint restrictions of every atom. Returns the formula
/// unchanged or throws ValidationError listing every violation.
FormulaPtr validate(const FormulaPtr& formula);

/// Non-throwing variant used by tests and tools.
std::vector<Violation> collect_violations(const FormulaPtr& formula);

struct DomainVarOptions {
  /// When set, a compound (non-variable) finite endpoint is an error.
  bool assert_snf = false;
};

/// Variables used as function arguments or as bare-variable interval
/// endpoints, in order of first occurrence (left-to-right, depth-first).
std::vector<std::string> domain_vars(const FormulaPtr& formula, DomainVarOptions options = {});

/// All numeric variables / function variables in first-occurrence order.
std::vector<std::string> numeric_vars(const FormulaPtr& formula);
std::vector<std::string> function_vars(const FormulaPtr& formula);

/// Replaces @0 / @1 by fresh function variables pinned by
/// (D[$c] = 0)[-inf, +inf] & $c($anchor) = c. Returns the input unchanged when
/// no functional constant occurs.
FormulaPtr desugar_function_constants(const FormulaPtr& formula);

/// Name prefix reserved for generated variables; the parser never produces it.
inline constexpr char kFreshPrefix = '$';

}  // namespace rdf

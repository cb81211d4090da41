#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace rdf {

/// Byte range plus 1-based line/column of the first byte.
struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, SourceSpan span);
  const SourceSpan& span() const { return span_; }

 private:
  SourceSpan span_;
};

enum class ViolationKind {
  UnboundedStrictComparison,
  IllegalEndpoint,
  MalformedArity,
  NonVariableEndpointAfterSNF,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  /// Path from the root, e.g. "and.1/or.0/atom".
  std::string path;
  std::string message;
  SourceSpan span;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

class UnassignedSymbol : public Error {
 public:
  explicit UnassignedSymbol(const std::string& name)
      : Error("unassigned symbol: " + name), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class BranchExplosion : public Error {
 public:
  using Error::Error;
};

class ArrangementExplosion : public Error {
 public:
  using Error::Error;
};

class CoverageError : public Error {
 public:
  using Error::Error;
};

class MissingChain : public Error {
 public:
  using Error::Error;
};

enum class SolverErrorKind { SolverNotFound, ProtocolError };

class SolverError : public Error {
 public:
  SolverError(SolverErrorKind kind, const std::string& message)
      : Error(message), kind_(kind) {}
  SolverErrorKind kind() const { return kind_; }

 private:
  SolverErrorKind kind_;
};

class InfeasibleSegment : public Error {
 public:
  using Error::Error;
};

class InfeasibleTail : public Error {
 public:
  using Error::Error;
};

class ModelConstructionFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace rdf

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace rdf {

/// One piece of a C1 function.
///
/// Quadratic: continuous piecewise-linear derivative through `knots`
/// (x, f'(x)), value `y0` at the first knot; covers [knots.front().x,
/// knots.back().x].
///
/// Tail: derivative gamma + (t - gamma) exp(+-lambda (x - v)) on (-inf, v]
/// (left) or [v, +inf) (right), value y at v.
struct Piece {
  enum class Kind { Quadratic, Tail };
  Kind kind = Kind::Quadratic;

  std::vector<std::pair<double, double>> knots;
  double y0 = 0.0;

  bool left = false;
  double v = 0.0, y = 0.0, t = 0.0, gamma = 0.0, lambda = 1.0;

  static Piece quadratic(std::vector<std::pair<double, double>> knots, double y0);
  static Piece linear(double lo, double hi, double y_lo, double slope);
  static Piece tail(bool left, double v, double y, double t, double gamma, double lambda = 1.0);

  double lo() const;
  double hi() const;
  double value(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;

  friend bool operator==(const Piece&, const Piece&) = default;
};

/// Derivative values in x order at the points between which f' is monotone.
/// An infinite end contributes the limit, flagged as not attained.
struct DerivativeProfile {
  std::vector<double> x;
  std::vector<double> d;
  std::vector<bool> attained;
};

/// Interpretation of one function variable: breakpoints v_1 < ... < v_r and
/// r + 1 pieces (left tail, bounded segments, right tail).
class PiecewiseModel {
 public:
  PiecewiseModel() = default;
  PiecewiseModel(std::vector<double> breakpoints, std::vector<Piece> pieces);

  /// f = slope * x + intercept on the whole line, with one breakpoint at 0.
  static PiecewiseModel affine(double slope, double intercept);

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  double value(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;

  /// Profile over [lo, hi], lo may be -inf and hi +inf.
  DerivativeProfile profile(double lo, double hi) const;

  /// Largest value/derivative mismatch at breakpoints, relative to
  /// 1 + |value|.
  double glue_error() const;

  friend bool operator==(const PiecewiseModel&, const PiecewiseModel&) = default;

 private:
  std::vector<double> breakpoints_;
  std::vector<Piece> pieces_;

  const Piece& piece_at(double x) const;
};

}  // namespace rdf

#include "rdf/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rdf/error.hpp"

namespace rdf {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Piece Piece::quadratic(std::vector<std::pair<double, double>> knots, double y0) {
  Piece p;
  p.kind = Kind::Quadratic;
  p.knots = std::move(knots);
  p.y0 = y0;
  return p;
}

Piece Piece::linear(double lo, double hi, double y_lo, double slope) {
  return quadratic({{lo, slope}, {hi, slope}}, y_lo);
}

Piece Piece::tail(bool left, double v, double y, double t, double gamma, double lambda) {
  Piece p;
  p.kind = Kind::Tail;
  p.left = left;
  p.v = v;
  p.y = y;
  p.t = t;
  p.gamma = gamma;
  p.lambda = lambda;
  return p;
}

double Piece::lo() const {
  if (kind == Kind::Tail) return left ? -kInf : v;
  return knots.front().first;
}

double Piece::hi() const {
  if (kind == Kind::Tail) return left ? v : kInf;
  return knots.back().first;
}

double Piece::value(double x) const {
  if (kind == Kind::Tail) {
    double s = x - v;
    double e = left ? std::expm1(lambda * s) : -std::expm1(-lambda * s);
    return y + gamma * s + (t - gamma) / lambda * e;
  }
  double acc = y0;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    auto [x0, d0] = knots[k];
    auto [x1, d1] = knots[k + 1];
    double w = x1 - x0;
    if (x < x1 || k + 2 == knots.size()) {
      double s = x - x0;
      double slope = w > 0 ? (d1 - d0) / w : 0.0;
      return acc + d0 * s + 0.5 * slope * s * s;
    }
    acc += 0.5 * (d0 + d1) * w;
  }
  return acc;
}

double Piece::derivative(double x) const {
  if (kind == Kind::Tail) {
    double s = x - v;
    return gamma + (t - gamma) * std::exp(left ? lambda * s : -lambda * s);
  }
  if (x <= knots.front().first) return knots.front().second;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    auto [x0, d0] = knots[k];
    auto [x1, d1] = knots[k + 1];
    if (x <= x1) return x1 > x0 ? d0 + (d1 - d0) * (x - x0) / (x1 - x0) : d1;
  }
  return knots.back().second;
}

double Piece::second_derivative(double x) const {
  if (kind == Kind::Tail) {
    double s = x - v;
    return left ? lambda * (t - gamma) * std::exp(lambda * s) : -lambda * (t - gamma) * std::exp(-lambda * s);
  }
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    auto [x0, d0] = knots[k];
    auto [x1, d1] = knots[k + 1];
    if (x < x1 || k + 2 == knots.size()) return x1 > x0 ? (d1 - d0) / (x1 - x0) : 0.0;
  }
  return 0.0;
}

// ---------------------------------------------------------------------------

PiecewiseModel::PiecewiseModel(std::vector<double> breakpoints, std::vector<Piece> pieces)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (breakpoints_.empty() || pieces_.size() != breakpoints_.size() + 1) {
    throw Error("piecewise model needs r >= 1 breakpoints and r + 1 pieces");
  }
  if (std::adjacent_find(breakpoints_.begin(), breakpoints_.end(), std::greater_equal<>()) != breakpoints_.end()) {
    throw Error("piecewise model breakpoints must increase strictly");
  }
}

PiecewiseModel PiecewiseModel::affine(double slope, double intercept) {
  return PiecewiseModel({0.0}, {Piece::tail(true, 0.0, intercept, slope, slope),
                                Piece::tail(false, 0.0, intercept, slope, slope)});
}

const Piece& PiecewiseModel::piece_at(double x) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  return pieces_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

double PiecewiseModel::value(double x) const { return piece_at(x).value(x); }
double PiecewiseModel::derivative(double x) const { return piece_at(x).derivative(x); }
double PiecewiseModel::second_derivative(double x) const { return piece_at(x).second_derivative(x); }

DerivativeProfile PiecewiseModel::profile(double lo, double hi) const {
  DerivativeProfile out;
  auto push = [&](double x, double d, bool attained) {
    if (!out.x.empty() && out.x.back() == x) return;
    out.x.push_back(x);
    out.d.push_back(d);
    out.attained.push_back(attained);
  };
  if (lo > hi) return out;
  for (const auto& p : pieces_) {
    double a = std::max(lo, p.lo()), b = std::min(hi, p.hi());
    if (a > b) continue;
    if (p.kind == Piece::Kind::Tail) {
      bool flat = p.t == p.gamma;
      if (std::isinf(a)) {
        push(a, p.gamma, flat);
      } else {
        push(a, p.derivative(a), true);
      }
      if (std::isinf(b)) {
        push(b, p.gamma, flat);
      } else {
        push(b, p.derivative(b), true);
      }
      continue;
    }
    push(a, p.derivative(a), true);
    for (const auto& [x, d] : p.knots)
      if (x > a && x < b) push(x, d, true);
    push(b, p.derivative(b), true);
  }
  return out;
}

double PiecewiseModel::glue_error() const {
  double worst = 0.0;
  for (std::size_t j = 0; j < breakpoints_.size(); ++j) {
    double v = breakpoints_[j];
    const Piece& l = pieces_[j];
    const Piece& r = pieces_[j + 1];
    double fl = l.value(v), fr = r.value(v);
    double dl = l.derivative(v), dr = r.derivative(v);
    worst = std::max(worst, std::fabs(fl - fr) / (1 + std::fabs(fl)));
    worst = std::max(worst, std::fabs(dl - dr) / (1 + std::fabs(dl)));
  }
  return worst;
}

}  // namespace rdf

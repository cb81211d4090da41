#include <algorithm>
#include <cmath>
#include <sstream>

#include "rdf/error.hpp"
#include "rdf/witness.hpp"

namespace rdf {

void ShapeRequirements::merge(const ShapeRequirements& o) {
  convex = convex || o.convex;
  strict_convex = strict_convex || o.strict_convex;
  concave = concave || o.concave;
  strict_concave = strict_concave || o.strict_concave;
  strict_up = strict_up || o.strict_up;
  strict_down = strict_down || o.strict_down;
  bounds.insert(bounds.end(), o.bounds.begin(), o.bounds.end());
  envelope = std::min(envelope, o.envelope);
}

bool ShapeRequirements::empty() const {
  return !convex && !strict_convex && !concave && !strict_concave && !strict_up && !strict_down &&
         bounds.empty() && std::isinf(envelope);
}

std::string to_string(const ShapeRequirements& r) {
  std::ostringstream out;
  const char* sep = "";
  auto flag = [&](bool on, const char* name) {
    if (on) out << sep << name, sep = " ";
  };
  flag(r.convex, "convex");
  flag(r.strict_convex, "strict-convex");
  flag(r.concave, "concave");
  flag(r.strict_concave, "strict-concave");
  flag(r.strict_up, "strict-up");
  flag(r.strict_down, "strict-down");
  for (const auto& b : r.bounds) {
    out << sep << "f'" << (b.lower ? (b.strict ? ">" : ">=") : (b.strict ? "<" : "<=")) << b.value;
    sep = " ";
  }
  if (!std::isinf(r.envelope)) out << sep << "envelope<" << r.envelope;
  return out.str();
}

namespace {

// Slack for data that are exact rationals rounded to double.
double slack(double a, double b) { return 1e-12 * (1 + std::fabs(a) + std::fabs(b)); }
bool le(double a, double b) { return a <= b + slack(a, b); }
bool near(double a, double b) { return std::fabs(a - b) <= slack(a, b); }

// Largest |f - chord| over a bounded piece: extrema sit at knots or where
// f' crosses the chord slope.
double chord_deviation(const Piece& p, double y_lo, double y_hi) {
  double lo = p.lo(), hi = p.hi();
  double slope = (y_hi - y_lo) / (hi - lo);
  auto dev = [&](double x) { return std::fabs(p.value(x) - (y_lo + slope * (x - lo))); };
  double worst = 0;
  for (std::size_t k = 0; k < p.knots.size(); ++k) {
    worst = std::max(worst, dev(p.knots[k].first));
    if (k + 1 == p.knots.size()) break;
    auto [x0, d0] = p.knots[k];
    auto [x1, d1] = p.knots[k + 1];
    if ((d0 - slope) * (d1 - slope) < 0) worst = std::max(worst, dev(x0 + (slope - d0) / (d1 - d0) * (x1 - x0)));
  }
  return worst;
}

void check_data(double h, double delta, double t_lo, double t_hi, const ShapeRequirements& r) {
  auto fail = [](const std::string& why) { throw InfeasibleSegment(why); };
  if (!(h > 0)) fail("segment bounds are not increasing");
  auto convex_like = [&](double a, double d, double b, bool strict, const char* name) {
    if (strict ? !(a < d && d < b) : !(le(a, d) && le(d, b)))
      fail(std::string(name) + " needs t_lo <= mean slope <= t_hi");
    if (!strict && (near(a, d) || near(d, b)) && !near(a, b))
      fail(std::string(name) + ": mean slope equals an end slope but the end slopes differ");
  };
  if (r.convex) convex_like(t_lo, delta, t_hi, false, "convexity");
  if (r.strict_convex) convex_like(t_lo, delta, t_hi, true, "strict convexity");
  if (r.concave) convex_like(-t_lo, -delta, -t_hi, false, "concavity");
  if (r.strict_concave) convex_like(-t_lo, -delta, -t_hi, true, "strict concavity");
  if (r.strict_up && !(le(0, t_lo) && le(0, t_hi) && delta > 0)) fail("strict increase needs t >= 0 and a rise");
  if (r.strict_down && !(le(t_lo, 0) && le(t_hi, 0) && delta < 0)) fail("strict decrease needs t <= 0 and a fall");
  for (const auto& b : r.bounds) {
    double s = b.lower ? 1 : -1;
    double a0 = s * t_lo, a1 = s * t_hi, d = s * delta, c = s * b.value;
    bool ok = b.strict ? (a0 > c && a1 > c && d > c) : (le(c, a0) && le(c, a1) && le(c, d));
    if (!ok) fail("derivative bound " + std::to_string(b.value) + " violated by the segment data");
    if (!b.strict && near(d, c) && !(near(a0, c) && near(a1, c)))
      fail("mean slope meets the derivative bound but the end slopes do not");
  }
}

}  // namespace

std::string segment_violation(const Piece& p, double y_lo, double y_hi, const ShapeRequirements& r) {
  if (p.kind != Piece::Kind::Quadratic) return "not a bounded piece";
  std::vector<double> d;
  for (const auto& k : p.knots) d.push_back(k.second);
  double end = p.value(p.hi());
  if (std::fabs(end - y_hi) > 1e-9 * (1 + std::fabs(y_hi))) return "end value mismatch";
  if (std::fabs(p.value(p.lo()) - y_lo) > 1e-9 * (1 + std::fabs(y_lo))) return "start value mismatch";
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    double diff = d[i + 1] - d[i];
    if (r.convex && diff < -slack(d[i], d[i + 1])) return "derivative decreases";
    if (r.concave && diff > slack(d[i], d[i + 1])) return "derivative increases";
    if (r.strict_convex && !(diff > 0)) return "derivative not strictly increasing";
    if (r.strict_concave && !(diff < 0)) return "derivative not strictly decreasing";
    if (r.strict_up && d[i] == 0 && d[i + 1] == 0) return "flat stretch in strictly increasing piece";
    if (r.strict_down && d[i] == 0 && d[i + 1] == 0) return "flat stretch in strictly decreasing piece";
  }
  for (double x : d) {
    if (r.strict_up && x < 0) return "negative slope in strictly increasing piece";
    if (r.strict_down && x > 0) return "positive slope in strictly decreasing piece";
    for (const auto& b : r.bounds) {
      double s = b.lower ? 1 : -1;
      bool ok = b.strict ? s * x > s * b.value : s * x >= s * b.value - slack(x, b.value);
      if (!ok) return "derivative bound violated";
    }
  }
  if (!std::isinf(r.envelope) && !(chord_deviation(p, y_lo, y_hi) < r.envelope)) return "envelope exceeded";
  return {};
}

Piece fit_segment(double v_lo, double v_hi, double y_lo, double y_hi, double t_lo, double t_hi,
                  const ShapeRequirements& req) {
  double h = v_hi - v_lo;
  double delta = (y_hi - y_lo) / h;
  check_data(h, delta, t_lo, t_hi, req);

  if (near(t_lo, delta) && near(t_hi, delta)) {
    Piece p = Piece::quadratic({{v_lo, t_lo}, {v_hi, t_hi}}, y_lo);
    std::string why = segment_violation(p, y_lo, y_hi, req);
    if (why.empty()) return p;
  }

  std::string last = "no width tried";
  double w = h / 4;
  for (int iter = 0; iter < 60; ++iter, w /= 2) {
    double plateau = (delta * h - w * (t_lo + t_hi) / 2) / (h - w);
    double tilt = 0;
    double share = std::min(0.5, w / h);
    if (req.strict_convex) tilt = std::min(plateau - t_lo, t_hi - plateau) * share;
    if (req.strict_concave) tilt = -std::min(t_lo - plateau, plateau - t_hi) * share;
    Piece p = Piece::quadratic({{v_lo, t_lo}, {v_lo + w, plateau - tilt}, {v_hi - w, plateau + tilt}, {v_hi, t_hi}}, y_lo);
    last = segment_violation(p, y_lo, y_hi, req);
    if (last.empty()) return p;
  }
  throw InfeasibleSegment("no boundary layer satisfies the requirements (" + last + ")");
}

Piece fit_tail(Side side, double v, double y, double t, double gamma, const ShapeRequirements& r) {
  bool left = side == Side::Left;
  auto fail = [](const std::string& why) { throw InfeasibleTail(why); };
  // Derivative values in x order: the limit and the boundary slope.
  double first = left ? gamma : t, second = left ? t : gamma;
  if (r.convex && !le(first, second)) fail("convex tail needs a nondecreasing derivative");
  if (r.concave && !le(second, first)) fail("concave tail needs a nonincreasing derivative");
  if (r.strict_convex && !(first < second)) fail("strictly convex tail needs a strictly increasing derivative");
  if (r.strict_concave && !(first > second)) fail("strictly concave tail needs a strictly decreasing derivative");
  if (r.strict_up && !(le(0, gamma) && le(0, t) && (gamma > 0 || t > 0))) fail("strictly increasing tail needs f' >= 0");
  if (r.strict_down && !(le(gamma, 0) && le(t, 0) && (gamma < 0 || t < 0))) fail("strictly decreasing tail needs f' <= 0");
  for (const auto& b : r.bounds) {
    double s = b.lower ? 1 : -1;
    double g = s * gamma, tb = s * t, c = s * b.value;
    bool ok = b.strict ? (tb > c && le(c, g)) : (le(c, g) && le(c, tb));
    if (!ok) fail("derivative bound " + std::to_string(b.value) + " violated on the tail");
  }
  if (near(t, gamma)) gamma = t;
  return Piece::tail(left, v, y, t, gamma, 1.0);
}

}  // namespace rdf

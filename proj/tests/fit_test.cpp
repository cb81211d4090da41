#include <gtest/gtest.h>

#include <cmath>

#include "rdf/error.hpp"
#include "rdf/witness.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace rdf;

namespace {

Piece fit(const support::SegmentCase& s) {
  return fit_segment(s.v_lo, s.v_hi, s.y_lo, s.y_hi, s.t_lo, s.t_hi, s.req);
}

}  // namespace

TEST(Fit, FeasibleVariants) {
  support::Rng rng(31);
  for (std::size_t k = 0; k < 240; ++k) {
    auto s = support::feasible_segment(rng, k);
    Piece p;
    ASSERT_NO_THROW(p = fit(s)) << s.variant << " " << to_string(s.req);
    ASSERT_EQ(support::check_fitted_segment(p, s, 2000), "") << s.variant;
    ASSERT_EQ(segment_violation(p, s.y_lo, s.y_hi, s.req), "") << s.variant;
  }
}

TEST(Fit, InfeasibleVariants) {
  support::Rng rng(37);
  for (std::size_t k = 0; k < 60; ++k) {
    auto s = support::infeasible_segment(rng, k);
    EXPECT_THROW(fit(s), InfeasibleSegment) << s.variant;
  }
}

TEST(Fit, StraightLineWhenSlopesAgree) {
  ShapeRequirements req;
  req.convex = true;
  Piece p = fit_segment(0, 2, 1, 5, 2, 2, req);
  EXPECT_EQ(p.knots.size(), 2u);
  EXPECT_DOUBLE_EQ(p.value(1), 3);
}

TEST(Fit, EnvelopeBoundsChordDistance) {
  ShapeRequirements req;
  req.envelope = 0.01;
  Piece p = fit_segment(0, 1, 0, 1, -5, 7, req);
  for (int i = 0; i <= 1000; ++i) {
    double x = i / 1000.0;
    ASSERT_LT(std::fabs(p.value(x) - x), 0.01) << x;
  }
}

TEST(Fit, StrictConvexityHasNoFlatStretch) {
  ShapeRequirements req;
  req.strict_convex = true;
  Piece p = fit_segment(0, 1, 0, 1, 0, 3, req);
  for (std::size_t i = 0; i + 1 < p.knots.size(); ++i) EXPECT_LT(p.knots[i].second, p.knots[i + 1].second);
}

TEST(Fit, TailMatchesBoundaryAndLimit) {
  ShapeRequirements req;
  req.strict_convex = true;
  Piece left = fit_tail(Side::Left, 0, 1, 2, -1, req);
  EXPECT_DOUBLE_EQ(left.value(0), 1);
  EXPECT_DOUBLE_EQ(left.derivative(0), 2);
  EXPECT_NEAR(left.derivative(-50), -1, 1e-12);
  Piece right = fit_tail(Side::Right, 3, 0, 1, 1, {});
  EXPECT_DOUBLE_EQ(right.derivative(100), 1);
  EXPECT_DOUBLE_EQ(right.value(5), 2);
}

TEST(Fit, InfeasibleTails) {
  ShapeRequirements convex;
  convex.convex = true;
  // Left of v the derivative must not exceed t.
  EXPECT_THROW(fit_tail(Side::Left, 0, 0, 1, 2, convex), InfeasibleTail);
  ShapeRequirements up;
  up.strict_up = true;
  EXPECT_THROW(fit_tail(Side::Right, 0, 0, 0, 0, up), InfeasibleTail);
  ShapeRequirements lower;
  lower.bounds.push_back({1.0, true, true});
  // A strict bound may be approached in the limit but not at v.
  EXPECT_NO_THROW(fit_tail(Side::Right, 0, 0, 2, 1, lower));
  EXPECT_THROW(fit_tail(Side::Right, 0, 0, 1, 2, lower), InfeasibleTail);
}

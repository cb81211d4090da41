#include <gtest/gtest.h>

#include "rdf/error.hpp"
#include "rdf/parser.hpp"
#include "rdf/semantics.hpp"
#include "support/oracles.hpp"

using namespace rdf;

namespace {

Truth eval(const std::string& text, const ExplicitModel& m) { return evaluate(parse(text), m); }

}  // namespace

TEST(Semantics, VacuityTable) {
  auto m = support::vacuity_model();
  auto table = support::vacuity_table();
  ASSERT_EQ(table.size(), 20u);
  for (const auto& row : table) {
    EXPECT_EQ(eval(row.vacuous, m), Truth::True) << row.vacuous;
    EXPECT_EQ(eval(row.reversed, m), Truth::False) << row.reversed;
  }
}

TEST(Semantics, ArithmeticIsExact) {
  ExplicitModel m;
  m.numeric["x"] = Rational(1, 3);
  EXPECT_EQ(eval("x + x + x = 1", m), Truth::True);
  EXPECT_EQ(eval("x * 3 > 1", m), Truth::False);
  EXPECT_EQ(eval("x / 0 = 1", m), Truth::False);
}

TEST(Semantics, KleeneConnectives) {
  ExplicitModel m;
  m.numeric["x"] = Rational(0);
  m.functional.emplace("f", PiecewiseModel::affine(0, 1e-9));
  // f(x) > 0 is within tolerance: borderline.
  EXPECT_EQ(eval("f(x) > 0", m), Truth::Borderline);
  EXPECT_EQ(eval("f(x) > 0 | x = 0", m), Truth::True);
  EXPECT_EQ(eval("f(x) > 0 & x = 1", m), Truth::False);
  EXPECT_EQ(eval("!(f(x) > 0)", m), Truth::Borderline);
}

TEST(Semantics, ConstantsNeedNoEntry) {
  ExplicitModel m;
  m.numeric["a"] = Rational(0);
  m.numeric["b"] = Rational(2);
  EXPECT_EQ(eval("(@1 > @0)[a, b] & (D[@1] = 0)[-inf, +inf] & @1(a) = 1", m), Truth::True);
}

TEST(Semantics, MissingSymbolsThrow) {
  ExplicitModel m;
  EXPECT_THROW(eval("x > 0", m), UnassignedSymbol);
  m.numeric["a"] = Rational(0);
  EXPECT_THROW(eval("Up(f)[a, +inf]", m), UnassignedSymbol);
}

TEST(Semantics, StrictShapesRejectFlatStretches) {
  ExplicitModel m;
  m.numeric["a"] = Rational(0);
  m.numeric["b"] = Rational(1);
  m.functional.emplace("f", PiecewiseModel::affine(0, 0));
  m.functional.emplace("g", PiecewiseModel::affine(2, 0));
  EXPECT_EQ(eval("Up(f)[a, b] & Down(f)[a, b] & Convex(f)[a, b] & Concave(f)[a, b]", m), Truth::True);
  EXPECT_EQ(eval("StrictUp(f)[a, b]", m), Truth::False);
  EXPECT_EQ(eval("StrictConvex(g)[a, b]", m), Truth::False);
  EXPECT_EQ(eval("StrictUp(g)[-inf, +inf] & (D[g] = 2)[a, +inf]", m), Truth::True);
}

TEST(Semantics, StrictDerivativeBoundMayTouchInTheLimit) {
  // f' = 1 + e^x on the left tail: f' > 1 everywhere though inf f' = 1.
  ExplicitModel m;
  m.numeric["a"] = Rational(0);
  m.functional.emplace("f", PiecewiseModel({0}, {Piece::tail(true, 0, 0, 2, 1), Piece::tail(false, 0, 0, 2, 3)}));
  m.numeric["one"] = Rational(1);
  EXPECT_EQ(eval("(D[f] > one)[-inf, a]", m), Truth::True);
  EXPECT_EQ(eval("(D[f] < 2)[-inf, a]", m), Truth::Borderline);
  EXPECT_EQ(eval("(D[f] > 2)[-inf, a]", m), Truth::False);
  EXPECT_EQ(eval("(D[f] > 3)[-inf, a]", m), Truth::False);
}

TEST(Semantics, FunctionEqualityOnInfiniteInterval) {
  ExplicitModel m;
  m.numeric["a"] = Rational(0);
  m.functional.emplace("f", PiecewiseModel::affine(1, 0));
  m.functional.emplace("g", PiecewiseModel::affine(1, 0));
  m.functional.emplace("h", PiecewiseModel::affine(1.001, 0));
  EXPECT_EQ(eval("(f = g)[a, +inf]", m), Truth::True);
  EXPECT_EQ(eval("(f = h)[a, +inf]", m), Truth::False);
}

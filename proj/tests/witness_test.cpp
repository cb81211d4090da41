#include <gtest/gtest.h>

#include "rdf/backend.hpp"
#include "rdf/error.hpp"
#include "rdf/parser.hpp"
#include "rdf/witness.hpp"
#include "support/oracles.hpp"

using namespace rdf;

namespace {

struct Built {
  Reduction red;
  std::map<std::string, Rational> witness;
  ExplicitModel model;
};

// First reduction whose formula the internal search satisfies.
std::optional<Built> build(const std::string& text) {
  auto cs = normalize(desugar_function_constants(parse(text)));
  for (const auto& c : cs) {
    for (auto& r : reduce(c)) {
      auto s = search_internal(r.formula);
      if (s.status != SolveStatus::Sat) continue;
      Built b{r, *s.witness, build_model(r, *s.witness)};
      return b;
    }
  }
  return std::nullopt;
}

}  // namespace

TEST(Witness, StrictUpIsCertified) {
  auto b = build("a < b & StrictUp(f)[a, b]");
  ASSERT_TRUE(b);
  auto report = certify(b->red.ordered.conjunct, b->model);
  EXPECT_EQ(report.status, CertStatus::Certified);
  EXPECT_EQ(evaluate(parse("a < b & StrictUp(f)[a, b]"), b->model), Truth::True);
}

TEST(Witness, NumericValuesAreUnchanged) {
  auto b = build("a < b & f(a) = 3 & (D[f] < 0)[a, +inf] & Convex(f)[-inf, +inf]");
  ASSERT_TRUE(b);
  for (const auto& [v, q] : b->witness) EXPECT_EQ(b->model.numeric.at(v), q) << v;
  EXPECT_EQ(certify(b->red.positive, b->model).status, CertStatus::Certified);
}

TEST(Witness, GlueAndShapeByFiniteDifferences) {
  auto b = build("a < b & b < c & StrictConvex(f)[a, c] & Concave(g)[-inf, b] & (f > g)[a, c] & (D[g] >= 1)[a, +inf]");
  ASSERT_TRUE(b);
  ASSERT_EQ(certify(b->red.ordered.conjunct, b->model).status, CertStatus::Certified);
  const auto& f = b->model.functional.at("f");
  const auto& g = b->model.functional.at("g");
  EXPECT_LT(f.glue_error(), 1e-9);
  EXPECT_LT(g.glue_error(), 1e-9);
  double a = to_double(b->model.numeric.at("a")), c = to_double(b->model.numeric.at("c"));
  double bb = to_double(b->model.numeric.at("b"));
  for (int i = 1; i < 1000; ++i) {
    double x = a + (c - a) * i / 1000.0;
    double s = support::fd_second(f, x);
    if (std::fabs(s) > 1e-6) {
      EXPECT_GT(s, 0) << x;
    }
    double y = bb - 10 + 10.0 * i / 1000.0;
    double t = support::fd_second(g, y);
    if (std::fabs(t) > 1e-6) {
      EXPECT_LT(t, 0) << y;
    }
  }
}

TEST(Witness, EqualFunctionsShareSegments) {
  auto b = build("a < b & (f = g)[a, b] & f(a) = 0 & g(b) = 1 & StrictConvex(g)[a, b]");
  ASSERT_TRUE(b);
  const auto& f = b->model.functional.at("f");
  const auto& g = b->model.functional.at("g");
  EXPECT_EQ(f.pieces()[1], g.pieces()[1]);
  EXPECT_EQ(certify(b->red.ordered.conjunct, b->model).status, CertStatus::Certified);
}

TEST(Witness, CorruptedModelNamesTheViolatedLiteral) {
  auto b = build("a < b & StrictUp(f)[a, b]");
  ASSERT_TRUE(b);
  ExplicitModel bad = b->model;
  auto pieces = bad.functional.at("f").pieces();
  auto bps = bad.functional.at("f").breakpoints();
  // Reverse the middle piece's slopes: the function now falls on [a, b].
  for (auto& k : pieces[1].knots) k.second = -1;
  bad.functional["f"] = PiecewiseModel(bps, pieces);
  auto report = certify(b->red.ordered.conjunct, bad);
  EXPECT_EQ(report.status, CertStatus::Failed);
  EXPECT_NE(report.violated.find("StrictUp"), std::string::npos) << report.violated;
}

TEST(Witness, EmptyConjunctIsCertified) {
  auto report = certify(Conjunct{}, ExplicitModel{});
  EXPECT_EQ(report.status, CertStatus::Certified);
  EXPECT_TRUE(report.literals.empty());
}

TEST(Witness, JsonRoundTrip) {
  auto b = build("a < b & StrictConcave(f)[-inf, +inf] & f(a) = 1/3");
  ASSERT_TRUE(b);
  auto report = certify(b->red.ordered.conjunct, b->model);
  std::string doc = witness_to_json(b->model, &report);
  EXPECT_NE(doc.find(kWitnessSchema), std::string::npos);
  ExplicitModel back = witness_from_json(doc);
  EXPECT_EQ(back.numeric, b->model.numeric);
  ASSERT_EQ(back.functional.size(), b->model.functional.size());
  for (const auto& [name, f] : b->model.functional) EXPECT_EQ(back.functional.at(name), f) << name;
  EXPECT_THROW(witness_from_json("{\"schema\": \"other\"}"), Error);
  EXPECT_THROW(witness_from_json("not json"), Error);
}

TEST(Witness, ConstructionFailureIsReported) {
  auto cs = normalize(parse("a < b & Convex(f)[a, b]"));
  auto red = reduce(cs.front()).front();
  // Hand-made witness with mean slope outside [t_a, t_b].
  std::map<std::string, Rational> w;
  for (const auto& v : red.formula.variables()) w[v] = Rational(0);
  w["a"] = Rational(0);
  w["b"] = Rational(1);
  w[red.context.y.at("f")[1]] = Rational(5);
  EXPECT_THROW(build_model(red, w), ModelConstructionFailure);
}

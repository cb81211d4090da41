#include <gtest/gtest.h>

#include "rdf/backend.hpp"
#include "rdf/error.hpp"
#include "rdf/parser.hpp"
#include "rdf/reducer.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace rdf;

namespace {

Conjunct only(const std::string& text) {
  auto cs = normalize(desugar_function_constants(parse(text)));
  EXPECT_EQ(cs.size(), 1u) << text;
  return cs.front();
}

bool has_negated_functional(const Conjunct& c) {
  for (const auto& l : c.literals())
    if (l.is_functional() && l.negated) return true;
  return false;
}

}  // namespace

TEST(Reducer, Step1RemovesNegatedFunctionals) {
  support::Rng rng(21);
  support::ConjunctShape shape;
  shape.negation_rate = 0.5;
  for (int i = 0; i < 150; ++i) {
    Conjunct c = support::random_snf_conjunct(rng, shape);
    std::vector<Conjunct> branches;
    try {
      branches = step1_remove_negatives(c);
    } catch (const BranchExplosion&) {
      continue;
    }
    for (const auto& b : branches) {
      ASSERT_FALSE(has_negated_functional(b)) << to_string(c);
      ASSERT_TRUE(is_snf(b)) << to_string(b);
    }
  }
}

TEST(Reducer, Step1GadgetForNegatedConvexity) {
  auto branches = step1_remove_negatives(only("a < b & !Convex(f)[a, b]"));
  ASSERT_FALSE(branches.empty());
  for (const auto& b : branches) {
    std::size_t apps = 0;
    for (const auto& l : b.literals()) apps += l.kind == LitKind::App;
    EXPECT_GE(apps, 3u) << to_string(b);
  }
}

TEST(Reducer, ContextNamesSamplesAndTails) {
  auto reds = reduce(only("a < b & Up(f)[a, b]"));
  ASSERT_EQ(reds.size(), 1u);
  const auto& ctx = reds.front().context;
  EXPECT_EQ(ctx.chain, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(ctx.y.at("f").size(), 2u);
  EXPECT_EQ(ctx.t.at("f").size(), 2u);
  EXPECT_NE(ctx.gamma_left.at("f"), ctx.gamma_right.at("f"));
}

TEST(Reducer, CoverageOfBounds) {
  auto red = reduce(only("a < b & b < c & Up(f)[-inf, b] & Up(f)[c, a]")).front();
  for (const auto& l : red.evaluated.literals()) {
    if (l.kind != LitKind::Shape) continue;
    Coverage cov = coverage(l, red.context);
    if (!l.lo.is_var()) {
      EXPECT_TRUE(cov.left_tail);
      EXPECT_EQ(cov.last, 1u);
    } else {
      EXPECT_TRUE(cov.vacuous);
    }
  }
}

TEST(Reducer, Step3OutputIsArithmetic) {
  support::Rng rng(23);
  for (int i = 0; i < 60; ++i) {
    Conjunct c = support::random_snf_conjunct(rng);
    ReduceOptions opts;
    opts.arrangement_limit = 500;
    std::vector<Reduction> reds;
    try {
      reds = reduce(c, opts);
    } catch (const ArrangementExplosion&) {
      continue;
    } catch (const BranchExplosion&) {
      continue;
    }
    for (const auto& r : reds) {
      std::string smt = emit_exchange(r.formula);
      ASSERT_EQ(support::exchange_offence(smt), "") << to_string(c);
      for (const auto& f : r.context.functions)
        for (const auto& v : r.formula.variables()) ASSERT_NE(v, f);
    }
  }
}

TEST(Reducer, ExchangeIsByteStable) {
  auto c = only("a < b & f(a) = f(b) & (D[f] > 0)[a, b] & !Concave(g)[a, +inf]");
  auto first = reduce(c), second = reduce(c);
  ASSERT_EQ(first.size(), second.size());
  for (std::size_t i = 0; i < first.size(); ++i)
    EXPECT_EQ(emit_exchange(first[i].formula), emit_exchange(second[i].formula));
}

TEST(Reducer, MissingChainIsReported) {
  auto red = reduce(only("a < b & Up(f)[a, b]")).front();
  // Dropping the chain links leaves step 3 without order literals.
  Conjunct stripped;
  for (const auto& l : red.evaluated.literals())
    if (l.kind != LitKind::Sum && l.kind != LitKind::Pos) stripped.add(l);
  EXPECT_THROW(step3_remove_functionals(stripped, red.context), MissingChain);
}

TEST(Reducer, RisingBranchOfRolleIsRefuted) {
  // With f'(x) > 0 on [a, b] the mean slope is positive, contradicting
  // f(a) = f(b): no witness makes both hold.
  auto reds = reduce(only("a < b & f(a) = f(b) & (D[f] > 0)[a, b]"));
  ASSERT_EQ(reds.size(), 1u);
  EXPECT_NE(search_internal(reds.front().formula).status, SolveStatus::Sat);
  if (!support::solver_available()) GTEST_SKIP() << "no external solver";
  ExternalConfig cfg;
  EXPECT_EQ(solve_external(reds.front().formula, cfg).status, SolveStatus::Unsat);
}

TEST(Reducer, ShiftedApplicationIsSatisfiable) {
  // y = f(x + 1) holds for any f: the reduction must stay satisfiable.
  auto c = only("y = f(x + 1) & y > 3 & x > 5");
  bool sat = false;
  for (const auto& r : reduce(c)) sat = sat || search_internal(r.formula).status == SolveStatus::Sat;
  EXPECT_TRUE(sat);
}

TEST(Reducer, ShiftedApplicationAgainstConstantFunction) {
  // f is constant 1, so y = f(x + 1) forces y = 1.
  auto c = only("y = f(x + 1) & y > 3 & (D[f] = 0)[-inf, +inf] & f(0) = 1");
  for (const auto& r : reduce(c)) EXPECT_NE(search_internal(r.formula).status, SolveStatus::Sat);
  if (!support::solver_available()) GTEST_SKIP() << "no external solver";
  for (const auto& r : reduce(c)) EXPECT_EQ(solve_external(r.formula, {}).status, SolveStatus::Unsat);
}

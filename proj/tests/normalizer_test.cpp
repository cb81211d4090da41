#include <gtest/gtest.h>

#include "rdf/error.hpp"
#include "rdf/normalizer.hpp"
#include "rdf/parser.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace rdf;

TEST(Normalizer, LinearityFormulaHasTwoBranches) {
  auto f = parse("(D[f] = t)[a,b] & (!Convex(f)[a,b] | !Concave(f)[a,b])");
  EXPECT_EQ(to_dnf(f).size(), 2u);
}

TEST(Normalizer, DnfMatchesTruthTable) {
  support::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    auto f = support::random_formula(rng, 10);
    auto dnf = to_dnf(f);
    ASSERT_EQ(support::truth_table_disagreements(f, dnf), 0u) << print(f);
  }
}

TEST(Normalizer, BranchCap) {
  std::string text;
  for (int i = 0; i < 16; ++i) {
    if (i) text += " & ";
    text += "(x" + std::to_string(i) + " > 0 | y" + std::to_string(i) + " > 0)";
  }
  EXPECT_THROW(to_dnf(parse(text), 1000), BranchExplosion);
  EXPECT_EQ(to_dnf(parse(text), 1u << 16).size(), 1u << 16);
}

TEST(Normalizer, OutputsAreSnfAndFixpoints) {
  support::Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    auto f = support::random_formula(rng, 6);
    for (const auto& c : normalize(f)) {
      std::string why;
      ASSERT_TRUE(is_snf(c, &why)) << print(f) << ": " << why;
      auto again = normalize(c);
      ASSERT_EQ(again.size(), 1u) << to_string(c);
      ASSERT_EQ(again.front(), c) << to_string(c);
    }
  }
}

TEST(Normalizer, CompoundTermsAreFlattened) {
  auto cs = normalize(parse("f(x + 1) = y * y & (D[g] > 2)[x, x + 1]"));
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_TRUE(is_snf(cs.front()));
  // Functional literals refer to variables only.
  for (const auto& l : cs.front().literals()) {
    if (l.kind == LitKind::DerRel) {
      EXPECT_TRUE(l.lo.is_var() && l.hi.is_var());
    }
  }
}

TEST(Normalizer, NegatedArithmeticIsEliminated) {
  for (const auto& c : normalize(parse("!(x = y) & !(x > 0)"))) {
    for (const auto& l : c.literals()) EXPECT_FALSE(l.negated) << to_string(l);
  }
}

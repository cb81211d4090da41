#include <gtest/gtest.h>

#include <set>

#include "rdf/backend.hpp"
#include "rdf/error.hpp"
#include "rdf/parser.hpp"
#include "rdf/witness.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace rdf;

// Every arrangement partitions the variables, and consistent arrangements
// never contradict a forced fact.
TEST(Property, ArrangementsPartitionVariables) {
  support::Rng rng(41);
  for (int i = 0; i < 60; ++i) {
    Conjunct c = support::random_snf_conjunct(rng);
    std::vector<Conjunct> branches;
    try {
      branches = step1_remove_negatives(c);
    } catch (const BranchExplosion&) {
      continue;
    }
    for (const auto& b : branches) {
      OrderFacts facts(b);
      if (facts.contradictory()) continue;
      auto vars = arrangement_vars(b);
      std::vector<Arrangement> arrs;
      try {
        arrs = consistent_arrangements(vars, facts, 5000);
      } catch (const ArrangementExplosion&) {
        continue;
      }
      std::set<std::string> expected(vars.begin(), vars.end());
      for (const auto& a : arrs) {
        ASSERT_FALSE(contradicts(a, facts)) << to_string(a);
        std::multiset<std::string> seen;
        for (const auto& block : a.blocks) seen.insert(block.begin(), block.end());
        ASSERT_EQ(std::set<std::string>(seen.begin(), seen.end()), expected);
        ASSERT_EQ(seen.size(), expected.size());
      }
    }
  }
}

// Normalized conjuncts print and re-normalize to themselves.
TEST(Property, NormalFormSurvivesPrinting) {
  support::Rng rng(43);
  for (int i = 0; i < 100; ++i) {
    auto f = support::random_formula(rng, 5);
    for (const auto& c : normalize(f)) {
      auto again = normalize(parse(print(c.to_formula())));
      ASSERT_EQ(again.size(), 1u) << print(c.to_formula());
      ASSERT_TRUE(is_snf(again.front()));
    }
  }
}

// Analytic shape check of fitted pieces agrees with dense sampling.
TEST(Property, AnalyticAndSampledSegmentChecksAgree) {
  support::Rng rng(47);
  for (std::size_t k = 0; k < 120; ++k) {
    auto s = support::feasible_segment(rng, k);
    Piece p = fit_segment(s.v_lo, s.v_hi, s.y_lo, s.y_hi, s.t_lo, s.t_hi, s.req);
    EXPECT_EQ(segment_violation(p, s.y_lo, s.y_hi, s.req).empty(), support::check_fitted_segment(p, s, 3000).empty())
        << s.variant;
  }
}

// Search witnesses of random reductions give certified models whose
// numeric part is the witness itself.
TEST(Property, SatReductionsYieldCertifiedModels) {
  support::Rng rng(53);
  SearchBudget budget;
  budget.steps = 800;
  std::size_t sat = 0;
  for (int i = 0; i < 25; ++i) {
    Conjunct c = support::random_snf_conjunct(rng);
    std::vector<Reduction> reds;
    ReduceOptions opts;
    opts.arrangement_limit = 2000;
    try {
      reds = reduce(c, opts);
    } catch (const ArrangementExplosion&) {
      continue;
    } catch (const BranchExplosion&) {
      continue;
    }
    for (std::size_t k = 0; k < reds.size() && k < 6; ++k) {
      auto s = search_internal(reds[k].formula, budget);
      if (s.status != SolveStatus::Sat) continue;
      ++sat;
      ExplicitModel m;
      ASSERT_NO_THROW(m = build_model(reds[k], *s.witness)) << to_string(c);
      for (const auto& [v, q] : *s.witness) ASSERT_EQ(m.numeric.at(v), q);
      for (const auto& [name, f] : m.functional) ASSERT_LT(f.glue_error(), 1e-9) << name;
      auto report = certify(c, m);
      ASSERT_NE(report.status, CertStatus::Failed) << to_string(c) << "\n" << report.violated;
    }
  }
  EXPECT_GT(sat, 0u);
}

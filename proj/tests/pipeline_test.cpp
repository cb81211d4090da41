#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>

#include "rdf/parser.hpp"
#include "rdf/pipeline.hpp"
#include "support/oracles.hpp"

using namespace rdf;

namespace {

std::filesystem::path corpus() {
  const char* dir = std::getenv("RDF_CORPUS");
  return dir ? dir : "corpus";
}

PipelineConfig offline() {
  PipelineConfig c;
  c.use_solver = false;
  return c;
}

}  // namespace

TEST(Pipeline, SatWithCertifiedModel) {
  auto f = parse("a < b & StrictUp(f)[a, b]");
  auto d = decide(f, offline());
  ASSERT_EQ(d.status, SolveStatus::Sat);
  ASSERT_TRUE(d.model);
  EXPECT_EQ(evaluate(f, *d.model), Truth::True);
}

TEST(Pipeline, DisjunctionUsesAnyBranch) {
  auto f = parse("(x > 0 & x < 0) | ((D[f] > 1)[a, +inf] & f(a) = 0 & f(b) = 0 & a < b) | Convex(g)[c, +inf]");
  auto d = decide(f, offline());
  ASSERT_EQ(d.status, SolveStatus::Sat);
  EXPECT_EQ(evaluate(f, *d.model), Truth::True);
}

TEST(Pipeline, NoSolverNeverClaimsUnsat) {
  auto d = decide(parse_file(corpus() / "rolle.rdf"), offline());
  EXPECT_EQ(d.status, SolveStatus::Unknown);
}

TEST(Pipeline, TriviallyContradictoryOrderIsUnsatWithoutSolver) {
  // Order facts refute every branch before any solver call.
  auto d = decide(parse("b = a + w & w > 0 & a = b + v & v > 0 & Up(f)[a, b]"), offline());
  EXPECT_EQ(d.status, SolveStatus::Unsat);
  EXPECT_TRUE(d.tasks.empty());
}

TEST(Pipeline, ExamplesWithSolver) {
  if (!support::solver_available()) GTEST_SKIP() << "no external solver";
  for (const char* name : {"rolle.rdf", "linear.rdf"}) {
    auto d = decide(parse_file(corpus() / name), {});
    EXPECT_EQ(d.status, SolveStatus::Unsat) << name;
    for (const auto& t : d.tasks) EXPECT_FALSE(t.external.transcript.empty());
  }
}

TEST(Pipeline, ParallelAgreesWithSequential) {
  PipelineConfig par = offline();
  par.jobs = 4;
  for (const char* text : {"a < b & StrictUp(f)[a, b]", "a < b & c < a & (f > g)[c, b] & Concave(f)[-inf, +inf]"}) {
    EXPECT_EQ(decide(parse(text), offline()).status, decide(parse(text), par).status) << text;
  }
}

TEST(Pipeline, MissingConfiguredSolver) {
  PipelineConfig c;
  c.solver_command = "/nonexistent/solver {file}";
  auto d = decide(parse("a < b & f(a) = f(b) & (D[f] > 0)[a, b]"), c);
  EXPECT_TRUE(d.solver_missing);
  EXPECT_EQ(d.status, SolveStatus::Unknown);
}

TEST(Pipeline, CheckFormulaFillsOpenSymbols) {
  ExplicitModel m;
  EXPECT_EQ(check_formula(parse("x = 0 | Up(f)[y, +inf]"), m), Truth::True);
  EXPECT_TRUE(m.numeric.count("y"));
  EXPECT_TRUE(m.functional.count("f"));
}

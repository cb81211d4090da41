#include <benchmark/benchmark.h>

#include "rdf/backend.hpp"
#include "rdf/parser.hpp"
#include "rdf/pipeline.hpp"
#include "rdf/witness.hpp"

using namespace rdf;

namespace {

const char* kRolle =
    "a < b & f(a) = f(b) & D[f](a) != 0 & D[f](b) != 0 & ((D[f] > 0)[a,b] | (D[f] < 0)[a,b])";

void BM_EnumerateArrangements(benchmark::State& state) {
  std::vector<std::string> vars;
  for (int i = 0; i < state.range(0); ++i) vars.push_back("v" + std::to_string(i));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_arrangements(vars));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(fubini(static_cast<unsigned>(state.range(0)))));
}
BENCHMARK(BM_EnumerateArrangements)->DenseRange(2, 6);

void BM_Parse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse(kRolle));
}
BENCHMARK(BM_Parse);

void BM_Normalize(benchmark::State& state) {
  auto f = parse(kRolle);
  for (auto _ : state) benchmark::DoNotOptimize(normalize(f));
}
BENCHMARK(BM_Normalize);

void BM_Reduce(benchmark::State& state) {
  auto cs = normalize(parse(kRolle));
  for (auto _ : state)
    for (const auto& c : cs) benchmark::DoNotOptimize(reduce(c));
}
BENCHMARK(BM_Reduce);

void BM_EmitExchange(benchmark::State& state) {
  auto red = reduce(normalize(parse(kRolle)).front()).front();
  for (auto _ : state) benchmark::DoNotOptimize(emit_exchange(red.formula));
}
BENCHMARK(BM_EmitExchange);

void BM_SearchSat(benchmark::State& state) {
  auto red = reduce(normalize(parse("a < b & b < c & StrictConvex(f)[a, c] & (f > g)[a, c]")).front()).front();
  for (auto _ : state) benchmark::DoNotOptimize(search_internal(red.formula));
}
BENCHMARK(BM_SearchSat)->Unit(benchmark::kMillisecond);

void BM_FitSegment(benchmark::State& state) {
  ShapeRequirements req;
  req.strict_convex = true;
  req.strict_up = true;
  for (auto _ : state) benchmark::DoNotOptimize(fit_segment(0, 1, 0, 1, 0.1, 3, req));
}
BENCHMARK(BM_FitSegment);

void BM_DecideStrictUp(benchmark::State& state) {
  auto f = parse("a < b & StrictUp(f)[a, b]");
  PipelineConfig cfg;
  cfg.use_solver = false;
  cfg.eval.samples = static_cast<std::size_t>(state.range(0));
  cfg.build.samples = cfg.eval.samples;
  for (auto _ : state) benchmark::DoNotOptimize(decide(f, cfg));
}
BENCHMARK(BM_DecideStrictUp)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

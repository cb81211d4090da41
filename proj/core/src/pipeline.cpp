#include "rdf/pipeline.hpp"

#include <atomic>
#include <filesystem>
#include <mutex>
#include <thread>

#include "rdf/error.hpp"

#include <unistd.h>

namespace rdf {

std::vector<Conjunct> prepare(const FormulaPtr& formula, const PipelineConfig& config) {
  NormalizeOptions opts;
  opts.branch_cap = config.branch_cap;
  return normalize(desugar_function_constants(formula), opts);
}

Truth check_formula(const FormulaPtr& formula, ExplicitModel& model, const EvalOptions& options) {
  for (const auto& v : numeric_vars(formula)) model.numeric.emplace(v, Rational(0));
  for (const auto& f : function_vars(formula)) {
    if (FuncVar{f}.is_constant()) continue;
    model.functional.emplace(f, PiecewiseModel::affine(0, 0));
  }
  return evaluate(formula, model, options);
}

namespace {

struct Task {
  std::size_t conjunct = 0;
  std::size_t index = 0;  // within the conjunct
  Reduction reduction;
};

struct Shared {
  std::atomic<bool> solver_missing{false};
  std::atomic<bool> protocol_error{false};
  std::atomic<bool> done{false};
  std::mutex mutex;
  std::optional<ExplicitModel> model;
  CertificationReport report;
};

void run_task(const Task& task, const FormulaPtr& formula, const PipelineConfig& config, Shared& shared,
              TaskOutcome& out) {
  const Reduction& red = task.reduction;
  out.conjunct = task.conjunct;
  out.branch = red.branch;
  out.arrangement = to_string(red.ordered.arrangement);

  std::optional<std::map<std::string, Rational>> witness;
  if (config.use_solver && !shared.solver_missing) {
    ExternalConfig ec;
    ec.command = config.solver_command;
    ec.timeout_seconds = config.timeout_seconds;
    ec.output_dir = config.output_dir;
    ec.stem = "c" + std::to_string(task.conjunct) + "_b" + std::to_string(red.branch) + "_a" +
              std::to_string(task.index);
    try {
      out.external = solve_external(red.formula, ec);
      for (const auto& d : out.external.diagnostics) out.diagnostics.push_back(d);
      if (out.external.status == SolveStatus::Unsat) {
        out.status = SolveStatus::Unsat;
        return;
      }
      if (out.external.status == SolveStatus::Sat) {
        if (out.external.validated) {
          witness = out.external.witness;
        } else {
          out.diagnostics.push_back("solver witness not validated; trying internal search");
        }
      }
    } catch (const SolverError& e) {
      if (e.kind() == SolverErrorKind::SolverNotFound) {
        shared.solver_missing = true;
      } else {
        shared.protocol_error = true;
      }
      out.diagnostics.push_back(e.what());
    }
  }
  if (!witness) {
    out.search = search_internal(red.formula, config.search);
    if (out.search->status == SolveStatus::Sat) witness = out.search->witness;
  }
  if (!witness) return;

  ExplicitModel model;
  try {
    model = build_model(red, *witness, config.build);
  } catch (const ModelConstructionFailure& e) {
    out.diagnostics.push_back(e.what());
    return;
  }
  CertificationReport report = combine(certify(red.ordered.conjunct, model, config.eval),
                                       certify(red.positive, model, config.eval));
  Truth whole = check_formula(formula, model, config.eval);
  out.certification = whole == Truth::True ? CertStatus::Certified
                      : whole == Truth::Borderline ? CertStatus::Borderline
                                                   : CertStatus::Failed;
  if (whole != Truth::True) {
    out.diagnostics.push_back(std::string("model does not certify the input formula (") + to_string(whole) + ")");
    return;
  }
  out.status = SolveStatus::Sat;
  std::lock_guard lock(shared.mutex);
  if (!shared.model) {
    shared.model = std::move(model);
    shared.report = std::move(report);
    shared.done = true;
  }
}

}  // namespace

namespace {

// One scratch directory per run; task stems keep the files apart.
std::string run_dir() {
  namespace fs = std::filesystem;
  static std::atomic<unsigned> counter{0};
  fs::path p = fs::temp_directory_path() /
               ("rdfsat-" + std::to_string(::getpid()) + "-run" + std::to_string(counter++));
  fs::create_directories(p);
  return p.string();
}

}  // namespace

Decision decide(const FormulaPtr& formula, const PipelineConfig& given) {
  PipelineConfig config = given;
  Decision decision;
  auto conjuncts = prepare(formula, config);
  decision.conjuncts = conjuncts.size();

  ReduceOptions ro;
  ro.branch_cap = config.branch_cap;
  ro.arrangement_limit = config.arrangement_limit;
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < conjuncts.size(); ++c) {
    auto reds = reduce(conjuncts[c], ro);
    for (std::size_t k = 0; k < reds.size(); ++k) tasks.push_back({c, k, std::move(reds[k])});
  }
  if (config.use_solver && config.output_dir.empty() && !tasks.empty()) config.output_dir = run_dir();

  std::vector<TaskOutcome> outcomes(tasks.size());
  std::vector<char> ran(tasks.size(), 0);
  Shared shared;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      if (shared.done) return;
      std::size_t i = next++;
      if (i >= tasks.size()) return;
      run_task(tasks[i], formula, config, shared, outcomes[i]);
      ran[i] = 1;
    }
  };
  std::size_t jobs = std::max<std::size_t>(1, std::min(config.jobs, tasks.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  decision.solver_missing = shared.solver_missing;
  decision.protocol_error = shared.protocol_error;
  if (decision.solver_missing) decision.diagnostics.push_back("external solver unavailable; internal search only");
  for (std::size_t i = 0; i < tasks.size(); ++i)
    if (ran[i]) decision.tasks.push_back(std::move(outcomes[i]));

  if (shared.model) {
    decision.status = SolveStatus::Sat;
    decision.model = std::move(shared.model);
    decision.report = std::move(shared.report);
    return decision;
  }
  bool all_unsat = decision.tasks.size() == tasks.size();
  for (const auto& t : decision.tasks) all_unsat = all_unsat && t.status == SolveStatus::Unsat;
  decision.status = all_unsat ? SolveStatus::Unsat : SolveStatus::Unknown;
  return decision;
}

}  // namespace rdf

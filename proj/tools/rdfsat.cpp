// rdfsat: satisfiability checker for RDF formulas.
#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "rdf/error.hpp"
#include "rdf/parser.hpp"
#include "rdf/pipeline.hpp"

namespace fs = std::filesystem;
using namespace rdf;

namespace {

enum Exit { kSat = 0, kUnsat = 1, kUnknown = 2, kUsage = 3, kBackend = 4 };

struct RunConfig {
  std::string input;
  std::string solver;
  bool no_solver = false;
  double timeout = 30.0;
  std::size_t arrangement_limit = 47293;
  std::size_t branch_cap = kDefaultBranchCap;
  std::string out_dir;
  std::size_t samples = 10000;
  double tolerance = 1e-6;
  std::size_t jobs = 1;
};

FormulaPtr load(const std::string& path) {
  if (path != "-") return parse_file(path);
  std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
  return parse(text);
}

PipelineConfig pipeline_config(const RunConfig& rc) {
  PipelineConfig pc;
  pc.use_solver = !rc.no_solver;
  pc.solver_command = rc.solver;
  pc.timeout_seconds = rc.timeout;
  pc.output_dir = rc.out_dir;
  pc.branch_cap = rc.branch_cap;
  pc.arrangement_limit = rc.arrangement_limit;
  pc.jobs = rc.jobs;
  pc.eval.samples = rc.samples;
  pc.eval.tolerance = rc.tolerance;
  pc.build.samples = rc.samples;
  pc.build.tolerance = rc.tolerance;
  return pc;
}

bool solver_configured(const RunConfig& rc) { return !rc.solver.empty() || std::getenv("RDF_SOLVER") != nullptr; }

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  out << text;
  if (!out) throw Error("cannot write " + path.string());
}

int exit_for(const Decision& d, const RunConfig& rc) {
  switch (d.status) {
    case SolveStatus::Sat: return kSat;
    case SolveStatus::Unsat: return kUnsat;
    case SolveStatus::Unknown: break;
  }
  if (d.protocol_error || (d.solver_missing && solver_configured(rc))) return kBackend;
  return kUnknown;
}

void report_tasks(const Decision& d) {
  for (const auto& t : d.tasks) {
    std::cerr << "task c" << t.conjunct << " b" << t.branch << " " << t.arrangement << ": " << to_string(t.status);
    if (t.certification) std::cerr << " (" << to_string(*t.certification) << ")";
    std::cerr << "\n";
    for (const auto& diag : t.diagnostics) std::cerr << "  " << diag << "\n";
  }
  for (const auto& diag : d.diagnostics) std::cerr << diag << "\n";
}

int cmd_check(const RunConfig& rc, bool verbose) {
  Decision d = decide(load(rc.input), pipeline_config(rc));
  if (verbose) report_tasks(d);
  std::cout << to_string(d.status) << "\n";
  if (d.status == SolveStatus::Sat) {
    std::cout << "certification: " << to_string(CertStatus::Certified) << "\n";
    std::string doc = witness_to_json(*d.model, &d.report);
    if (!rc.out_dir.empty()) {
      fs::path p = fs::path(rc.out_dir) / "witness.json";
      write_file(p, doc + "\n");
      std::cout << "witness: " << p.string() << "\n";
    }
  } else if (d.status == SolveStatus::Unsat) {
    for (const auto& t : d.tasks)
      if (!t.external.transcript.empty()) std::cout << "transcript: " << t.external.transcript << "\n";
  } else {
    for (const auto& diag : d.diagnostics) std::cerr << diag << "\n";
  }
  return exit_for(d, rc);
}

int cmd_model(const RunConfig& rc) {
  Decision d = decide(load(rc.input), pipeline_config(rc));
  if (d.status != SolveStatus::Sat) {
    std::cerr << "no model: " << to_string(d.status) << "\n";
    return exit_for(d, rc);
  }
  std::string doc = witness_to_json(*d.model, &d.report);
  if (rc.out_dir.empty()) {
    std::cout << doc << "\n";
  } else {
    write_file(fs::path(rc.out_dir) / "witness.json", doc + "\n");
  }
  for (const auto& l : d.report.literals) {
    std::ostream& os = rc.out_dir.empty() ? std::cerr : std::cout;
    os << to_string(l.truth) << "  " << l.literal << "  margin " << l.margin << "\n";
  }
  return kSat;
}

int cmd_normalize(const RunConfig& rc) {
  auto conjuncts = prepare(load(rc.input), pipeline_config(rc));
  for (const auto& c : conjuncts) std::cout << to_string(c) << "\n";
  return kSat;
}

int cmd_arrangements(const RunConfig& rc) {
  auto conjuncts = prepare(load(rc.input), pipeline_config(rc));
  for (std::size_t c = 0; c < conjuncts.size(); ++c) {
    auto branches = step1_remove_negatives(conjuncts[c], rc.branch_cap);
    for (std::size_t b = 0; b < branches.size(); ++b) {
      OrderFacts facts(branches[b]);
      auto vars = arrangement_vars(branches[b]);
      std::cout << "conjunct " << c << " branch " << b << " vars";
      for (const auto& v : vars) std::cout << " " << v;
      if (facts.contradictory()) {
        std::cout << ": contradictory order facts\n";
        continue;
      }
      auto arrs = consistent_arrangements(vars, facts, rc.arrangement_limit);
      std::cout << ": " << arrs.size() << " arrangements\n";
      for (const auto& a : arrs) std::cout << "  " << to_string(a) << "\n";
    }
  }
  return kSat;
}

int cmd_reduce(const RunConfig& rc) {
  auto conjuncts = prepare(load(rc.input), pipeline_config(rc));
  fs::path dir = rc.out_dir.empty() ? fs::path("rdf-reduce") : fs::path(rc.out_dir);
  ReduceOptions ro;
  ro.branch_cap = rc.branch_cap;
  ro.arrangement_limit = rc.arrangement_limit;
  for (std::size_t c = 0; c < conjuncts.size(); ++c) {
    auto reds = reduce(conjuncts[c], ro);
    for (std::size_t k = 0; k < reds.size(); ++k) {
      fs::path p = dir / ("c" + std::to_string(c) + "_b" + std::to_string(reds[k].branch) + "_a" + std::to_string(k) + ".smt2");
      write_file(p, emit_exchange(reds[k].formula));
      std::cout << p.string() << "  " << to_string(reds[k].ordered.arrangement) << "\n";
    }
  }
  return kSat;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision procedure for the RDF fragment of real analysis"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value file with option defaults");

  RunConfig rc;
  bool verbose = false;
  app.add_option("--solver", rc.solver, "solver command template, {file} is the script path");
  app.add_flag("--no-solver", rc.no_solver, "use the internal search only");
  app.add_option("--timeout", rc.timeout, "solver timeout in seconds")->check(CLI::PositiveNumber);
  app.add_option("--arrangement-cap", rc.arrangement_limit, "maximum consistent arrangements per branch")
      ->check(CLI::PositiveNumber);
  app.add_option("--branch-cap", rc.branch_cap, "maximum normalization branches")->check(CLI::PositiveNumber);
  app.add_option("-o,--out", rc.out_dir, "output directory");
  app.add_option("--samples", rc.samples, "sample points per interval")->check(CLI::PositiveNumber);
  app.add_option("--tolerance", rc.tolerance, "certification tolerance")->check(CLI::Range(0.0, 1.0));
  app.add_option("-j,--jobs", rc.jobs, "parallel tasks")->check(CLI::PositiveNumber);
  app.add_flag("-v,--verbose", verbose, "per-task report on standard error");

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {{"check", "decide satisfiability"},
                      {"model", "print a certified witness document"},
                      {"reduce", "write exchange files per branch and arrangement"},
                      {"normalize", "print the normalized conjuncts"},
                      {"arrangements", "print the consistent arrangements"}};
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("input", rc.input, "formula file, - for standard input")->required();
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }
  if (!(rc.tolerance > 0 && rc.tolerance < 1)) {
    std::cerr << "tolerance must lie in (0, 1)\n";
    return kUsage;
  }

  std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "check") return cmd_check(rc, verbose);
    if (cmd == "model") return cmd_model(rc);
    if (cmd == "reduce") return cmd_reduce(rc);
    if (cmd == "normalize") return cmd_normalize(rc);
    return cmd_arrangements(rc);
  } catch (const SyntaxError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const BranchExplosion& e) {
    std::cerr << e.what() << "\n";
    return kUnknown;
  } catch (const ArrangementExplosion& e) {
    std::cerr << e.what() << "\n";
    return kUnknown;
  } catch (const SolverError& e) {
    std::cerr << e.what() << "\n";
    return kBackend;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

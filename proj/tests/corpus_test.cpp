// Runs every corpus/*.rdf file against its .expected verdict.
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "rdf/parser.hpp"
#include "rdf/pipeline.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;
using namespace rdf;

int main(int argc, char** argv) {
  fs::path dir = argc > 1 ? argv[1] : "corpus";
  if (!fs::is_directory(dir)) {
    std::cout << "FAIL no corpus directory " << dir << "\n";
    return 1;
  }
  bool solver = support::solver_available();
  PipelineConfig cfg;
  cfg.use_solver = solver;
  std::cout << "external solver: " << (solver ? "available" : "missing") << "\n";

  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".rdf") files.push_back(e.path());
  std::sort(files.begin(), files.end());

  int failures = 0;
  for (const auto& f : files) {
    std::ifstream in(fs::path(f).replace_extension(".expected"));
    std::string expected;
    in >> expected;
    std::string got;
    try {
      got = to_string(decide(parse_file(f), cfg).status);
    } catch (const std::exception& e) {
      got = std::string("error: ") + e.what();
    }
    // Without a solver an unsat expectation degrades to unknown.
    bool ok = got == expected || (!solver && expected == "unsat" && got == "unknown");
    std::cout << (ok ? "PASS " : "FAIL ") << f.filename().string() << ": expected " << expected << ", got " << got
              << "\n";
    failures += ok ? 0 : 1;
  }
  if (files.empty()) {
    std::cout << "FAIL no corpus files in " << dir << "\n";
    return 1;
  }
  return failures == 0 ? 0 : 1;
}

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "rdf/backend.hpp"
#include "rdf/error.hpp"

namespace fs = std::filesystem;

namespace rdf {

std::string default_solver_command() {
  const char* env = std::getenv("RDF_SOLVER");
  std::string bin = env && *env ? env : "z3";
  return "'" + bin + "' {file}";
}

namespace {

std::string fresh_temp_dir() {
  static std::atomic<unsigned> counter{0};
  fs::path p = fs::temp_directory_path() /
               ("rdfsat-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  fs::create_directories(p);
  return p.string();
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string substitute(std::string tmpl, const std::string& file) {
  const std::string key = "{file}";
  if (tmpl.find(key) == std::string::npos) return tmpl + " '" + file + "'";
  for (std::size_t pos; (pos = tmpl.find(key)) != std::string::npos;) tmpl.replace(pos, key.size(), "'" + file + "'");
  return tmpl;
}

std::string solver_name(const std::string& command) {
  std::string first = command.substr(0, command.find(' '));
  if (first.size() >= 2 && first.front() == '\'' && first.back() == '\'') first = first.substr(1, first.size() - 2);
  return fs::path(first).filename().string();
}

struct RunOutcome {
  bool timed_out = false;
  int exit_code = 0;
};

RunOutcome run_command(const std::string& command, const fs::path& output, double timeout) {
  int fd = ::open(output.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0) throw Error("cannot write " + output.string());
  pid_t pid = ::fork();
  if (pid < 0) {
    ::close(fd);
    throw Error("fork failed");
  }
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(fd, STDOUT_FILENO);
    ::dup2(fd, STDERR_FILENO);
    ::close(fd);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(fd);
  auto deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout);
  int status = 0;
  for (;;) {
    pid_t r = ::waitpid(pid, &status, WNOHANG);
    if (r == pid) break;
    if (std::chrono::steady_clock::now() >= deadline) {
      ::kill(-pid, SIGKILL);
      ::kill(pid, SIGKILL);
      ::waitpid(pid, &status, 0);
      return {true, -1};
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
  return {false, WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status)};
}

}  // namespace

SolveResult solve_external(const TarskiFormula& formula, const ExternalConfig& config) {
  SolveResult result;
  std::string command = config.command.empty() ? default_solver_command() : config.command;
  result.solver = solver_name(command);

  fs::path dir = config.output_dir.empty() ? fresh_temp_dir() : config.output_dir;
  fs::create_directories(dir);
  fs::path script = dir / (config.stem + ".smt2");
  fs::path transcript = dir / (config.stem + ".out");
  {
    std::ofstream out(script, std::ios::binary);
    out << emit_exchange(formula);
  }
  result.transcript = transcript.string();

  if (config.timeout_seconds <= 0) {
    result.diagnostics.push_back("SolverTimeout: timeout of 0 seconds");
    return result;
  }

  auto start = std::chrono::steady_clock::now();
  RunOutcome run = run_command(substitute(command, script.string()), transcript, config.timeout_seconds);
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (run.timed_out) {
    result.diagnostics.push_back("SolverTimeout: no answer within " + std::to_string(config.timeout_seconds) + " s");
    return result;
  }
  std::string text = read_file(transcript);
  if (run.exit_code == 127 || run.exit_code == 126) {
    throw SolverError(SolverErrorKind::SolverNotFound, "cannot execute solver command: " + command);
  }

  SolverOutput parsed = parse_solver_output(text);
  result.status = parsed.status;
  if (parsed.status != SolveStatus::Sat) return result;

  std::map<std::string, Rational> witness = parsed.model;
  // Variables the solver left out are unconstrained; any value works.
  for (const auto& v : formula.variables()) witness.emplace(v, Rational(0));
  result.witness = witness;
  if (!parsed.unreadable.empty()) {
    result.diagnostics.push_back("model has non-rational values (" + parsed.unreadable.front() + ", ...)");
    return result;
  }
  result.validated = evaluate_exact(formula, witness);
  if (!result.validated) result.diagnostics.push_back("solver model fails exact evaluation");
  return result;
}

}  // namespace rdf

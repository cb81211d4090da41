#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <set>

#include "rdf/backend.hpp"
#include "rdf/error.hpp"
#include "rdf/parser.hpp"

namespace rdf::support {

std::vector<std::vector<int>> brute_force_weak_orders(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> rank(static_cast<std::size_t>(n), 0);
  // Odometer over all n^n maps; keep those whose image is a prefix 0..k-1.
  for (;;) {
    std::set<int> used(rank.begin(), rank.end());
    bool prefix = used.empty() || (*used.begin() == 0 && *used.rbegin() == static_cast<int>(used.size()) - 1);
    if (prefix) out.push_back(rank);
    int i = 0;
    while (i < n && ++rank[static_cast<std::size_t>(i)] == n) rank[static_cast<std::size_t>(i++)] = 0;
    if (i == n) break;
  }
  return out;
}

namespace {

void collect(const FormulaPtr& f, std::set<std::string>& keys) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Formula::AtomNode>) {
          keys.insert(print(n.atom));
        } else if constexpr (std::is_same_v<T, Formula::Not>) {
          collect(n.sub, keys);
        } else {
          collect(n.lhs, keys);
          collect(n.rhs, keys);
        }
      },
      f->node);
}

}  // namespace

std::vector<std::string> atom_keys(const FormulaPtr& formula) {
  std::set<std::string> keys;
  collect(formula, keys);
  return {keys.begin(), keys.end()};
}

bool eval_propositional(const FormulaPtr& f, const std::map<std::string, bool>& value) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Formula::AtomNode>) {
          return value.at(print(n.atom));
        } else if constexpr (std::is_same_v<T, Formula::Not>) {
          return !eval_propositional(n.sub, value);
        } else if constexpr (std::is_same_v<T, Formula::And>) {
          return eval_propositional(n.lhs, value) && eval_propositional(n.rhs, value);
        } else {
          return eval_propositional(n.lhs, value) || eval_propositional(n.rhs, value);
        }
      },
      f->node);
}

bool eval_dnf(const std::vector<Branch>& dnf, const std::map<std::string, bool>& value) {
  return std::any_of(dnf.begin(), dnf.end(), [&](const Branch& b) {
    return std::all_of(b.begin(), b.end(),
                       [&](const SignedAtom& s) { return value.at(print(s.atom)) == s.positive; });
  });
}

std::size_t truth_table_disagreements(const FormulaPtr& formula, const std::vector<Branch>& dnf) {
  auto keys = atom_keys(formula);
  std::size_t bad = 0;
  for (std::uint64_t row = 0; row < (std::uint64_t{1} << keys.size()); ++row) {
    std::map<std::string, bool> value;
    for (std::size_t i = 0; i < keys.size(); ++i) value[keys[i]] = (row >> i) & 1;
    if (eval_propositional(formula, value) != eval_dnf(dnf, value)) ++bad;
  }
  return bad;
}

std::string exchange_offence(const std::string& smt) {
  static const std::regex decl(R"(\(declare-fun (\S+) \(([^)]*)\) (\S+)\))");
  static const std::regex division(R"(\(/ ([^()\s]+) ([^()\s]+)\))");
  static const std::regex numeral(R"(\d+(\.\d+)?)");
  for (std::sregex_iterator it(smt.begin(), smt.end(), decl), end; it != end; ++it) {
    if (!(*it)[2].str().empty() || (*it)[3] != "Real") return "non-nullary declaration " + it->str();
  }
  std::size_t divisions = 0;
  for (std::sregex_iterator it(smt.begin(), smt.end(), division), end; it != end; ++it) {
    ++divisions;
    if (!std::regex_match((*it)[1].str(), numeral) || !std::regex_match((*it)[2].str(), numeral))
      return "division of non-numerals " + it->str();
  }
  std::size_t slashes = 0;
  for (std::size_t p = smt.find("(/"); p != std::string::npos; p = smt.find("(/", p + 1)) ++slashes;
  if (slashes != divisions) return "nested division";
  if (smt.find("D[") != std::string::npos) return "derivative symbol";
  return {};
}

bool solver_available() {
  static const bool available = [] {
    ExternalConfig cfg;
    cfg.timeout_seconds = 10;
    try {
      return solve_external(TarskiFormula{}, cfg).status == SolveStatus::Sat;
    } catch (const SolverError&) {
      return false;
    }
  }();
  return available;
}

std::string check_fitted_segment(const Piece& p, const SegmentCase& s, std::size_t samples, double tol) {
  auto close = [](double a, double b) { return std::fabs(a - b) <= 1e-9 * (1 + std::fabs(b)); };
  if (!close(p.value(s.v_lo), s.y_lo)) return "value at v_lo";
  if (!close(p.value(s.v_hi), s.y_hi)) return "value at v_hi";
  if (!close(p.derivative(s.v_lo), s.t_lo)) return "slope at v_lo";
  if (!close(p.derivative(s.v_hi), s.t_hi)) return "slope at v_hi";
  const auto& r = s.req;
  double prev_x = s.v_lo, prev_d = p.derivative(s.v_lo), prev_y = p.value(s.v_lo);
  for (std::size_t i = 1; i < samples; ++i) {
    double x = s.v_lo + (s.v_hi - s.v_lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
    double d = p.derivative(x), y = p.value(x);
    // Mean slope over the step lies between the end derivatives when f' is
    // monotone there; a loose version ties values to derivatives.
    double mean = (y - prev_y) / (x - prev_x);
    if (mean < std::min(d, prev_d) - tol || mean > std::max(d, prev_d) + tol) return "value/derivative mismatch";
    if ((r.convex || r.strict_convex) && d < prev_d - tol) return "derivative decreases";
    if ((r.concave || r.strict_concave) && d > prev_d + tol) return "derivative increases";
    if (r.strict_up && (d < -tol || y <= prev_y - tol)) return "not increasing";
    if (r.strict_down && (d > tol || y >= prev_y + tol)) return "not decreasing";
    for (const auto& b : r.bounds) {
      if (b.lower && d < b.value - tol) return "below lower bound";
      if (!b.lower && d > b.value + tol) return "above upper bound";
    }
    prev_x = x;
    prev_d = d;
    prev_y = y;
  }
  if (r.strict_up && !(p.value(s.v_hi) > p.value(s.v_lo))) return "no rise";
  if (r.strict_down && !(p.value(s.v_hi) < p.value(s.v_lo))) return "no fall";
  return {};
}

std::vector<VacuityCase> vacuity_table() {
  // f decreasing line, g increasing line above f, h strictly concave,
  // k strictly convex; a = 0 < b = 1.
  const char* empty[] = {
      "(f = g)[b, a]",          "(f > g)[b, a]",          "(D[f] = 5)[b, a]",       "(D[f] > 5)[b, a]",
      "(D[f] >= 5)[b, a]",      "(D[f] < -5)[b, a]",      "(D[f] <= -5)[b, a]",     "Up(f)[b, a]",
      "StrictUp(f)[b, a]",      "Down(g)[b, a]",          "StrictDown(g)[b, a]",    "Convex(h)[b, a]",
      "StrictConvex(h)[b, a]",  "Concave(k)[b, a]",       "StrictConcave(k)[b, a]", "Up(f)[b, b]",
      "StrictUp(f)[a, a]",      "Convex(h)[b, b]",        "StrictConvex(h)[a, a]",  "StrictConcave(k)[b, b]",
  };
  std::vector<VacuityCase> out;
  for (const char* e : empty) {
    std::string s = e;
    std::string r = s.substr(0, s.rfind('[')) + "[a, b]";
    out.push_back({s, r});
  }
  return out;
}

ExplicitModel vacuity_model() {
  ExplicitModel m;
  m.numeric["a"] = Rational(0);
  m.numeric["b"] = Rational(1);
  m.functional.emplace("f", PiecewiseModel::affine(-1, 0));
  m.functional.emplace("g", PiecewiseModel::affine(1, 5));
  Piece mid = Piece::quadratic({{0, 1}, {1, -1}}, 0);
  m.functional.emplace("h", PiecewiseModel({0, 1}, {Piece::tail(true, 0, 0, 1, 2), mid,
                                                    Piece::tail(false, 1, mid.value(1), -1, -2)}));
  Piece kmid = Piece::quadratic({{0, -1}, {1, 1}}, 0);
  m.functional.emplace("k", PiecewiseModel({0, 1}, {Piece::tail(true, 0, 0, -1, -2), kmid,
                                                    Piece::tail(false, 1, kmid.value(1), 1, 2)}));
  return m;
}

double fd_first(const PiecewiseModel& f, double x, double h) { return (f.value(x + h) - f.value(x - h)) / (2 * h); }

double fd_second(const PiecewiseModel& f, double x, double h) {
  return (f.value(x + h) - 2 * f.value(x) + f.value(x - h)) / (h * h);
}

}  // namespace rdf::support

#include <cctype>
#include <sstream>

#include "rdf/backend.hpp"
#include "rdf/error.hpp"

namespace rdf {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Sat: return "sat";
    case SolveStatus::Unsat: return "unsat";
    case SolveStatus::Unknown: return "unknown";
  }
  return "?";
}

namespace {

bool simple_symbol(const std::string& s) {
  static const std::string extra = "~!@$%^&*_-+=<>.?/";
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && extra.find(c) == std::string::npos) return false;
  return true;
}

std::string symbol(const std::string& s) { return simple_symbol(s) ? s : "|" + s + "|"; }

std::string decimal(const mpz_class& z) { return z.get_str() + ".0"; }

}  // namespace

std::string smt_rational(const Rational& q) {
  mpz_class num = abs(q.get_num());
  std::string body = q.get_den() == 1 ? decimal(num) : "(/ " + decimal(num) + " " + decimal(q.get_den()) + ")";
  return q < 0 ? "(- " + body + ")" : body;
}

std::string smt_term(const Polynomial& p) {
  if (p.is_zero()) return "0.0";
  std::vector<std::string> terms;
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::string> factors;
    if (c != 1 || m.empty()) factors.push_back(smt_rational(c));
    for (const auto& [v, e] : m)
      for (unsigned k = 0; k < e; ++k) factors.push_back(symbol(v));
    if (factors.size() == 1) {
      terms.push_back(factors.front());
    } else {
      std::string s = "(*";
      for (const auto& f : factors) s += " " + f;
      terms.push_back(s + ")");
    }
  }
  if (terms.size() == 1) return terms.front();
  std::string s = "(+";
  for (const auto& t : terms) s += " " + t;
  return s + ")";
}

std::string smt_formula(const TNodePtr& n) {
  auto list = [&](const char* op, const char* empty) {
    if (n->kids.empty()) return std::string(empty);
    std::string s = std::string("(") + op;
    for (const auto& k : n->kids) s += " " + smt_formula(k);
    return s + ")";
  };
  switch (n->kind) {
    case TNode::Kind::Atom: {
      const char* op = n->rel == PolyRel::Eq ? "=" : n->rel == PolyRel::Lt ? "<" : "<=";
      return std::string("(") + op + " " + smt_term(n->poly) + " 0.0)";
    }
    case TNode::Kind::And: return list("and", "true");
    case TNode::Kind::Or: return list("or", "false");
    case TNode::Kind::Not: return "(not " + smt_formula(n->kids[0]) + ")";
    case TNode::Kind::Implies:
      return "(=> " + smt_formula(n->kids[0]) + " " + smt_formula(n->kids[1]) + ")";
  }
  return "true";
}

std::string emit_exchange(const TarskiFormula& formula) {
  std::ostringstream out;
  out << "(set-option :produce-models true)\n";
  out << "(set-logic QF_NRA)\n";
  for (const auto& v : formula.variables()) out << "(declare-fun " << symbol(v) << " () Real)\n";
  if (formula.empty()) out << "(assert true)\n";
  for (const auto& c : formula.conjuncts()) out << "(assert " << smt_formula(c) << ")\n";
  out << "(check-sat)\n(get-model)\n(exit)\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Output parsing
// ---------------------------------------------------------------------------

namespace {

struct SExpr {
  std::string atom;
  std::vector<SExpr> list;
  bool is_list = false;
};

class SExprReader {
 public:
  explicit SExprReader(const std::string& text) : s_(text) {}

  bool next(SExpr& out) {
    skip();
    if (i_ >= s_.size()) return false;
    out = read();
    return true;
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;

  void skip() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        ++i_;
      } else if (s_[i_] == ';') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }

  SExpr read() {
    SExpr e;
    if (s_[i_] == '(') {
      ++i_;
      e.is_list = true;
      for (;;) {
        skip();
        if (i_ >= s_.size()) throw SolverError(SolverErrorKind::ProtocolError, "unbalanced solver output");
        if (s_[i_] == ')') {
          ++i_;
          return e;
        }
        e.list.push_back(read());
      }
    }
    if (s_[i_] == ')') throw SolverError(SolverErrorKind::ProtocolError, "unexpected ')' in solver output");
    if (s_[i_] == '"' || s_[i_] == '|') {
      char q = s_[i_++];
      std::size_t start = i_;
      while (i_ < s_.size() && s_[i_] != q) ++i_;
      e.atom = s_.substr(start, i_ - start);
      if (i_ < s_.size()) ++i_;
      return e;
    }
    std::size_t start = i_;
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' &&
           s_[i_] != ')')
      ++i_;
    e.atom = s_.substr(start, i_ - start);
    return e;
  }
};

std::optional<Rational> value_of(const SExpr& e) {
  if (!e.is_list) return parse_rational(e.atom);
  if (e.list.empty() || e.list[0].is_list) return std::nullopt;
  const std::string& op = e.list[0].atom;
  std::vector<Rational> args;
  for (std::size_t i = 1; i < e.list.size(); ++i) {
    auto v = value_of(e.list[i]);
    if (!v) return std::nullopt;
    args.push_back(*v);
  }
  if (args.empty()) return std::nullopt;
  if (op == "-") {
    if (args.size() == 1) return Rational(-args[0]);
    Rational r = args[0];
    for (std::size_t i = 1; i < args.size(); ++i) r -= args[i];
    return r;
  }
  if (op == "+" || op == "*") {
    Rational r = op == "+" ? 0 : 1;
    for (const auto& a : args) op == "+" ? r += a : r *= a;
    return r;
  }
  if (op == "/" && args.size() == 2 && args[1] != 0) return Rational(args[0] / args[1]);
  return std::nullopt;
}

void read_model(const SExpr& e, SolverOutput& out) {
  if (!e.is_list) return;
  // z3 wraps the definitions in a list, older versions prefix it with "model".
  for (const auto& d : e.list) {
    if (!d.is_list || d.list.size() < 4 || d.list[0].atom != "define-fun") continue;
    const std::string& name = d.list[1].atom;
    if (auto v = value_of(d.list.back())) {
      v->canonicalize();
      out.model[name] = *v;
    } else {
      out.unreadable.push_back(name);
    }
  }
}

}  // namespace

SolverOutput parse_solver_output(const std::string& text) {
  SolverOutput out;
  SExprReader reader(text);
  SExpr e;
  bool verdict = false;
  while (reader.next(e)) {
    if (!e.is_list) {
      if (!verdict && (e.atom == "sat" || e.atom == "unsat" || e.atom == "unknown")) {
        out.status = e.atom == "sat" ? SolveStatus::Sat : e.atom == "unsat" ? SolveStatus::Unsat : SolveStatus::Unknown;
        verdict = true;
      }
      continue;
    }
    if (verdict && out.status == SolveStatus::Sat && !e.list.empty() &&
        (e.list[0].is_list || e.list[0].atom == "model")) {
      read_model(e, out);
    }
  }
  if (!verdict) throw SolverError(SolverErrorKind::ProtocolError, "solver output has no verdict");
  return out;
}

}  // namespace rdf

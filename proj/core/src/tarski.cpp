#include "rdf/tarski.hpp"

#include "rdf/error.hpp"

namespace rdf {

namespace tarski {

TNodePtr atom(Polynomial p, PolyRel rel) {
  auto n = std::make_shared<TNode>();
  n->kind = TNode::Kind::Atom;
  n->poly = std::move(p);
  n->rel = rel;
  return n;
}

TNodePtr eq(const Polynomial& a, const Polynomial& b) { return atom(a - b, PolyRel::Eq); }
TNodePtr lt(const Polynomial& a, const Polynomial& b) { return atom(a - b, PolyRel::Lt); }
TNodePtr le(const Polynomial& a, const Polynomial& b) { return atom(a - b, PolyRel::Le); }
TNodePtr gt(const Polynomial& a, const Polynomial& b) { return lt(b, a); }
TNodePtr ge(const Polynomial& a, const Polynomial& b) { return le(b, a); }

namespace {
TNodePtr node(TNode::Kind kind, std::vector<TNodePtr> kids) {
  auto n = std::make_shared<TNode>();
  n->kind = kind;
  n->kids = std::move(kids);
  return n;
}
}  // namespace

TNodePtr all(std::vector<TNodePtr> kids) {
  if (kids.size() == 1) return kids.front();
  return node(TNode::Kind::And, std::move(kids));
}
TNodePtr any(std::vector<TNodePtr> kids) {
  if (kids.size() == 1) return kids.front();
  return node(TNode::Kind::Or, std::move(kids));
}
TNodePtr negate(TNodePtr sub) { return node(TNode::Kind::Not, {std::move(sub)}); }
TNodePtr implies(TNodePtr premise, TNodePtr conclusion) {
  return node(TNode::Kind::Implies, {std::move(premise), std::move(conclusion)});
}

}  // namespace tarski

namespace {

const char* rel_text(PolyRel r) {
  switch (r) {
    case PolyRel::Eq: return " = 0";
    case PolyRel::Lt: return " < 0";
    case PolyRel::Le: return " <= 0";
  }
  return "?";
}

std::string join(const std::vector<TNodePtr>& kids, const char* sep) {
  std::string out;
  for (const auto& k : kids) {
    if (!out.empty()) out += sep;
    out += to_string(k);
  }
  return out;
}

}  // namespace

std::string to_string(const TNodePtr& n) {
  switch (n->kind) {
    case TNode::Kind::Atom: return to_string(n->poly) + rel_text(n->rel);
    case TNode::Kind::And: return n->kids.empty() ? "true" : "(" + join(n->kids, " & ") + ")";
    case TNode::Kind::Or: return n->kids.empty() ? "false" : "(" + join(n->kids, " | ") + ")";
    case TNode::Kind::Not: return "!(" + to_string(n->kids[0]) + ")";
    case TNode::Kind::Implies:
      return "(" + to_string(n->kids[0]) + " -> " + to_string(n->kids[1]) + ")";
  }
  return "?";
}

std::string to_string(const TarskiFormula& f) {
  if (f.empty()) return "true\n";
  std::string out;
  for (const auto& c : f.conjuncts()) out += to_string(c) + "\n";
  return out;
}

void TarskiFormula::add(TNodePtr node) {
  if (keys_.insert(to_string(node)).second) conjuncts_.push_back(std::move(node));
}

std::set<std::string> variables(const TNodePtr& n) {
  if (n->kind == TNode::Kind::Atom) return n->poly.variables();
  std::set<std::string> out;
  for (const auto& k : n->kids) {
    auto s = variables(k);
    out.insert(s.begin(), s.end());
  }
  return out;
}

std::set<std::string> TarskiFormula::variables() const {
  std::set<std::string> out;
  for (const auto& c : conjuncts_) {
    auto s = rdf::variables(c);
    out.insert(s.begin(), s.end());
  }
  return out;
}

bool evaluate_exact(const TNodePtr& n, const std::map<std::string, Rational>& a) {
  switch (n->kind) {
    case TNode::Kind::Atom: {
      Rational v = n->poly.evaluate(a);
      switch (n->rel) {
        case PolyRel::Eq: return v == 0;
        case PolyRel::Lt: return v < 0;
        case PolyRel::Le: return v <= 0;
      }
      return false;
    }
    case TNode::Kind::And:
      for (const auto& k : n->kids)
        if (!evaluate_exact(k, a)) return false;
      return true;
    case TNode::Kind::Or:
      for (const auto& k : n->kids)
        if (evaluate_exact(k, a)) return true;
      return false;
    case TNode::Kind::Not: return !evaluate_exact(n->kids[0], a);
    case TNode::Kind::Implies: return !evaluate_exact(n->kids[0], a) || evaluate_exact(n->kids[1], a);
  }
  return false;
}

bool evaluate_exact(const TarskiFormula& f, const std::map<std::string, Rational>& a) {
  // Check totality first so a short-circuit cannot hide a missing variable.
  for (const auto& v : f.variables())
    if (!a.count(v)) throw UnassignedSymbol(v);
  for (const auto& c : f.conjuncts())
    if (!evaluate_exact(c, a)) return false;
  return true;
}

}  // namespace rdf

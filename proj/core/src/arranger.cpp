#include "rdf/arranger.hpp"

#include <algorithm>
#include <numeric>

namespace rdf {

std::size_t Arrangement::size() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.size();
  return n;
}

std::string to_string(const Arrangement& arr) {
  if (arr.blocks.empty()) return "{}";
  std::string out;
  for (const auto& b : arr.blocks) {
    if (!out.empty()) out += " < ";
    out += "{";
    for (std::size_t i = 0; i < b.size(); ++i) out += (i ? "," : "") + b[i];
    out += "}";
  }
  return out;
}

std::uint64_t fubini(unsigned n) {
  // a(n) = sum_{k=1..n} C(n,k) a(n-k)
  std::vector<std::uint64_t> a(n + 1, 0);
  a[0] = 1;
  for (unsigned m = 1; m <= n; ++m) {
    std::uint64_t binom = 1;
    for (unsigned k = 1; k <= m; ++k) {
      binom = binom * (m - k + 1) / k;
      a[m] += binom * a[m - k];
    }
  }
  return a[n];
}

namespace {

// Nonempty subsets of `items` in lexicographic order of their index lists.
void lex_subsets(std::size_t n, const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> cur;
  std::function<bool(std::size_t)> rec = [&](std::size_t start) -> bool {
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      if (!visit(cur)) return false;
      if (!rec(i + 1)) return false;
      cur.pop_back();
    }
    return true;
  };
  rec(0);
}

// Generic weak-order generator: `allowed` filters each candidate next block
// drawn from the remaining variables.
bool generate(std::vector<std::string> remaining, std::vector<std::vector<std::string>>& prefix,
              const std::function<std::vector<std::size_t>(const std::vector<std::string>&)>& candidates,
              const std::function<bool(const std::vector<std::string>&, const std::vector<std::string>&)>& allowed,
              const std::function<bool(const Arrangement&)>& visit) {
  if (remaining.empty()) return visit(Arrangement{prefix});
  std::vector<std::size_t> cand = candidates(remaining);
  bool keep_going = true;
  lex_subsets(cand.size(), [&](const std::vector<std::size_t>& pick) {
    std::vector<std::string> block;
    std::vector<bool> used(remaining.size(), false);
    for (auto p : pick) {
      block.push_back(remaining[cand[p]]);
      used[cand[p]] = true;
    }
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < remaining.size(); ++i)
      if (!used[i]) rest.push_back(remaining[i]);
    if (!allowed(block, rest)) return true;
    prefix.push_back(std::move(block));
    keep_going = generate(std::move(rest), prefix, candidates, allowed, visit);
    prefix.pop_back();
    return keep_going;
  });
  return keep_going;
}

void check_unique(const std::vector<std::string>& vars) {
  std::set<std::string> s(vars.begin(), vars.end());
  if (s.size() != vars.size()) throw Error("arrangement variables must be duplicate-free");
}

}  // namespace

void for_each_arrangement(const std::vector<std::string>& vars,
                          const std::function<bool(const Arrangement&)>& visit, std::size_t cap) {
  check_unique(vars);
  if (vars.size() > cap) {
    throw ArrangementExplosion(std::to_string(vars.size()) + " domain variables exceed the cap of " +
                               std::to_string(cap));
  }
  std::vector<std::vector<std::string>> prefix;
  auto all = [](const std::vector<std::string>& rem) {
    std::vector<std::size_t> idx(rem.size());
    std::iota(idx.begin(), idx.end(), 0);
    return idx;
  };
  generate(vars, prefix, all, [](const auto&, const auto&) { return true; }, visit);
}

std::vector<Arrangement> enumerate_arrangements(const std::vector<std::string>& vars, std::size_t cap) {
  std::vector<Arrangement> out;
  for_each_arrangement(vars, [&](const Arrangement& a) {
    out.push_back(a);
    return true;
  }, cap);
  return out;
}

// ---------------------------------------------------------------------------
// Order facts
// ---------------------------------------------------------------------------

OrderFacts::OrderFacts(const Conjunct& conjunct) {
  for (const auto& v : conjunct.numeric_vars()) index_.emplace(v, index_.size());
  std::vector<std::size_t> parent(index_.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  auto unite = [&](const std::string& a, const std::string& b) {
    parent[find(index_.at(a))] = find(index_.at(b));
  };

  std::set<std::string> positive;
  std::vector<std::pair<std::string, Rational>> consts;
  for (const auto& l : conjunct.literals()) {
    if (l.kind == LitKind::Eq) unite(l.x, l.y);
    if (l.kind == LitKind::Pos) positive.insert(l.x);
    if (l.kind == LitKind::Const) consts.emplace_back(l.x, l.c);
  }
  for (std::size_t i = 0; i < consts.size(); ++i)
    for (std::size_t j = i + 1; j < consts.size(); ++j)
      if (consts[i].second == consts[j].second) unite(consts[i].first, consts[j].first);

  cls_.resize(index_.size());
  for (std::size_t i = 0; i < cls_.size(); ++i) cls_[i] = find(i);

  std::vector<std::set<std::size_t>> direct(index_.size());
  auto less = [&](const std::string& a, const std::string& b) { direct[cls(b)].insert(cls(a)); };
  for (const auto& l : conjunct.literals()) {
    if (l.kind != LitKind::Sum) continue;
    // x = y + w with w > 0 gives y < x.
    if (positive.count(l.w)) less(l.y, l.x);
    if (positive.count(l.y)) less(l.w, l.x);
  }
  for (std::size_t i = 0; i < consts.size(); ++i)
    for (std::size_t j = 0; j < consts.size(); ++j)
      if (consts[i].second < consts[j].second) less(consts[i].first, consts[j].first);

  below_.assign(index_.size(), {});
  for (std::size_t c = 0; c < direct.size(); ++c) {
    std::vector<std::size_t> stack(direct[c].begin(), direct[c].end());
    while (!stack.empty()) {
      std::size_t d = stack.back();
      stack.pop_back();
      if (!below_[c].insert(d).second) continue;
      for (auto e : direct[d]) stack.push_back(e);
    }
    if (below_[c].count(c)) contradictory_ = true;
  }
}

std::size_t OrderFacts::cls(const std::string& v) const {
  auto it = index_.find(v);
  return it == index_.end() ? static_cast<std::size_t>(-1) : cls_[it->second];
}

bool OrderFacts::forced_equal(const std::string& a, const std::string& b) const {
  if (a == b) return true;
  auto ca = cls(a), cb = cls(b);
  return ca != static_cast<std::size_t>(-1) && ca == cb;
}

bool OrderFacts::forced_less(const std::string& a, const std::string& b) const {
  auto ca = cls(a), cb = cls(b);
  if (ca == static_cast<std::size_t>(-1) || cb == static_cast<std::size_t>(-1)) return false;
  return below_[cb].count(ca) > 0;
}

bool contradicts(const Arrangement& arr, const OrderFacts& facts) {
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < arr.blocks.size(); ++i)
    for (const auto& v : arr.blocks[i]) pos[v] = i;
  for (const auto& [a, pa] : pos) {
    for (const auto& [b, pb] : pos) {
      if (facts.forced_less(a, b) && pa >= pb) return true;
      if (facts.forced_equal(a, b) && pa != pb) return true;
    }
  }
  return false;
}

std::vector<Arrangement> consistent_arrangements(const std::vector<std::string>& vars,
                                                 const OrderFacts& facts, std::size_t max_count) {
  check_unique(vars);
  std::vector<Arrangement> out;
  std::vector<std::vector<std::string>> prefix;
  // Next-block candidates: variables with no forced predecessor left.
  auto minimal = [&](const std::vector<std::string>& rem) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < rem.size(); ++i) {
      bool has_pred = false;
      for (const auto& o : rem) has_pred = has_pred || facts.forced_less(o, rem[i]);
      if (!has_pred) idx.push_back(i);
    }
    return idx;
  };
  auto allowed = [&](const std::vector<std::string>& block, const std::vector<std::string>& rest) {
    for (const auto& a : block) {
      for (const auto& b : block)
        if (facts.forced_less(a, b)) return false;
      for (const auto& r : rest)
        if (facts.forced_equal(a, r)) return false;
    }
    return true;
  };
  generate(vars, prefix, minimal, allowed, [&](const Arrangement& a) {
    out.push_back(a);
    if (out.size() > max_count) {
      throw ArrangementExplosion("more than " + std::to_string(max_count) +
                                 " consistent arrangements of " + std::to_string(vars.size()) +
                                 " domain variables");
    }
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Specialization
// ---------------------------------------------------------------------------

std::vector<std::string> arrangement_vars(const Conjunct& conjunct) {
  auto vars = conjunct.domain_vars();
  if (vars.empty() && !conjunct.function_vars().empty()) vars.push_back(kAnchorVar);
  return vars;
}

OrderedConjunct apply_arrangement(const Conjunct& conjunct, const Arrangement& arr) {
  std::set<std::string> covered;
  for (const auto& b : arr.blocks) {
    if (b.empty()) throw CoverageError("arrangement has an empty block");
    covered.insert(b.begin(), b.end());
  }
  for (const auto& v : conjunct.domain_vars()) {
    if (!covered.count(v)) throw CoverageError("arrangement misses domain variable " + v);
  }

  OrderedConjunct out;
  out.arrangement = arr;
  std::map<std::string, std::string> subst;
  for (const auto& b : arr.blocks) {
    out.chain.push_back(b.front());
    for (std::size_t i = 1; i < b.size(); ++i) {
      subst[b[i]] = b.front();
      out.merged[b[i]] = b.front();
    }
  }
  out.conjunct = conjunct.substitute(subst);
  FreshNames names = out.conjunct.names();
  for (std::size_t i = 0; i + 1 < out.chain.size(); ++i) {
    std::string d = names.make("d");
    out.conjunct.add(Literal::sum(out.chain[i + 1], out.chain[i], d));
    out.conjunct.add(Literal::pos(d));
  }
  out.conjunct.set_fresh_counter(names.next());
  return out;
}

}  // namespace rdf

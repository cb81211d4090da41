#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rdf/literal.hpp"

namespace rdf {

/// Weak order: consecutive blocks are strictly increasing, variables inside
/// a block are equal.
struct Arrangement {
  std::vector<std::vector<std::string>> blocks;

  std::size_t size() const;
  friend bool operator==(const Arrangement&, const Arrangement&) = default;
};

std::string to_string(const Arrangement& arr);

/// Number of weak orders on n elements (ordered Bell / Fubini numbers).
std::uint64_t fubini(unsigned n);

inline constexpr std::size_t kDefaultArrangementCap = 7;

/// Every weak order of `vars` exactly once, deterministic order. Throws
/// ArrangementExplosion when vars.size() > cap.
std::vector<Arrangement> enumerate_arrangements(const std::vector<std::string>& vars,
                                                std::size_t cap = kDefaultArrangementCap);

/// Streaming form; the callback returns false to stop early.
void for_each_arrangement(const std::vector<std::string>& vars,
                          const std::function<bool(const Arrangement&)>& visit,
                          std::size_t cap = kDefaultArrangementCap);

/// Ground order facts implied syntactically by a conjunct's literals.
class OrderFacts {
 public:
  explicit OrderFacts(const Conjunct& conjunct);

  bool forced_equal(const std::string& a, const std::string& b) const;
  /// a < b is implied.
  bool forced_less(const std::string& a, const std::string& b) const;
  /// Some variable is forced strictly below itself.
  bool contradictory() const { return contradictory_; }

 private:
  std::map<std::string, std::size_t> index_;
  std::vector<std::size_t> cls_;                 // union-find root per variable
  std::vector<std::set<std::size_t>> below_;     // class -> classes strictly below
  bool contradictory_ = false;

  std::size_t cls(const std::string& v) const;
};

/// True when the arrangement contradicts a forced fact (pre-filter).
bool contradicts(const Arrangement& arr, const OrderFacts& facts);

/// Weak orders of `vars` consistent with `facts`, generated without visiting
/// contradicted prefixes. Throws ArrangementExplosion once more than
/// `max_count` arrangements are produced.
std::vector<Arrangement> consistent_arrangements(const std::vector<std::string>& vars,
                                                 const OrderFacts& facts, std::size_t max_count);

/// A conjunct specialized to an arrangement.
struct OrderedConjunct {
  Conjunct conjunct;
  /// Block representatives v1 < ... < vr.
  std::vector<std::string> chain;
  /// Every variable merged into a representative (representatives excluded).
  std::map<std::string, std::string> merged;
  Arrangement arrangement;
};

/// Name of the anchor variable introduced when functions occur without any
/// domain variable.
inline constexpr const char* kAnchorVar = "$anchor";

/// Domain variables of the conjunct; adds the anchor when the conjunct
/// mentions functions but no domain variable.
std::vector<std::string> arrangement_vars(const Conjunct& conjunct);

/// Merges each block onto its first variable and appends v_{i+1} = v_i + d,
/// d > 0 between consecutive representatives. Throws CoverageError when a
/// domain variable is missing from the arrangement.
OrderedConjunct apply_arrangement(const Conjunct& conjunct, const Arrangement& arr);

}  // namespace rdf

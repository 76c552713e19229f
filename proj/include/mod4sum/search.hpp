#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>

#include "mod4sum/core.hpp"
#include "mod4sum/evaluate.hpp"
#include "mod4sum/rational.hpp"

namespace mod4sum {

enum class SearchMode { Exhaustive, Heuristic };

struct SearchResult {
  int n_parties;
  SuccessProbability optimum;
  ProtocolChain witness;  // first chain attaining the optimum, canonical order
  std::uint64_t chains_examined;
  SearchMode mode;

  friend bool operator==(const SearchResult&, const SearchResult&) = default;
};

// Exhaustive N >= 6 means 2^36+ chains; refused unless overridden.
class ResourceLimitError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// combine_bounds saw lower > upper; some input value is wrong.
class InconsistentBoundsError : public std::logic_error {
  using std::logic_error::logic_error;
};

// prot_1 = 0011, every inner table 01011010.
ProtocolChain reference_chain(int n_parties);

struct SearchOptions {
  int jobs = 0;              // 0 = all available threads
  bool allow_large = false;  // permit exhaustive N >= 6
};

// Maximum over all 2^(8N-12) chains. The space is split by the
// (prot_1, prot_2) prefix into 4096 independent tasks whose inner scans
// share state-distribution prefixes; per-task results are reduced in
// canonical order, so the outcome is identical for every worker count.
SearchResult exhaustive_search(int n_parties, const SearchOptions& opts = {});

// Chain-at-a-time serial scan through the same space in the same order.
// Slower; kept as the reference the parallel kernel is checked against.
SearchResult exhaustive_search_reference(int n_parties, bool allow_large = false);

// Evaluates the reference chain plus `budget` seeded random chains and
// reports the best; a lower bound on the true optimum. When the budget
// covers the whole space the scan is exhaustive instead of sampled.
SearchResult heuristic_search(int n_parties, std::uint64_t budget,
                              std::uint64_t seed, int jobs = 0);

struct BoundEntry {
  SuccessProbability lower;  // 0/1 when nothing is known
  SuccessProbability upper;  // 1/1 when unconstrained
  bool exact;                // lower == upper

  friend bool operator==(const BoundEntry&, const BoundEntry&) = default;
};

// Since the optimum never increases with N, each exhaustively known value
// caps every larger N. Supplied lower bounds meet those caps; when the two
// coincide the value is pinned exactly.
std::map<int, BoundEntry> combine_bounds(
    const std::map<int, SuccessProbability>& exact_at,
    const std::map<int, SuccessProbability>& lower_at);

}  // namespace mod4sum

#include "mod4sum/search.hpp"

#include <omp.h>

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mod4sum/montecarlo.hpp"

namespace mod4sum {

namespace {

constexpr int kPrefixTasks = 4096;  // (prot_1, prot_2) pairs

int space_bits(int n_parties) { return 8 * n_parties - 12; }

void check_search_parties(int n, bool allow_large) {
  if (n < kMinParties) throw std::invalid_argument("need at least 3 parties");
  if (n >= 6 && !allow_large) {
    throw ResourceLimitError(
        "exhaustive search over 2^" + std::to_string(space_bits(n)) +
        " chains at N=" + std::to_string(n) + " refused; pass the large-search "
        "override to force it");
  }
  if (space_bits(n) > 60) {
    throw ResourceLimitError("protocol space exceeds 2^60 chains");
  }
}

std::uint64_t total_inputs(int n) { return std::uint64_t{1} << (2 * n - 1); }

ProtocolChain chain_from_packed(std::uint8_t first,
                                const std::vector<std::uint8_t>& inners) {
  std::vector<ProtocolTable> tables;
  tables.reserve(inners.size());
  for (std::uint8_t v : inners) {
    tables.emplace_back(ProtocolTable::Arity::Inner, v);
  }
  return ProtocolChain(ProtocolTable(ProtocolTable::Arity::First, first),
                       std::move(tables));
}

struct TaskBest {
  std::uint64_t correct = 0;
  std::vector<std::uint8_t> tail;  // inner tables beyond prot_2
  std::uint64_t examined = 0;
};

// Depth-first over the remaining inner tables, reusing the distribution of
// the shared prefix at every level. Ascending table values keep canonical
// order, so a strictly-greater test retains the first maximum.
void scan_tail(const StateDistribution& d, int remaining,
               std::vector<std::uint8_t>& path, TaskBest& best) {
  if (remaining == 0) {
    const std::uint64_t c = count_correct_majority(d);
    ++best.examined;
    if (c > best.correct) {
      best.correct = c;
      best.tail = path;
    }
    return;
  }
  for (int t = 0; t < 256; ++t) {
    path.push_back(static_cast<std::uint8_t>(t));
    scan_tail(propagate_inner(d, static_cast<std::uint8_t>(t)), remaining - 1,
              path, best);
    path.pop_back();
  }
}

SearchResult exhaustive_scan(int n, int jobs, SearchMode mode) {
  const int tail_tables = n - 3;  // inner tables beyond the task prefix
  std::vector<TaskBest> tasks(kPrefixTasks);

#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (int task = 0; task < kPrefixTasks; ++task) {
    const auto t1 = static_cast<std::uint8_t>(task >> 8);
    const auto t2 = static_cast<std::uint8_t>(task & 0xFF);
    const StateDistribution d2 =
        propagate_inner(distribution_after_first(t1), t2);
    std::vector<std::uint8_t> path;
    scan_tail(d2, tail_tables, path, tasks[task]);
  }

  int best_task = 0;
  std::uint64_t examined = 0;
  for (int task = 0; task < kPrefixTasks; ++task) {
    examined += tasks[task].examined;
    if (tasks[task].correct > tasks[best_task].correct) best_task = task;
  }
  if (examined != std::uint64_t{1} << space_bits(n)) {
    throw std::logic_error("exhaustive scan did not cover the protocol space");
  }

  std::vector<std::uint8_t> inners;
  inners.push_back(static_cast<std::uint8_t>(best_task & 0xFF));
  inners.insert(inners.end(), tasks[best_task].tail.begin(),
                tasks[best_task].tail.end());
  return {n,
          SuccessProbability(tasks[best_task].correct, total_inputs(n)),
          chain_from_packed(static_cast<std::uint8_t>(best_task >> 8), inners),
          examined,
          mode};
}

int effective_jobs(int jobs) { return jobs > 0 ? jobs : omp_get_max_threads(); }

// One uniformly random chain per candidate index, rebuildable from the index.
ProtocolChain sampled_chain(int n, std::uint64_t seed, std::uint64_t index) {
  TrialStream rng(seed, index);
  const auto first = static_cast<std::uint8_t>(rng.next_u64() >> 60);
  std::vector<std::uint8_t> inners(static_cast<std::size_t>(n - 2));
  for (auto& v : inners) v = static_cast<std::uint8_t>(rng.next_u64() >> 56);
  return chain_from_packed(first, inners);
}

}  // namespace

ProtocolChain reference_chain(int n_parties) {
  if (n_parties < kMinParties) throw std::invalid_argument("need at least 3 parties");
  return chain_from_packed(
      0b0011, std::vector<std::uint8_t>(static_cast<std::size_t>(n_parties - 2),
                                        0b01011010));
}

SearchResult exhaustive_search(int n_parties, const SearchOptions& opts) {
  check_search_parties(n_parties, opts.allow_large);
  return exhaustive_scan(n_parties, effective_jobs(opts.jobs),
                         SearchMode::Exhaustive);
}

SearchResult exhaustive_search_reference(int n_parties, bool allow_large) {
  check_search_parties(n_parties, allow_large);
  const int n_inners = n_parties - 2;
  std::optional<SearchResult> best;
  std::uint64_t examined = 0;
  std::vector<std::uint8_t> inners(static_cast<std::size_t>(n_inners), 0);
  for (int first = 0; first < 16; ++first) {
    while (true) {
      const ProtocolChain chain =
          chain_from_packed(static_cast<std::uint8_t>(first), inners);
      const SuccessProbability p = evaluate_chain_dp(chain);
      ++examined;
      if (!best || p > best->optimum) {
        best = SearchResult{n_parties, p, chain, 0, SearchMode::Exhaustive};
      }
      // odometer over the inner tables, last party least significant
      int digit = n_inners - 1;
      while (digit >= 0 && inners[static_cast<std::size_t>(digit)] == 0xFF) {
        inners[static_cast<std::size_t>(digit)] = 0;
        --digit;
      }
      if (digit < 0) break;
      ++inners[static_cast<std::size_t>(digit)];
    }
  }
  best->chains_examined = examined;
  return *best;
}

SearchResult heuristic_search(int n_parties, std::uint64_t budget,
                              std::uint64_t seed, int jobs) {
  if (n_parties < kMinParties) throw std::invalid_argument("need at least 3 parties");
  if (space_bits(n_parties) <= 60 &&
      budget >= std::uint64_t{1} << space_bits(n_parties)) {
    SearchResult full = exhaustive_scan(n_parties, effective_jobs(jobs),
                                        SearchMode::Heuristic);
    return full;
  }

  const ProtocolChain reference = reference_chain(n_parties);
  const SuccessProbability reference_value = evaluate_chain_dp(reference);

  std::uint64_t best_correct = 0;
  std::uint64_t best_index = 0;
  bool any_sample_wins = false;
  const auto count = static_cast<std::int64_t>(budget);
#pragma omp parallel num_threads(effective_jobs(jobs))
  {
    std::uint64_t local_correct = 0;
    std::uint64_t local_index = 0;
    bool local_any = false;
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < count; ++i) {
      const auto index = static_cast<std::uint64_t>(i);
      const SuccessProbability p =
          evaluate_chain_dp(sampled_chain(n_parties, seed, index));
      if (!local_any || p.correct > local_correct) {
        local_any = true;
        local_correct = p.correct;
        local_index = index;
      }
    }
#pragma omp critical
    {
      if (local_any &&
          (!any_sample_wins || local_correct > best_correct ||
           (local_correct == best_correct && local_index < best_index))) {
        any_sample_wins = true;
        best_correct = local_correct;
        best_index = local_index;
      }
    }
  }

  SearchResult result{n_parties, reference_value, reference, budget + 1,
                      SearchMode::Heuristic};
  if (any_sample_wins && best_correct > reference_value.correct) {
    result.optimum = SuccessProbability(best_correct, total_inputs(n_parties));
    result.witness = sampled_chain(n_parties, seed, best_index);
  }
  return result;
}

std::map<int, BoundEntry> combine_bounds(
    const std::map<int, SuccessProbability>& exact_at,
    const std::map<int, SuccessProbability>& lower_at) {
  std::set<int> parties;
  for (const auto& [n, p] : exact_at) parties.insert(n);
  for (const auto& [n, p] : lower_at) parties.insert(n);
  for (int n : parties) {
    if (n < kMinParties) throw std::invalid_argument("bounds need N >= 3");
  }

  // running minimum of exact optima; monotonicity makes it an upper bound
  // for every N at or past each exact entry
  std::map<int, BoundEntry> out;
  for (int n : parties) {
    SuccessProbability upper(1, 1);
    for (const auto& [m, p] : exact_at) {
      if (m > n) break;
      upper = std::min(upper, p);
    }
    const auto lower_it = lower_at.find(n);
    const SuccessProbability lower =
        lower_it != lower_at.end() ? lower_it->second : SuccessProbability(0, 1);
    if (lower > upper) {
      throw InconsistentBoundsError(
          "lower bound " + to_fraction_string(lower) + " exceeds upper bound " +
          to_fraction_string(upper) + " at N=" + std::to_string(n));
    }
    const auto exact_it = exact_at.find(n);
    if (exact_it != exact_at.end() && exact_it->second > upper) {
      throw InconsistentBoundsError(
          "exact optimum at N=" + std::to_string(n) +
          " exceeds the bound inherited from smaller N; optima cannot increase");
    }
    out.emplace(n, BoundEntry{lower, upper, lower == upper});
  }
  return out;
}

}  // namespace mod4sum

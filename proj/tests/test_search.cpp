#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>

#include "doctest.h"
#include "mod4sum/core.hpp"
#include "mod4sum/evaluate.hpp"
#include "mod4sum/montecarlo.hpp"
#include "mod4sum/search.hpp"

using namespace mod4sum;

namespace {

ProtocolChain chain_n3(int first, int inner) {
  return ProtocolChain(
      ProtocolTable(ProtocolTable::Arity::First, static_cast<std::uint8_t>(first)),
      {ProtocolTable(ProtocolTable::Arity::Inner, static_cast<std::uint8_t>(inner))});
}

// true iff the final message never reacts to x_1 (broken communication flow)
bool ignores_first_input(const ProtocolChain& chain) {
  for (InputSymbol x2 = 0; x2 < 4; ++x2) {
    std::set<MessageBit> outputs;
    for (InputSymbol x1 = 0; x1 < 4; ++x1) {
      const InputSymbol x3 = (x1 + x2) % 2 == 0 ? 0 : 1;
      outputs.insert(run_chain(chain, InputTuple({x1, x2, x3})));
    }
    if (outputs.size() != 1) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("reference chain layout") {
  CHECK(format_chain(reference_chain(3)) == "0011|01011010");
  CHECK(format_chain(reference_chain(5)) ==
        "0011|01011010|01011010|01011010");
  CHECK(evaluate_chain_dp(reference_chain(6)) == SuccessProbability(5, 8));
}

TEST_CASE("exhaustive search at N=3 finds 3/4 over 4096 chains") {
  const SearchResult r = exhaustive_search(3);
  CHECK(r.optimum == SuccessProbability(3, 4));
  CHECK(r.chains_examined == 4096);
  CHECK(r.mode == SearchMode::Exhaustive);
  CHECK(evaluate_chain_naive(r.witness) == r.optimum);
  // first maximal chain in canonical enumeration order
  CHECK(format_chain(r.witness) == "0001|01011010");
}

TEST_CASE("parallel kernel agrees with the serial reference scan") {
  const SearchResult serial = exhaustive_search_reference(3);
  for (int jobs : {1, 2, 8}) {
    const SearchResult r = exhaustive_search(3, {jobs, false});
    CHECK(r == serial);
  }
}

TEST_CASE("exhaustive search at N=4" * doctest::timeout(600)) {
  const SearchResult r1 = exhaustive_search(4, {1, false});
  CHECK(r1.optimum == SuccessProbability(3, 4));
  CHECK(r1.chains_examined == (std::uint64_t{1} << 20));
  const SearchResult r8 = exhaustive_search(4, {8, false});
  CHECK(r1 == r8);
  CHECK(r1.optimum <= exhaustive_search(3).optimum);  // monotone in N
}

TEST_CASE("exhaustive search beyond N=5 is refused without the override") {
  CHECK_THROWS_AS(exhaustive_search(6), ResourceLimitError);
  CHECK_THROWS_AS(exhaustive_search_reference(7), ResourceLimitError);
}

TEST_CASE("heuristic search lower-bounds the optimum") {
  SUBCASE("covers the whole space when the budget allows") {
    const SearchResult r = heuristic_search(3, 4096, 1);
    CHECK(r.optimum == SuccessProbability(3, 4));
    CHECK(r.mode == SearchMode::Heuristic);
  }
  SUBCASE("meets the published lower bounds at N=6 and N=8") {
    const SearchResult r6 = heuristic_search(6, 64, 5);
    CHECK(r6.optimum >= SuccessProbability(5, 8));
    const SearchResult r8 = heuristic_search(8, 64, 5);
    CHECK(r8.optimum >= SuccessProbability(9, 16));
  }
  SUBCASE("witness always attains the reported value") {
    for (std::uint64_t seed : {11u, 12u, 13u}) {
      const SearchResult r = heuristic_search(4, 300, seed);
      CHECK(evaluate_chain_dp(r.witness) == r.optimum);
      CHECK(r.optimum >= evaluate_chain_dp(reference_chain(4)));
      CHECK(r.chains_examined == 301);
    }
  }
  SUBCASE("deterministic across worker counts") {
    const SearchResult a = heuristic_search(5, 500, 99, 1);
    const SearchResult b = heuristic_search(5, 500, 99, 8);
    CHECK(a == b);
  }
}

TEST_CASE("chains that ignore upstream inputs sit at exactly 1/2") {
  int blind = 0;
  for (int f = 0; f < 16; ++f) {
    for (int i = 0; i < 256; ++i) {
      const ProtocolChain chain = chain_n3(f, i);
      if (ignores_first_input(chain)) {
        ++blind;
        CHECK(evaluate_chain_dp(chain) == SuccessProbability(1, 2));
      }
    }
  }
  // prot_1 constant (2*256) + m-blind prot_2 (16*16) - both (2*16)
  CHECK(blind == 736);
}

TEST_CASE("mixtures of chains never beat the deterministic optimum") {
  const SuccessProbability optimum(3, 4);
  TrialStream rng(2024, 0);
  for (int mix = 0; mix < 100; ++mix) {
    const int members = 2 + static_cast<int>(rng.next_u64() % 4);
    std::uint64_t weighted_correct = 0;
    std::uint64_t weight_sum = 0;
    std::uint64_t total = 0;
    for (int k = 0; k < members; ++k) {
      const std::uint64_t w = 1 + (rng.next_u64() % 100);
      const SuccessProbability p = evaluate_chain_dp(
          chain_n3(static_cast<int>(rng.next_u64() % 16),
                   static_cast<int>(rng.next_u64() % 256)));
      weighted_correct += w * p.correct;
      weight_sum += w;
      total = p.total;
    }
    // exact convex combination: weighted_correct / (weight_sum * total)
    const SuccessProbability mixture(weighted_correct, weight_sum * total);
    CHECK(mixture <= optimum);
  }
}

TEST_CASE("a simulated mixture run matches its convex combination") {
  TrialStream pick(77, 0);
  for (int rep = 0; rep < 3; ++rep) {
    const ProtocolChain a = chain_n3(static_cast<int>(pick.next_u64() % 16),
                                     static_cast<int>(pick.next_u64() % 256));
    const ProtocolChain b = chain_n3(static_cast<int>(pick.next_u64() % 16),
                                     static_cast<int>(pick.next_u64() % 256));
    const double w = 0.25 + 0.5 * pick.next_unit();
    const double expected = w * evaluate_chain_dp(a).approx() +
                            (1.0 - w) * evaluate_chain_dp(b).approx();

    const GuessTable guess_a = majority_guess_table(a);
    const GuessTable guess_b = majority_guess_table(b);
    const std::uint64_t trials = 200000;
    std::uint64_t successes = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
      TrialStream rng(500 + static_cast<std::uint64_t>(rep), i);
      const bool use_a = rng.next_unit() < w;  // shared randomness picks the chain
      const InputTuple inputs = sample_constrained_inputs(3, rng);
      const ProtocolChain& chain = use_a ? a : b;
      const GuessTable& guess = use_a ? guess_a : guess_b;
      const MessageBit m = run_chain(chain, inputs);
      if (guess[inputs.last()][m] == mod4_target(inputs)) ++successes;
    }
    const double rate = static_cast<double>(successes) / static_cast<double>(trials);
    const double sigma = std::sqrt(expected * (1.0 - expected) /
                                   static_cast<double>(trials));
    CHECK(std::abs(rate - expected) <= 3.0 * sigma);
  }
}

TEST_CASE("combine_bounds pins N=6 from the N=5 optimum and N=6 reference value") {
  const auto out = combine_bounds({{5, SuccessProbability(5, 8)}},
                                  {{6, SuccessProbability(5, 8)}});
  const BoundEntry& n6 = out.at(6);
  CHECK(n6.exact);
  CHECK(n6.lower == SuccessProbability(5, 8));
  CHECK(n6.upper == SuccessProbability(5, 8));
}

TEST_CASE("combine_bounds reports intervals where bounds stay apart") {
  const auto out = combine_bounds({{5, SuccessProbability(5, 8)}},
                                  {{7, SuccessProbability(9, 16)}});
  const BoundEntry& n7 = out.at(7);
  CHECK_FALSE(n7.exact);
  CHECK(n7.lower == SuccessProbability(9, 16));
  CHECK(n7.upper == SuccessProbability(5, 8));
}

TEST_CASE("combine_bounds defaults missing lower bounds to zero") {
  const auto out = combine_bounds(
      {{3, SuccessProbability(3, 4)}, {5, SuccessProbability(5, 8)}}, {});
  for (const auto& [n, entry] : out) {
    CHECK_FALSE(entry.exact);
    CHECK(entry.lower == SuccessProbability(0, 1));
  }
  CHECK(out.at(3).upper == SuccessProbability(3, 4));
  CHECK(out.at(5).upper == SuccessProbability(5, 8));
}

TEST_CASE("combine_bounds rejects impossible inputs") {
  CHECK_THROWS_AS(combine_bounds({{5, SuccessProbability(5, 8)}},
                                 {{6, SuccessProbability(3, 4)}}),
                  InconsistentBoundsError);
  // an exact optimum larger than one at smaller N breaks monotonicity
  CHECK_THROWS_AS(combine_bounds({{3, SuccessProbability(5, 8)},
                                  {4, SuccessProbability(3, 4)}},
                                 {}),
                  InconsistentBoundsError);
}

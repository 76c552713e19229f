#include "mod4sum/evaluate.hpp"

#include <algorithm>
#include <stdexcept>

namespace mod4sum {

namespace {

StateDistribution final_distribution(const ProtocolChain& chain) {
  StateDistribution d = distribution_after_first(chain.first().packed());
  for (const ProtocolTable& t : chain.inners()) {
    d = propagate_inner(d, t.packed());
  }
  return d;
}

std::uint64_t total_inputs(int n_parties) {
  return std::uint64_t{1} << (2 * n_parties - 1);
}

}  // namespace

StateDistribution distribution_after_first(std::uint8_t first_packed) {
  StateDistribution d{};
  for (int x = 0; x < 4; ++x) {
    const unsigned m = (first_packed >> (3 - x)) & 1u;
    d[4 * m + static_cast<unsigned>(x)] += 1;
  }
  return d;
}

StateDistribution propagate_inner(const StateDistribution& d, std::uint8_t inner_packed) {
  StateDistribution out{};
  for (unsigned m = 0; m < 2; ++m) {
    for (unsigned s = 0; s < 4; ++s) {
      const std::uint64_t c = d[4 * m + s];
      if (c == 0) continue;
      for (unsigned x = 0; x < 4; ++x) {
        const unsigned mo = (inner_packed >> (7 - (2 * x + m))) & 1u;
        out[4 * mo + ((s + x) & 3u)] += c;
      }
    }
  }
  return out;
}

std::uint64_t count_correct_majority(const StateDistribution& d) {
  std::uint64_t correct = 0;
  for (unsigned xn = 0; xn < 4; ++xn) {
    for (unsigned m = 0; m < 2; ++m) {
      std::uint64_t per_f[2] = {0, 0};
      for (unsigned s = xn & 1u; s < 4; s += 2) {
        per_f[((s + xn) & 3u) >> 1] += d[4 * m + s];
      }
      correct += std::max(per_f[0], per_f[1]);
    }
  }
  return correct;
}

SuccessProbability evaluate_chain_naive(const ProtocolChain& chain) {
  const int n = chain.n_parties();
  // counts[x_N][m][F]
  std::uint64_t buckets[4][2][2] = {};
  std::uint64_t seen = 0;
  InputEnumerator inputs(n);
  while (auto tuple = inputs.next()) {
    const MessageBit m = run_chain(chain, *tuple);
    buckets[tuple->last()][m][mod4_target(*tuple)] += 1;
    ++seen;
  }
  if (seen != total_inputs(n)) {
    throw std::logic_error("input enumeration does not cover 4^N/2 tuples");
  }
  std::uint64_t correct = 0;
  for (int xn = 0; xn < 4; ++xn) {
    for (int m = 0; m < 2; ++m) {
      correct += std::max(buckets[xn][m][0], buckets[xn][m][1]);
    }
  }
  return SuccessProbability(correct, seen);
}

SuccessProbability evaluate_chain_dp(const ProtocolChain& chain) {
  const std::uint64_t correct = count_correct_majority(final_distribution(chain));
  return SuccessProbability(correct, total_inputs(chain.n_parties()));
}

GuessTable majority_guess_table(const ProtocolChain& chain) {
  const StateDistribution d = final_distribution(chain);
  GuessTable guess{};
  for (unsigned xn = 0; xn < 4; ++xn) {
    for (unsigned m = 0; m < 2; ++m) {
      std::uint64_t per_f[2] = {0, 0};
      for (unsigned s = xn & 1u; s < 4; s += 2) {
        per_f[((s + xn) & 3u) >> 1] += d[4 * m + s];
      }
      guess[xn][m] = per_f[1] > per_f[0] ? 1 : 0;
    }
  }
  return guess;
}

}  // namespace mod4sum

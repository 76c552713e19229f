#pragma once

#include <array>
#include <cstdint>

#include "mod4sum/core.hpp"
#include "mod4sum/rational.hpp"

namespace mod4sum {

// Joint counts over (message bit m, partial input sum mod 4) once a prefix
// of the parties has acted; index = 4*m + s. After j parties the counts
// sum to 4^j.
using StateDistribution = std::array<std::uint64_t, 8>;

StateDistribution distribution_after_first(std::uint8_t first_packed);
StateDistribution propagate_inner(const StateDistribution& d, std::uint8_t inner_packed);

// Correct-guess count for the last party: per (x_N, m) bucket, restrict to
// states with matching parity, split counts by F = ((s + x_N) mod 4)/2 and
// keep the majority.
std::uint64_t count_correct_majority(const StateDistribution& d);

// Literal enumeration over all 4^N/2 promise-satisfying tuples; the oracle
// the DP evaluator is tested against.
SuccessProbability evaluate_chain_naive(const ProtocolChain& chain);

// Same value as evaluate_chain_naive at O(N) per chain via the state
// distribution above.
SuccessProbability evaluate_chain_dp(const ProtocolChain& chain);

// The last party's majority guess per (x_N, m); equal counts guess 0.
using GuessTable = std::array<std::array<MessageBit, 2>, 4>;
GuessTable majority_guess_table(const ProtocolChain& chain);

}  // namespace mod4sum

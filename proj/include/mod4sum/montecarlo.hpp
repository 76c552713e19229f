#pragma once

#include <cstdint>

#include "mod4sum/core.hpp"
#include "mod4sum/noise.hpp"

namespace mod4sum {

// SplitMix64 keyed by (seed, stream index). Every trial owns one stream and
// draws a fixed number of values, so sharding trials across workers cannot
// change what any single trial sees.
class TrialStream {
 public:
  TrialStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  double next_unit();        // [0, 1)
  InputSymbol next_symbol();  // uniform over 0..3
  int next_bit();

 private:
  std::uint64_t state_;
};

// Uniform over the 4^N/2 promise-satisfying tuples: the first N-1 symbols
// are free draws, the last is a fair pick between the two symbols whose
// parity completes the promise. Consumes exactly N draws.
InputTuple sample_constrained_inputs(int n_parties, TrialStream& rng);

struct TrialRecord {
  InputTuple inputs;
  bool detected_signal;
  bool outcome_correct;
};

// One noisy quantum run: a genuine signal detection happens with
// probability (1-mu)*eta*t and then succeeds with rate s; otherwise the
// last party guesses fairly. Consumes exactly two draws.
TrialRecord simulate_noisy_run(const InputTuple& inputs, const NoiseParams& params,
                               TrialStream& rng);

struct Estimate {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double point = 0.0;
  double ci_halfwidth = 0.0;  // 3-sigma normal approximation

  friend bool operator==(const Estimate&, const Estimate&) = default;
};

// jobs = 0 picks all available threads. Results depend only on
// (n_parties, params, trials, seed) — never on the worker count.
Estimate run_quantum_experiment(int n_parties, const NoiseParams& params,
                                std::uint64_t trials, std::uint64_t seed,
                                int jobs = 0);
Estimate run_classical_experiment(const ProtocolChain& chain, std::uint64_t trials,
                                  std::uint64_t seed, int jobs = 0);

}  // namespace mod4sum

#include "mod4sum/montecarlo.hpp"

#include <omp.h>

#include <cmath>
#include <stdexcept>

#include "mod4sum/evaluate.hpp"
#include "mod4sum/quantum.hpp"

namespace mod4sum {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Estimate make_estimate(std::uint64_t successes, std::uint64_t trials) {
  const double point = static_cast<double>(successes) / static_cast<double>(trials);
  const double sigma = std::sqrt(point * (1.0 - point) / static_cast<double>(trials));
  return {successes, trials, point, 3.0 * sigma};
}

int effective_jobs(int jobs) { return jobs > 0 ? jobs : omp_get_max_threads(); }

}  // namespace

TrialStream::TrialStream(std::uint64_t seed, std::uint64_t stream)
    : state_(mix64(seed + kGolden * (stream + 1))) {}

std::uint64_t TrialStream::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double TrialStream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

InputSymbol TrialStream::next_symbol() {
  return static_cast<InputSymbol>(next_u64() >> 62);
}

int TrialStream::next_bit() { return static_cast<int>(next_u64() >> 63); }

InputTuple sample_constrained_inputs(int n_parties, TrialStream& rng) {
  if (n_parties < kMinParties) {
    throw std::invalid_argument("need at least 3 parties");
  }
  std::vector<InputSymbol> symbols(static_cast<std::size_t>(n_parties));
  unsigned sum = 0;
  for (int i = 0; i < n_parties - 1; ++i) {
    symbols[static_cast<std::size_t>(i)] = rng.next_symbol();
    sum += symbols[static_cast<std::size_t>(i)];
  }
  symbols.back() = static_cast<InputSymbol>((sum & 1u) + 2 * rng.next_bit());
  return InputTuple(std::move(symbols));
}

TrialRecord simulate_noisy_run(const InputTuple& inputs, const NoiseParams& params,
                               TrialStream& rng) {
  const double detection_draw = rng.next_unit();
  const double outcome_draw = rng.next_unit();
  const bool detected =
      detection_draw < (1.0 - params.mu) * params.eta * params.t;
  int announced;
  if (detected) {
    announced = run_quantum(inputs);
    if (outcome_draw >= params.s) announced ^= 1;  // apparatus imperfection
  } else {
    announced = outcome_draw < 0.5 ? 0 : 1;  // fair guess about F
  }
  return {inputs, detected, announced == mod4_target(inputs)};
}

Estimate run_quantum_experiment(int n_parties, const NoiseParams& params,
                                std::uint64_t trials, std::uint64_t seed, int jobs) {
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  std::uint64_t successes = 0;
  const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(static) reduction(+ : successes) \
    num_threads(effective_jobs(jobs))
  for (std::int64_t i = 0; i < count; ++i) {
    TrialStream rng(seed, static_cast<std::uint64_t>(i));
    const InputTuple inputs = sample_constrained_inputs(n_parties, rng);
    successes += simulate_noisy_run(inputs, params, rng).outcome_correct ? 1 : 0;
  }
  return make_estimate(successes, trials);
}

Estimate run_classical_experiment(const ProtocolChain& chain, std::uint64_t trials,
                                  std::uint64_t seed, int jobs) {
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  // the guess table comes from the exact evaluator, not from re-estimation
  const GuessTable guess = majority_guess_table(chain);
  const int n = chain.n_parties();
  std::uint64_t successes = 0;
  const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(static) reduction(+ : successes) \
    num_threads(effective_jobs(jobs))
  for (std::int64_t i = 0; i < count; ++i) {
    TrialStream rng(seed, static_cast<std::uint64_t>(i));
    const InputTuple inputs = sample_constrained_inputs(n, rng);
    const MessageBit m = run_chain(chain, inputs);
    successes += guess[inputs.last()][m] == mod4_target(inputs) ? 1 : 0;
  }
  return make_estimate(successes, trials);
}

}  // namespace mod4sum

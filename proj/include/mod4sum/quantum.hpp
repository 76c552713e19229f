#pragma once

#include <complex>
#include <utility>

#include "mod4sum/core.hpp"

namespace mod4sum {

inline constexpr double kAmplitudeTolerance = 1e-12;

// Two complex amplitudes of the relayed qubit.
struct QubitState {
  std::complex<double> amp0;
  std::complex<double> amp1;

  double norm() const { return std::norm(amp0) + std::norm(amp1); }
};

// Phase kick in units of pi/2: |1> picks up i^quarter_turns, |0> is untouched.
struct PhaseShift {
  InputSymbol quarter_turns;

  explicit PhaseShift(InputSymbol x);
};

// (|0> + |1>)/sqrt(2)
QubitState plus_state();

QubitState apply_phase(const QubitState& state, PhaseShift shift);

// Probabilities of the two outcomes in the {(|0>+|1>)/sqrt2, (|0>-|1>)/sqrt2}
// basis.
std::pair<double, double> measure_diagonal(const QubitState& state);

// Sequential protocol: one phase kick per party, then a diagonal-basis
// measurement. The accumulated phase is a multiple of pi/2, so the outcome
// is computed on an integer accumulator mod 4; outcome 1 iff the phase is
// pi mod 2pi. Equals mod4_target on every promise-satisfying tuple.
int run_quantum(const InputTuple& inputs);

// True iff run_quantum matches mod4_target on every one of the 4^N/2
// tuples, with the amplitude-level simulation cross-checked against the
// integer accumulator along the way.
bool verify_ideal(int n_parties);

}  // namespace mod4sum

#include "mod4sum/quantum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mod4sum {

namespace {

// i^x for x = 0..3; exact in floating point, unlike exp(i*pi*x/2).
constexpr std::complex<double> kQuarterTurn[4] = {
    {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

}  // namespace

PhaseShift::PhaseShift(InputSymbol x) : quarter_turns(x) {
  if (x > 3) {
    throw std::invalid_argument("phase shift must be 0..3 quarter turns");
  }
}

QubitState plus_state() {
  const double r = 1.0 / std::numbers::sqrt2;
  return {{r, 0.0}, {r, 0.0}};
}

QubitState apply_phase(const QubitState& state, PhaseShift shift) {
  return {state.amp0, state.amp1 * kQuarterTurn[shift.quarter_turns]};
}

std::pair<double, double> measure_diagonal(const QubitState& state) {
  const double p0 = 0.5 * std::norm(state.amp0 + state.amp1);
  const double p1 = 0.5 * std::norm(state.amp0 - state.amp1);
  return {p0, p1};
}

int run_quantum(const InputTuple& inputs) {
  unsigned phase = 0;
  for (InputSymbol x : inputs.symbols()) phase += x;
  phase &= 3u;
  if (phase & 1u) {
    throw std::invalid_argument(
        "accumulated phase is an odd multiple of pi/2; inputs break the promise");
  }
  return static_cast<int>(phase >> 1);
}

bool verify_ideal(int n_parties) {
  InputEnumerator inputs(n_parties);
  while (auto tuple = inputs.next()) {
    const int expected = mod4_target(*tuple);
    if (run_quantum(*tuple) != expected) return false;

    QubitState psi = plus_state();
    for (InputSymbol x : tuple->symbols()) {
      psi = apply_phase(psi, PhaseShift(x));
    }
    const auto [p0, p1] = measure_diagonal(psi);
    const double p_expected = expected == 0 ? p0 : p1;
    if (std::abs(p_expected - 1.0) > kAmplitudeTolerance) return false;
    if (std::abs(p0 + p1 - 1.0) > kAmplitudeTolerance) return false;
  }
  return true;
}

}  // namespace mod4sum

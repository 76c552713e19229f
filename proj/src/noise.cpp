#include "mod4sum/noise.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mod4sum {

namespace {

void check_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
  }
}

void check_probability_range(const SuccessProbability& p_c) {
  // 1/2 <= p_c <= 1; below 1/2 a majority guesser would not produce it
  if (2 * p_c.correct < p_c.total) {
    throw std::invalid_argument("classical success probability below 1/2");
  }
}

void check_solvable(double t, double mu, double s) {
  if (!(s > 0.5) || !(t > 0.0) || !(mu < 1.0)) {
    throw std::domain_error(
        "threshold undefined: need s > 1/2, t > 0 and mu < 1 for any "
        "detection efficiency to beat a classical bound above 1/2");
  }
}

}  // namespace

NoiseParams::NoiseParams(double eta_, double t_, double mu_, double s_)
    : eta(eta_), t(t_), mu(mu_), s(s_) {
  check_unit_interval(eta, "eta");
  check_unit_interval(t, "t");
  check_unit_interval(mu, "mu");
  check_unit_interval(s, "s");
}

double effective_success(const NoiseParams& params) {
  const double signal = (1.0 - params.mu) * params.eta * params.t;
  return signal * params.s + (1.0 - signal) * 0.5;
}

double bare_eta_threshold(const SuccessProbability& p_c) {
  check_probability_range(p_c);
  return 2.0 * p_c.approx() - 1.0;
}

ThresholdReport eta_threshold(const SuccessProbability& p_c, double t, double mu,
                              double s) {
  check_probability_range(p_c);
  check_unit_interval(t, "t");
  check_unit_interval(mu, "mu");
  check_unit_interval(s, "s");
  check_solvable(t, mu, s);
  const double eta_min = (p_c.approx() - 0.5) / ((1.0 - mu) * t * (s - 0.5));
  return {p_c, t, mu, s, eta_min, eta_min <= 1.0};
}

double eta_threshold_numeric(const SuccessProbability& p_c, double t, double mu,
                             double s) {
  check_probability_range(p_c);
  check_solvable(t, mu, s);
  const double target = p_c.approx();
  // same affine model as effective_success, evaluated beyond eta = 1 so the
  // bracket also covers unachievable thresholds
  const auto deficit = [&](double eta) {
    const double signal = (1.0 - mu) * eta * t;
    return signal * s + (1.0 - signal) * 0.5 - target;
  };
  double lo = 0.0;
  double hi = 1.0;
  while (deficit(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e12) throw std::domain_error("no detection efficiency reaches p_c");
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (deficit(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double chain_transmissivity(double per_element, int n_parties) {
  check_unit_interval(per_element, "per-element transmissivity");
  if (n_parties < 1) {
    throw std::invalid_argument("need at least one optical element");
  }
  return std::pow(per_element, n_parties);
}

}  // namespace mod4sum

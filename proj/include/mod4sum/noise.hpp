#pragma once

#include "mod4sum/rational.hpp"

namespace mod4sum {

struct NoiseParams {
  double eta;  // detection efficiency
  double t;    // transmissivity through all optical elements
  double mu;   // fraction of detected events that are dark counts
  double s;    // success rate given a detected signal photon

  NoiseParams(double eta, double t, double mu, double s);
};

// p_eff = (1-mu)*eta*t*s + [1 - (1-mu)*eta*t]/2. A detected signal photon
// (probability (1-mu)*eta*t) succeeds with rate s; every other event ends
// in a fair guess.
double effective_success(const NoiseParams& params);

// eta such that a lossless protocol beats p_c: 2*p_c - 1.
double bare_eta_threshold(const SuccessProbability& p_c);

struct ThresholdReport {
  SuccessProbability p_c;
  double t;
  double mu;
  double s;
  double eta_min;
  bool achievable;  // eta_min <= 1
};

// Closed form eta_min = (p_c - 1/2) / [(1-mu)*t*(s - 1/2)]. Requires
// s > 1/2, t > 0, mu < 1; otherwise no efficiency can beat p_c > 1/2 and
// the call is refused.
ThresholdReport eta_threshold(const SuccessProbability& p_c, double t, double mu,
                              double s);

// Bisection root of effective_success(eta) = p_c; the independent route
// the closed form is checked against.
double eta_threshold_numeric(const SuccessProbability& p_c, double t, double mu,
                             double s);

// per_element^n_parties, one lossy element per party.
double chain_transmissivity(double per_element, int n_parties);

}  // namespace mod4sum

// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Heavier than the unit tests; the N=5 exhaustive search dominates.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "mod4sum/core.hpp"
#include "mod4sum/evaluate.hpp"
#include "mod4sum/montecarlo.hpp"
#include "mod4sum/noise.hpp"
#include "mod4sum/quantum.hpp"
#include "mod4sum/rational.hpp"
#include "mod4sum/search.hpp"

using namespace mod4sum;

namespace {

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

void report(int criterion, bool ok, const std::string& what) {
  std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", criterion,
              what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string prob_str(const SuccessProbability& p) { return to_fraction_string(p); }

ProtocolChain chain_n3(int first, int inner) {
  return ProtocolChain(
      ProtocolTable(ProtocolTable::Arity::First, static_cast<std::uint8_t>(first)),
      {ProtocolTable(ProtocolTable::Arity::Inner, static_cast<std::uint8_t>(inner))});
}

ProtocolChain random_chain(int n_parties, std::uint64_t seed, std::uint64_t index) {
  TrialStream rng(seed, index);
  std::vector<ProtocolTable> inners;
  for (int j = 0; j < n_parties - 2; ++j) {
    inners.emplace_back(ProtocolTable::Arity::Inner,
                        static_cast<std::uint8_t>(rng.next_u64() >> 56));
  }
  return ProtocolChain(ProtocolTable(ProtocolTable::Arity::First,
                                     static_cast<std::uint8_t>(rng.next_u64() >> 60)),
                       std::move(inners));
}

bool within_3_sigma(const Estimate& e, double analytic) {
  const double sigma =
      std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(e.trials));
  return std::abs(e.point - analytic) <= 3.0 * sigma;
}

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

char buffer[256];

std::string fmt(const char* format, auto... args) {
  std::snprintf(buffer, sizeof(buffer), format, args...);
  return buffer;
}

}  // namespace

int main() {
  // 1: exhaustive optimum at N=3
  Timer t1;
  const SearchResult n3 = exhaustive_search(3);
  const double s1 = t1.seconds();
  report(1,
         n3.optimum == SuccessProbability(3, 4) && n3.chains_examined == 4096 &&
             s1 < 1.0,
         fmt("exhaustive N=3 optimum %s over %llu chains in %.3f s (want 3/4, "
             "4096, <1 s)",
             prob_str(n3.optimum).c_str(),
             static_cast<unsigned long long>(n3.chains_examined), s1));

  // 2: exhaustive optimum at N=4, single-threaded
  Timer t2;
  const SearchResult n4 = exhaustive_search(4, {1, false});
  const double s2 = t2.seconds();
  report(2,
         n4.optimum == SuccessProbability(3, 4) &&
             n4.chains_examined == (std::uint64_t{1} << 20) && s2 < 30.0,
         fmt("exhaustive N=4 optimum %s over 2^20 chains in %.2f s on 1 worker "
             "(want 3/4, <30 s)",
             prob_str(n4.optimum).c_str(), s2));

  // 3: exhaustive optimum at N=5 on 8 workers
  Timer t3;
  const SearchResult n5 = exhaustive_search(5, {8, false});
  const double s3 = t3.seconds();
  report(3,
         n5.optimum == SuccessProbability(5, 8) &&
             n5.chains_examined == (std::uint64_t{1} << 28) && s3 <= 1800.0,
         fmt("exhaustive N=5 optimum %s over 2^28 chains in %.1f s on 8 workers "
             "(want 5/8, <=1800 s)",
             prob_str(n5.optimum).c_str(), s3));

  // 4: reference-chain values for N=3..8
  {
    Timer t4;
    const SuccessProbability expected[] = {{3, 4}, {3, 4},  {5, 8},
                                           {5, 8}, {9, 16}, {9, 16}};
    bool ok = true;
    std::string got;
    for (int n = 3; n <= 8; ++n) {
      const SuccessProbability p = evaluate_chain_dp(reference_chain(n));
      ok = ok && p == expected[n - 3];
      got += (n > 3 ? ", " : "") + prob_str(p);
    }
    const double s4 = t4.seconds();
    ok = ok && s4 < 1.0;
    report(4, ok,
           fmt("reference chain N=3..8 gives %s in %.3f s (want 3/4, 3/4, 5/8, "
               "5/8, 9/16, 9/16, <1 s)",
               got.c_str(), s4));
  }

  // 5: bound combination pins N=6
  {
    const auto bounds = combine_bounds({{5, SuccessProbability(5, 8)}},
                                       {{6, SuccessProbability(5, 8)}});
    const BoundEntry& n6 = bounds.at(6);
    report(5,
           n6.exact && n6.lower == SuccessProbability(5, 8) &&
               n6.upper == SuccessProbability(5, 8),
           fmt("combined bounds give p_c(N=6) %s %s (want exact 5/8)",
               n6.exact ? "=" : "in",
               (prob_str(n6.lower) + (n6.exact ? "" : ".." + prob_str(n6.upper)))
                   .c_str()));
  }

  // 6: ideal quantum protocol exact for N=3..8
  {
    Timer t6;
    bool ok = true;
    for (int n = 3; n <= 8; ++n) ok = ok && verify_ideal(n);
    const double s6 = t6.seconds();
    report(6, ok && s6 < 1.0,
           fmt("ideal quantum protocol %s on all inputs up to N=8 in %.3f s "
               "(want exact, <1 s)",
               ok ? "exact" : "WRONG", s6));
  }

  // 7: bare threshold at the N=5 optimum
  {
    const double eta = bare_eta_threshold(SuccessProbability(5, 8));
    report(7, eta == 0.25, fmt("bare eta threshold at p_c=5/8 is %.17g (want exactly 0.25)", eta));
  }

  // 8: realistic threshold, closed form vs numeric root
  {
    const double t = chain_transmissivity(0.995, 5);
    const SuccessProbability pc(5, 8);
    const double closed = eta_threshold(pc, t, 0.01, 0.90).eta_min;
    const double numeric = eta_threshold_numeric(pc, t, 0.01, 0.90);
    const bool ok = std::abs(closed - 0.3237) <= 1e-4 &&
                    std::abs(closed - 0.33) < 0.01 &&
                    std::abs(closed - numeric) <= 1e-10;
    report(8, ok,
           fmt("realistic eta threshold %.6f, numeric root %.6f (want 0.3237 "
               "+-1e-4, within 0.01 of 0.33, agreement 1e-10)",
               closed, numeric));
  }

  // 9: DP evaluator equals the naive oracle
  {
    bool ok = true;
    for (int f = 0; f < 16 && ok; ++f) {
      for (int i = 0; i < 256 && ok; ++i) {
        const ProtocolChain c = chain_n3(f, i);
        ok = evaluate_chain_dp(c) == evaluate_chain_naive(c);
      }
    }
    int checked = 0;
    for (std::uint64_t i = 0; i < 10000 && ok; ++i, ++checked) {
      const ProtocolChain c = random_chain(5, 0xACCE55, i);
      const SuccessProbability dp = evaluate_chain_dp(c);
      const SuccessProbability naive = evaluate_chain_naive(c);
      ok = dp.correct == naive.correct && dp.total == naive.total;
    }
    report(9, ok,
           fmt("DP evaluator vs naive oracle: 4096 N=3 chains + %d random N=5 "
               "chains, %s",
               checked, ok ? "zero discrepancies" : "MISMATCH"));
  }

  // 10: upstream-blind chains score exactly 1/2
  {
    int blind = 0;
    bool ok = true;
    for (int f = 0; f < 16; ++f) {
      for (int i = 0; i < 256; ++i) {
        const ProtocolChain chain = chain_n3(f, i);
        if (ignores_first_input(chain)) {
          ++blind;
          ok = ok && evaluate_chain_dp(chain) == SuccessProbability(1, 2);
        }
      }
    }
    ok = ok && blind == 736;
    report(10, ok,
           fmt("%d upstream-blind N=3 chains all evaluate to exactly 1/2 (want "
               "736 chains)",
               blind));
  }

  // 11: Monte Carlo vs analytic values, 1e6 trials each
  Estimate mc_c3, mc_c5, mc_lab, mc_boundary;
  {
    Timer t11;
    const std::uint64_t trials = 1000000;
    mc_c3 = run_classical_experiment(reference_chain(3), trials, 90001);
    mc_c5 = run_classical_experiment(reference_chain(5), trials, 90002);
    const NoiseParams lab(0.33, 0.975, 0.01, 0.90);
    mc_lab = run_quantum_experiment(5, lab, trials, 90003);
    const NoiseParams boundary(0.25, 1.0, 0.0, 1.0);
    mc_boundary = run_quantum_experiment(5, boundary, trials, 90004);
    const double s11 = t11.seconds();
    const double analytic_lab = effective_success(lab);
    const bool ok = within_3_sigma(mc_c3, 0.75) && within_3_sigma(mc_c5, 0.625) &&
                    within_3_sigma(mc_lab, analytic_lab) &&
                    within_3_sigma(mc_boundary, 0.625) && s11 < 120.0;
    report(11, ok,
           fmt("Monte Carlo (1e6 trials): classical N=3 %.4f~0.75, N=5 "
               "%.4f~0.625, noisy quantum %.4f~%.5f, boundary %.4f~0.625, "
               "%.1f s (all within 3 sigma, <120 s)",
               mc_c3.point, mc_c5.point, mc_lab.point, analytic_lab,
               mc_boundary.point, s11));
  }

  // 12: identical payloads for worker counts 1 and 8
  {
    const SearchResult n3_1 = exhaustive_search(3, {1, false});
    const SearchResult n3_8 = exhaustive_search(3, {8, false});
    const SearchResult n4_8 = exhaustive_search(4, {8, false});
    const SearchResult n5_1 = exhaustive_search(5, {1, false});
    const std::uint64_t trials = 1000000;
    const bool mc_same =
        run_classical_experiment(reference_chain(3), trials, 90001, 1) == mc_c3 &&
        run_classical_experiment(reference_chain(5), trials, 90002, 1) == mc_c5 &&
        run_quantum_experiment(5, NoiseParams(0.33, 0.975, 0.01, 0.90), trials,
                               90003, 1) == mc_lab &&
        run_quantum_experiment(5, NoiseParams(0.25, 1.0, 0.0, 1.0), trials,
                               90004, 1) == mc_boundary;
    const bool ok =
        n3_1 == n3_8 && n3_1 == n3 && n4_8 == n4 && n5_1 == n5 && mc_same;
    report(12, ok,
           fmt("worker counts 1 and 8 agree bit-for-bit on searches N=3,4,5 "
               "and all four Monte Carlo runs: %s",
               ok ? "yes" : "NO"));
  }

  std::printf("%d of 12 criteria passed\n", 12 - failures);
  return failures == 0 ? 0 : 1;
}

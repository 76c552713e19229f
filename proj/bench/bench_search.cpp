// Compares the chain-at-a-time serial scan against the prefix-sharing
// kernel, single-threaded and with all available workers.
//
//   bench_search [parties]    (default 4; N=5 takes minutes serially)

#include <omp.h>

#include <cstdio>
#include <cstdlib>

#include "mod4sum/rational.hpp"
#include "mod4sum/search.hpp"

using namespace mod4sum;

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 4;
  if (n < 3) {
    std::fprintf(stderr, "usage: bench_search [parties >= 3]\n");
    return 2;
  }
  const bool allow_large = n >= 6;
  const int threads = omp_get_max_threads();
  const auto chains = static_cast<double>(std::uint64_t{1} << (8 * n - 12));

  std::printf("exhaustive search, N=%d, %.0f chains\n", n, chains);
  std::printf("%-28s %10s %14s %9s\n", "variant", "seconds", "chains/s", "speedup");

  double t0 = omp_get_wtime();
  const SearchResult serial = exhaustive_search_reference(n, allow_large);
  const double serial_s = omp_get_wtime() - t0;
  std::printf("%-28s %10.3f %14.3e %9s\n", "serial reference", serial_s,
              chains / serial_s, "1.00x");

  t0 = omp_get_wtime();
  const SearchResult shared1 = exhaustive_search(n, {1, allow_large});
  const double shared1_s = omp_get_wtime() - t0;
  std::printf("%-28s %10.3f %14.3e %8.2fx\n", "prefix sharing, 1 thread",
              shared1_s, chains / shared1_s, serial_s / shared1_s);

  t0 = omp_get_wtime();
  const SearchResult sharedN = exhaustive_search(n, {threads, allow_large});
  const double sharedN_s = omp_get_wtime() - t0;
  std::printf("%-28s %10.3f %14.3e %8.2fx  (%d threads)\n",
              "prefix sharing, parallel", sharedN_s, chains / sharedN_s,
              serial_s / sharedN_s, threads);

  if (!(serial == shared1 && serial == sharedN)) {
    std::fprintf(stderr, "FAIL: variants disagree\n");
    return 1;
  }
  std::printf("all variants agree: optimum %s, witness %s\n",
              to_fraction_string(serial.optimum).c_str(),
              format_chain(serial.witness).c_str());
  return 0;
}

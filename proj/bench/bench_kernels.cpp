// Times the exact-enumeration kernels against their serial reference: the
// bipartition sweep behind exact_mdbp and the subset sweep behind
// brute_force_minimize, both sharded with OpenMP when threads > 1.

#include "CLI11.hpp"

#include "dupcut/cutgraph.hpp"
#include "dupcut/rng.hpp"
#include "dupcut/sfm.hpp"
#include "dupcut/simgen.hpp"
#include "dupcut/solver.hpp"

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace dupcut;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> sizes{14, 16, 18, 20};
  int threads =
#ifdef _OPENMP
      omp_get_max_threads();
#else
      1;
#endif
  std::uint64_t seed = 42;
  int repeats = 3;

  CLI::App app{"dupcut kernel benchmark: serial vs OpenMP sweeps"};
  app.add_option("--sizes", sizes, "genome counts");
  app.add_option("--threads", threads, "thread count for the parallel runs");
  app.add_option("--seed", seed, "instance seed");
  app.add_option("--repeats", repeats, "best-of-N timing");
  CLI11_PARSE(app, argc, argv);

  std::printf("%-4s %-4s %-6s | %12s %12s %8s | %12s %12s %8s\n", "k", "m", "thr", "exact_ser_ms",
              "exact_par_ms", "speedup", "brute_ser_ms", "brute_par_ms", "speedup");

  for (int k : sizes) {
    GeneForest f = random_forest_uniform(k, 12, 8, mix_seed(seed, static_cast<std::uint64_t>(k)));
    if (static_cast<int>(f.ground.count()) > 20) {
      std::printf("%-4d skipped (ground set above exact limit)\n", k);
      continue;
    }

    SolverLimits serial, parallel;
    serial.threads = 1;
    parallel.threads = threads;

    double exact_ser = 1e300, exact_par = 1e300;
    int cost_ser = -1, cost_par = -1;
    for (int r = 0; r < repeats; ++r) {
      auto t0 = std::chrono::steady_clock::now();
      cost_ser = exact_mdbp(f, false, serial).cost;
      exact_ser = std::min(exact_ser, ms_since(t0));
      t0 = std::chrono::steady_clock::now();
      cost_par = exact_mdbp(f, false, parallel).cost;
      exact_par = std::min(exact_par, ms_since(t0));
    }
    if (cost_ser != cost_par) {
      std::fprintf(stderr, "kernel disagreement at k=%d: %d vs %d\n", k, cost_ser, cost_par);
      return 1;
    }

    double brute_ser = 1e300, brute_par = 1e300;
    std::int64_t val_ser = -1, val_par = -1;
    for (int r = 0; r < repeats; ++r) {
      ForestOracle a = make_i_oracle(f);
      auto t0 = std::chrono::steady_clock::now();
      val_ser = brute_force_minimize(a.oracle, {.max_ground = 20, .threads = 1}).value;
      brute_ser = std::min(brute_ser, ms_since(t0));
      ForestOracle b = make_i_oracle(f);
      t0 = std::chrono::steady_clock::now();
      val_par = brute_force_minimize(b.oracle, {.max_ground = 20, .threads = threads}).value;
      brute_par = std::min(brute_par, ms_since(t0));
    }
    if (val_ser != val_par) {
      std::fprintf(stderr, "brute-force disagreement at k=%d\n", k);
      return 1;
    }

    std::printf("%-4d %-4d %-6d | %12.2f %12.2f %7.2fx | %12.2f %12.2f %7.2fx\n",
                static_cast<int>(f.ground.count()), f.internal_count, threads, exact_ser,
                exact_par, exact_ser / exact_par, brute_ser, brute_par, brute_ser / brute_par);
  }
  return 0;
}

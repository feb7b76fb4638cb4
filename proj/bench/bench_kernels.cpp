// Serial reference vs OpenMP kernels, plus one sweep cell single- vs
// multi-threaded. Usage: gspd_bench [p ...]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

#include "gspd/harness.hpp"
#include "gspd/kernels.hpp"
#include "gspd/rng.hpp"

namespace {

double best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> sizes{100, 200, 500, 1000};
  if (argc > 1) {
    sizes.clear();
    for (int k = 1; k < argc; ++k) sizes.push_back(static_cast<std::size_t>(std::atol(argv[k])));
  }
  std::printf("threads available: %d\n", gspd::kernels::max_threads());
  std::printf("%-10s %6s %12s %12s %8s\n", "kernel", "p", "serial_s", "parallel_s", "speedup");

  gspd::Rng rng(1);
  for (std::size_t p : sizes) {
    gspd::FactorMatrix q(p);
    for (std::size_t i = 0; i < p; ++i)
      for (double& x : q.row(i)) x = rng.uniform();
    const double ts = best_of(3, [&] { (void)gspd::kernels::gram_serial(q); });
    const double tp = best_of(3, [&] { (void)gspd::kernels::gram_parallel(q); });
    std::printf("%-10s %6zu %12.6f %12.6f %8.2f\n", "gram", p, ts, tp, ts / tp);

    const gspd::SymMatrix m = gspd::kernels::gram_serial(q);
    const double rs = best_of(5, [&] { (void)gspd::kernels::offdiag_abs_row_sums_serial(m); });
    const double rp = best_of(5, [&] { (void)gspd::kernels::offdiag_abs_row_sums_parallel(m); });
    std::printf("%-10s %6zu %12.6f %12.6f %8.2f\n", "rowsums", p, rs, rp, rs / rp);
  }

  gspd::SweepSpec spec;
  spec.p_values = {100};
  spec.d_values = {"0.25"};
  spec.graphs_per_cell = 4;
  spec.matrices_per_graph = 4;
  spec.methods = {gspd::Method::PartialOrth};
  spec.threads = 1;
  const double cs = best_of(1, [&] { (void)gspd::run_sweep(spec); });
  spec.threads = 0;
  const double cp = best_of(1, [&] { (void)gspd::run_sweep(spec); });
  std::printf("%-10s %6d %12.6f %12.6f %8.2f\n", "po-cell", 100, cs, cp, cs / cp);
  return 0;
}

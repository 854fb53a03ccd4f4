// Serial vs OpenMP timings for the dense kernels.
//
//   kernel_bench [max_n]   (default 1024)
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

#include "vi/kernels.hpp"
#include "vi/rng.hpp"

namespace k = vi::kernels;

namespace {

std::vector<double> make_data(std::size_t n, std::uint64_t seed) {
  vi::Xoshiro256 rng(seed);
  std::vector<double> v(n);
  for (auto& e : v) e = rng.uniform(-1.0, 1.0);
  return v;
}

// Best of several repetitions, in seconds.
double time_it(const std::function<void()>& fn, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

void report(const char* name, std::size_t n, double ts, double tp, double diff) {
  std::printf("%-9s n=%-5zu serial %10.3e s   omp %10.3e s   speedup %5.2fx   max|diff| %.1e\n", name, n,
              ts, tp, ts / tp, diff);
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t max_n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 1024;
  std::printf("OpenMP %s, %d thread(s)\n", k::openmp_enabled() ? "on" : "off", k::max_threads());

  for (std::size_t n = 64; n <= max_n; n *= 2) {
    const auto a = make_data(n * n, 1);
    const auto b = make_data(n * n, 2);
    const auto x = make_data(n, 3);
    const int reps = n <= 256 ? 20 : 3;

    volatile double sink = 0.0;
    double ds = 0.0, dp = 0.0;
    const double tds = time_it([&] { ds = k::serial::dot(a, b); sink = ds; }, reps);
    const double tdp = time_it([&] { dp = k::omp::dot(a, b); sink = dp; }, reps);
    report("dot", n * n, tds, tdp, std::abs(ds - dp));

    std::vector<double> ys(n), yp(n);
    const double tms = time_it([&] { k::serial::matvec(a, n, n, x, ys); }, reps);
    const double tmp = time_it([&] { k::omp::matvec(a, n, n, x, yp); }, reps);
    report("matvec", n, tms, tmp, max_diff(ys, yp));

    if (n <= 512) {
      std::vector<double> cs(n * n), cp(n * n);
      const double tgs = time_it([&] { k::serial::gemm_abt(a, b, n, n, n, cs); }, 3);
      const double tgp = time_it([&] { k::omp::gemm_abt(a, b, n, n, n, cp); }, 3);
      report("gemm_abt", n, tgs, tgp, max_diff(cs, cp));

      const double tcs = time_it([&] { k::serial::gemm(a, b, n, n, n, cs); }, 3);
      const double tcp = time_it([&] { k::omp::gemm(a, b, n, n, n, cp); }, 3);
      report("gemm", n, tcs, tcp, max_diff(cs, cp));
    }
    (void)sink;
  }
  return 0;
}

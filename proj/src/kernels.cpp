#include "vi/kernels.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vi::kernels {

namespace serial {

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

void matvec(std::span<const double> a, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y) noexcept {
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = a.data() + i * cols;
    double sum = 0.0;
    for (std::size_t j = 0; j < cols; ++j) sum += row[j] * x[j];
    y[i] = sum;
  }
}

void gemm_abt(std::span<const double> a, std::span<const double> b, std::size_t n, std::size_t p,
              std::size_t k, std::span<double> c) noexcept {
  for (std::size_t i = 0; i < n; ++i) {
    const double* ai = a.data() + i * k;
    for (std::size_t j = 0; j < p; ++j) {
      const double* bj = b.data() + j * k;
      double sum = 0.0;
      for (std::size_t t = 0; t < k; ++t) sum += ai[t] * bj[t];
      c[i * p + j] = sum;
    }
  }
}

void gemm(std::span<const double> a, std::span<const double> b, std::size_t n, std::size_t k,
          std::size_t p, std::span<double> c) noexcept {
  std::fill(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n * p), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double* ci = c.data() + i * p;
    for (std::size_t t = 0; t < k; ++t) {
      const double ait = a[i * k + t];
      const double* bt = b.data() + t * p;
      for (std::size_t j = 0; j < p; ++j) ci[j] += ait * bt[j];
    }
  }
}

}  // namespace serial

namespace omp {

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double sum = 0.0;
  const auto n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for reduction(+ : sum) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void matvec(std::span<const double> a, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y) noexcept {
  const auto n = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double* row = a.data() + i * static_cast<std::ptrdiff_t>(cols);
    double sum = 0.0;
    for (std::size_t j = 0; j < cols; ++j) sum += row[j] * x[j];
    y[i] = sum;
  }
}

void gemm_abt(std::span<const double> a, std::span<const double> b, std::size_t n, std::size_t p,
              std::size_t k, std::span<double> c) noexcept {
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    const double* ai = a.data() + i * static_cast<std::ptrdiff_t>(k);
    for (std::size_t j = 0; j < p; ++j) {
      const double* bj = b.data() + j * k;
      double sum = 0.0;
      for (std::size_t t = 0; t < k; ++t) sum += ai[t] * bj[t];
      c[i * p + j] = sum;
    }
  }
}

void gemm(std::span<const double> a, std::span<const double> b, std::size_t n, std::size_t k,
          std::size_t p, std::span<double> c) noexcept {
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    double* ci = c.data() + i * static_cast<std::ptrdiff_t>(p);
    std::fill(ci, ci + p, 0.0);
    for (std::size_t t = 0; t < k; ++t) {
      const double ait = a[i * k + t];
      const double* bt = b.data() + t * p;
      for (std::size_t j = 0; j < p; ++j) ci[j] += ait * bt[j];
    }
  }
}

}  // namespace omp

bool openmp_enabled() noexcept {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {

bool go_parallel(std::size_t work) noexcept {
  return openmp_enabled() && work >= kParallelThreshold && max_threads() > 1;
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  return serial::dot(a, b);
}

void matvec(std::span<const double> a, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y) noexcept {
  if (go_parallel(rows * cols)) {
    omp::matvec(a, rows, cols, x, y);
  } else {
    serial::matvec(a, rows, cols, x, y);
  }
}

void gemm_abt(std::span<const double> a, std::span<const double> b, std::size_t n, std::size_t p,
              std::size_t k, std::span<double> c) noexcept {
  if (go_parallel(n * p * k)) {
    omp::gemm_abt(a, b, n, p, k, c);
  } else {
    serial::gemm_abt(a, b, n, p, k, c);
  }
}

void gemm(std::span<const double> a, std::span<const double> b, std::size_t n, std::size_t k,
          std::size_t p, std::span<double> c) noexcept {
  if (go_parallel(n * k * p)) {
    omp::gemm(a, b, n, k, p, c);
  } else {
    serial::gemm(a, b, n, k, p, c);
  }
}

}  // namespace vi::kernels

// Raw dense kernels. Each kernel exists twice: a serial reference that the
// tests treat as ground truth, and an OpenMP version used for large operands.
//
// The OpenMP versions partition over output rows, so every output entry is
// accumulated in the same order as the serial reference and the results are
// bit-identical. dot() is the exception: its parallel reduction reorders the
// sum, which is why the dispatching wrappers below keep dot() serial.
#pragma once

#include <cstddef>
#include <span>

namespace vi::kernels {

namespace serial {

double dot(std::span<const double> a, std::span<const double> b) noexcept;

/// y = A x, A is rows×cols row-major.
void matvec(std::span<const double> a, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y) noexcept;

/// C = A Bᵀ for row-major A (n×k) and B (p×k); C is n×p.
void gemm_abt(std::span<const double> a, std::span<const double> b, std::size_t n, std::size_t p,
              std::size_t k, std::span<double> c) noexcept;

/// C = A B for row-major A (n×k) and B (k×p); C is n×p.
void gemm(std::span<const double> a, std::span<const double> b, std::size_t n, std::size_t k,
          std::size_t p, std::span<double> c) noexcept;

}  // namespace serial

namespace omp {

double dot(std::span<const double> a, std::span<const double> b) noexcept;
void matvec(std::span<const double> a, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y) noexcept;
void gemm_abt(std::span<const double> a, std::span<const double> b, std::size_t n, std::size_t p,
              std::size_t k, std::span<double> c) noexcept;
void gemm(std::span<const double> a, std::span<const double> b, std::size_t n, std::size_t k,
          std::size_t p, std::span<double> c) noexcept;

}  // namespace omp

/// Operand size (multiply-adds) above which the dispatchers switch to OpenMP.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 16;

/// True when the library was built with OpenMP.
bool openmp_enabled() noexcept;
int max_threads() noexcept;

double dot(std::span<const double> a, std::span<const double> b) noexcept;
void matvec(std::span<const double> a, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y) noexcept;
void gemm_abt(std::span<const double> a, std::span<const double> b, std::size_t n, std::size_t p,
              std::size_t k, std::span<double> c) noexcept;
void gemm(std::span<const double> a, std::span<const double> b, std::size_t n, std::size_t k,
          std::size_t p, std::span<double> c) noexcept;

}  // namespace vi::kernels

// Dense vectors and matrices shared by every solver component.
#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vi {

/// Raised when operand shapes disagree. Always a caller bug.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim, double fill = 0.0) : data_(dim, fill) {}
  Vector(std::initializer_list<double> values) : data_(values) {}
  explicit Vector(std::vector<double> values) : data_(std::move(values)) {}

  std::size_t dim() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator[](std::size_t i) noexcept { return data_[i]; }
  double operator[](std::size_t i) const noexcept { return data_[i]; }

  std::span<double> span() noexcept { return data_; }
  std::span<const double> span() const noexcept { return data_; }
  const std::vector<double>& values() const noexcept { return data_; }

  auto begin() noexcept { return data_.begin(); }
  auto end() noexcept { return data_.end(); }
  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }

  /// True when no entry is NaN or infinite.
  bool is_finite() const noexcept;

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(double s) noexcept;

  /// this += s * other
  Vector& axpy(double s, const Vector& other);

  bool operator==(const Vector&) const = default;

 private:
  std::vector<double> data_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator*(double s, Vector a);
Vector operator*(Vector a, double s);

/// Row-major dense matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const Vector& diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  bool is_finite() const noexcept;

  Matrix transposed() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double inner(const Vector& a, const Vector& b);
double norm(const Vector& a);
double squared_norm(const Vector& a);
/// ‖a − b‖ without a temporary.
double distance(const Vector& a, const Vector& b);

Vector operator*(const Matrix& m, const Vector& x);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(Matrix a, const Matrix& b);

/// A·Aᵀ, the Gram product of the rows.
Matrix gram_rows(const Matrix& a);

struct SpectralNormEstimate {
  double value = 0.0;
  int iterations = 0;
  /// False when max_iter was exhausted; value is then the best estimate seen.
  bool converged = false;
};

inline constexpr double kSpectralTol = 1e-10;
inline constexpr int kSpectralMaxIter = 10000;

/// Largest singular value of a square matrix by power iteration on MᵀM.
///
/// The start vector is drawn from a fixed-seed generator, so repeated calls
/// return bit-identical estimates. Iteration stops once the eigen-residual
/// ‖MᵀMv − λv‖ falls below tol·λ, which bounds the distance from λ to the
/// spectrum of MᵀM.
SpectralNormEstimate spectral_norm(const Matrix& m, double tol = kSpectralTol,
                                   int max_iter = kSpectralMaxIter);

std::string to_string(const Vector& v);

}  // namespace vi

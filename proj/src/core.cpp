#include "vi/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vi/kernels.hpp"
#include "vi/rng.hpp"

namespace vi {

namespace {

void require_same_dim(const Vector& a, const Vector& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) +
                         " vs " + std::to_string(b.dim()) + ")");
  }
}

bool all_finite(std::span<const double> xs) noexcept {
  return std::all_of(xs.begin(), xs.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

bool Vector::is_finite() const noexcept { return all_finite(data_); }

Vector& Vector::operator+=(const Vector& other) {
  require_same_dim(*this, other, "Vector::operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  require_same_dim(*this, other, "Vector::operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Vector& Vector::operator*=(double s) noexcept {
  for (auto& v : data_) v *= s;
  return *this;
}

Vector& Vector::axpy(double s, const Vector& other) {
  require_same_dim(*this, other, "Vector::axpy");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += s * other.data_[i];
  return *this;
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator*(double s, Vector a) { return a *= s; }
Vector operator*(Vector a, double s) { return a *= s; }

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("Matrix: entry count " + std::to_string(data_.size()) +
                         " does not match " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("Matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const Vector& diag) {
  Matrix m(diag.dim(), diag.dim());
  for (std::size_t i = 0; i < diag.dim(); ++i) m(i, i) = diag[i];
  return m;
}

bool Matrix::is_finite() const noexcept { return all_finite(data_); }

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double inner(const Vector& a, const Vector& b) {
  require_same_dim(a, b, "inner");
  return kernels::dot(a.span(), b.span());
}

double squared_norm(const Vector& a) { return kernels::dot(a.span(), a.span()); }

double norm(const Vector& a) { return std::sqrt(squared_norm(a)); }

double distance(const Vector& a, const Vector& b) {
  require_same_dim(a, b, "distance");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

Vector operator*(const Matrix& m, const Vector& x) {
  if (m.cols() != x.dim()) {
    throw DimensionError("matvec: matrix has " + std::to_string(m.cols()) +
                         " columns, vector has dim " + std::to_string(x.dim()));
  }
  Vector y(m.rows());
  kernels::matvec(m.data(), m.rows(), m.cols(), x.span(), y.span());
  return y;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matmul: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  kernels::gemm(a.data(), b.data(), a.rows(), a.cols(), b.cols(), c.data());
  return c;
}

Matrix operator+(Matrix a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix add: shape mismatch");
  auto dst = a.data();
  auto src = b.data();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
  return a;
}

Matrix gram_rows(const Matrix& a) {
  Matrix c(a.rows(), a.rows());
  kernels::gemm_abt(a.data(), a.data(), a.rows(), a.rows(), a.cols(), c.data());
  return c;
}

SpectralNormEstimate spectral_norm(const Matrix& m, double tol, int max_iter) {
  if (!m.square()) throw DimensionError("spectral_norm: matrix must be square");
  if (!(tol > 0.0)) throw std::invalid_argument("spectral_norm: tol must be positive");
  const std::size_t n = m.rows();
  SpectralNormEstimate est;
  if (n == 0) {
    est.converged = true;
    return est;
  }

  const Matrix mt = m.transposed();
  Xoshiro256 rng(0x5eed5eedULL);
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = rng.uniform(-1.0, 1.0);
  v *= 1.0 / norm(v);

  double best = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    Vector w = mt * (m * v);  // MᵀM v
    const double lambda = inner(v, w);
    best = std::max(best, lambda);
    est.iterations = it;

    const double wn = norm(w);
    if (wn == 0.0) {
      // v lies in the null space; MᵀM is zero on the whole Krylov space.
      est.converged = true;
      break;
    }
    Vector r = w;
    r.axpy(-lambda, v);
    if (norm(r) <= tol * lambda) {
      est.converged = true;
      break;
    }
    v = std::move(w);
    v *= 1.0 / wn;
  }
  est.value = std::sqrt(std::max(best, 0.0));
  return est;
}

std::string to_string(const Vector& v) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < v.dim(); ++i) os << (i ? ", " : "") << v[i];
  os << ')';
  return os.str();
}

}  // namespace vi

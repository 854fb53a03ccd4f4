#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vi/rng.hpp"

namespace vi::oracle {

std::vector<double> jacobi_singular_values(const Matrix& a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::vector<double>> col(cols, std::vector<double>(rows));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) col[j][i] = a(i, j);

  auto dot = [&](const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows; ++i) s += x[i] * y[i];
    return s;
  };

  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < cols; ++p) {
      for (std::size_t q = p + 1; q < cols; ++q) {
        const double alpha = dot(col[p], col[p]);
        const double beta = dot(col[q], col[q]);
        const double gamma = dot(col[p], col[q]);
        if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta) || gamma == 0.0) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < rows; ++i) {
          const double xp = col[p][i], xq = col[q][i];
          col[p][i] = c * xp - s * xq;
          col[q][i] = s * xp + c * xq;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(cols);
  for (std::size_t j = 0; j < cols; ++j) sv[j] = std::sqrt(dot(col[j], col[j]));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

std::optional<std::vector<double>> gauss_solve(std::vector<double> a, std::vector<double> rhs,
                                               std::size_t n, double pivot_tol) {
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i * n + k]) > std::abs(a[piv * n + k])) piv = i;
    if (std::abs(a[piv * n + k]) < pivot_tol) return std::nullopt;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
      std::swap(rhs[k], rhs[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i * n + k] / a[k * n + k];
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
      rhs[i] -= f * rhs[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i * n + j] * x[j];
    x[i] = s / a[i * n + i];
  }
  return x;
}

Vector naive_matvec(const Matrix& m, const Vector& x) {
  Vector y(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

namespace {

// Solves [I  Aᵀ; A  0] [z; λ] = [u; c] for the given active rows.
std::optional<std::pair<Vector, std::vector<double>>> equality_kkt(
    const std::vector<std::vector<double>>& rows, const std::vector<double>& c, const Vector& u) {
  const std::size_t n = u.dim(), k = rows.size(), dim = n + k;
  std::vector<double> a(dim * dim, 0.0), rhs(dim, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    a[i * dim + i] = 1.0;
    rhs[i] = u[i];
  }
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t j = 0; j < n; ++j) {
      a[j * dim + n + r] = rows[r][j];
      a[(n + r) * dim + j] = rows[r][j];
    }
    rhs[n + r] = c[r];
  }
  auto sol = gauss_solve(std::move(a), std::move(rhs), dim, 1e-10);
  if (!sol) return std::nullopt;
  Vector z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = (*sol)[i];
  return std::make_pair(z, std::vector<double>(sol->begin() + static_cast<std::ptrdiff_t>(n), sol->end()));
}

}  // namespace

Vector halfspace_kkt(const Vector& u, const Vector& v, const Vector& x) {
  double c = 0.0, vu = 0.0;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    c += v[i] * x[i];
    vu += v[i] * u[i];
  }
  if (vu <= c) return u;
  auto sol = equality_kkt({std::vector<double>(v.begin(), v.end())}, {c}, u);
  if (!sol) throw std::runtime_error("halfspace_kkt: singular system");
  return sol->first;
}

Vector polyhedron_enumeration(const Matrix& q, const Vector& b, const Vector& u) {
  const std::size_t l = q.rows(), n = q.cols();
  if (l > 16) throw std::invalid_argument("polyhedron_enumeration: too many rows");
  auto feasible = [&](const Vector& z) {
    for (std::size_t i = 0; i < l; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += q(i, j) * z[j];
      if (s > b[i] + 1e-9) return false;
    }
    return true;
  };

  std::optional<Vector> best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < (1u << l); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) > n) continue;
    std::vector<std::vector<double>> rows;
    std::vector<double> c;
    for (std::size_t i = 0; i < l; ++i) {
      if (!(mask & (1u << i))) continue;
      rows.emplace_back(q.row(i).begin(), q.row(i).end());
      c.push_back(b[i]);
    }
    auto sol = equality_kkt(rows, c, u);
    if (!sol || !feasible(sol->first)) continue;
    double d = 0.0;
    for (std::size_t j = 0; j < n; ++j) d += (sol->first[j] - u[j]) * (sol->first[j] - u[j]);
    if (d < best_dist) {
      best_dist = d;
      best = sol->first;
    }
  }
  if (!best) throw std::runtime_error("polyhedron_enumeration: no feasible candidate");
  return *best;
}

std::vector<Vector> rejection_sample(const Matrix& q, const Vector& b, int count,
                                     std::uint64_t seed) {
  const std::size_t n = q.cols();
  Xoshiro256 rng(seed);
  auto feasible = [&](const Vector& z) {
    for (std::size_t i = 0; i < q.rows(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += q(i, j) * z[j];
      if (s > b[i]) return false;
    }
    return true;
  };
  auto draw = [&](double r) {
    Vector z(n);
    for (auto& v : z) v = rng.uniform(-r, r);
    return z;
  };

  double r = 4.0;
  for (int shrink = 0; shrink < 40; ++shrink, r *= 0.5) {
    int hits = 0;
    for (int t = 0; t < 2000; ++t) hits += feasible(draw(r));
    if (hits >= 20) break;
  }
  std::vector<Vector> pts;
  for (long tries = 0; static_cast<int>(pts.size()) < count; ++tries) {
    if (tries > 100000000L) throw std::runtime_error("rejection_sample: acceptance too low");
    Vector z = draw(r);
    if (feasible(z)) pts.push_back(std::move(z));
  }
  return pts;
}

}  // namespace vi::oracle

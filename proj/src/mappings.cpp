#include "vi/mappings.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "vi/rng.hpp"

namespace vi {

AffineField::AffineField(Matrix m, Vector q) : m_(std::move(m)), q_(std::move(q)) {
  if (!m_.square() || m_.rows() != q_.dim()) {
    throw DimensionError("AffineField: M must be square with q.dim rows");
  }
}

AffineField::AffineField(Matrix m, Vector q, double lipschitz)
    : AffineField(std::move(m), std::move(q)) {
  lipschitz_ = lipschitz;
}

Vector AffineField::eval(const Vector& x) const {
  Vector y = m_ * x;
  return y += q_;
}

Vector FunctionField::eval(const Vector& x) const {
  if (x.dim() != dim_) throw DimensionError("FunctionField: argument dimension mismatch");
  Vector y = fn_(x);
  if (y.dim() != dim_) throw DimensionError("FunctionField: callable changed the dimension");
  return y;
}

AffineField rotation_field() { return AffineField({{0.0, -1.0}, {1.0, 0.0}}, Vector(2), 1.0); }

Vector affine_eval(const AffineField& f, const Vector& x) { return f.eval(x); }

MonotonicityReport check_monotone(const VectorField& f, int samples, double box_radius,
                                  std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("check_monotone: samples must be >= 1");
  Xoshiro256 rng(seed);
  const std::size_t n = f.dim();
  MonotonicityReport report;
  report.min_pairing = std::numeric_limits<double>::infinity();
  Vector x(n), y(n);
  for (int s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < n; ++i) x[i] = rng.uniform(-box_radius, box_radius);
    for (std::size_t i = 0; i < n; ++i) y[i] = rng.uniform(-box_radius, box_radius);
    const Vector dx = x - y;
    const double pairing = inner(f.eval(x) - f.eval(y), dx);
    report.min_pairing = std::min(report.min_pairing, pairing);
    if (pairing < -1e-9 * (1.0 + squared_norm(dx))) report.violated = true;
  }
  return report;
}

double estimate_lipschitz(const AffineField& f) { return spectral_norm(f.matrix()).value; }

double estimate_lipschitz(AffineField& f) {
  const double l = spectral_norm(f.matrix()).value;
  f.set_lipschitz_hint(l);
  return l;
}

}  // namespace vi

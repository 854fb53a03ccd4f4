// Vector fields F : Rᵐ → Rᵐ and sampling diagnostics for them.
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>

#include "vi/core.hpp"

namespace vi {

/// The mapping of a variational inequality. eval must be re-entrant:
/// benchmark sweeps call it concurrently from several threads.
class VectorField {
 public:
  virtual ~VectorField() = default;

  virtual Vector eval(const Vector& x) const = 0;
  virtual std::size_t dim() const noexcept = 0;

  /// A known upper bound on the Lipschitz constant, if one is available.
  virtual std::optional<double> lipschitz_hint() const noexcept { return std::nullopt; }

  Vector operator()(const Vector& x) const { return eval(x); }
};

/// F(x) = Mx + q.
class AffineField final : public VectorField {
 public:
  AffineField(Matrix m, Vector q);
  AffineField(Matrix m, Vector q, double lipschitz);

  Vector eval(const Vector& x) const override;
  std::size_t dim() const noexcept override { return q_.dim(); }
  std::optional<double> lipschitz_hint() const noexcept override { return lipschitz_; }

  const Matrix& matrix() const noexcept { return m_; }
  const Vector& offset() const noexcept { return q_; }

  void set_lipschitz_hint(double l) noexcept { lipschitz_ = l; }

 private:
  Matrix m_;
  Vector q_;
  std::optional<double> lipschitz_;
};

/// Wraps an arbitrary callable.
class FunctionField final : public VectorField {
 public:
  using Fn = std::function<Vector(const Vector&)>;

  FunctionField(std::size_t dim, Fn fn, std::optional<double> lipschitz = std::nullopt)
      : dim_(dim), fn_(std::move(fn)), lipschitz_(lipschitz) {}

  Vector eval(const Vector& x) const override;
  std::size_t dim() const noexcept override { return dim_; }
  std::optional<double> lipschitz_hint() const noexcept override { return lipschitz_; }

 private:
  std::size_t dim_;
  Fn fn_;
  std::optional<double> lipschitz_;
};

/// F(x₁, x₂) = (−x₂, x₁): monotone, 1-Lipschitz, and the plain projection
/// method diverges on it over R².
AffineField rotation_field();

/// Affine evaluation through the field type; kept as a free function so
/// callers holding only matrices need not build a field.
Vector affine_eval(const AffineField& f, const Vector& x);

struct MonotonicityReport {
  double min_pairing = 0.0;
  bool violated = false;
};

/// Samples pairs uniformly in [−radius, radius]ᵐ and reports the smallest
/// ⟨F(x) − F(y), x − y⟩. A pair counts as a violation when that pairing is
/// below −1e-9·(1 + ‖x − y‖²). This is evidence, not a certificate.
MonotonicityReport check_monotone(const VectorField& f, int samples, double box_radius,
                                  std::uint64_t seed);

/// ‖M‖₂ via spectral_norm; also stores it as the field's Lipschitz hint.
double estimate_lipschitz(AffineField& f);
double estimate_lipschitz(const AffineField& f);

}  // namespace vi

// Backtracking stepsize rule α = σρᵐ and the projection–contraction
// correction factor.
#pragma once

#include <stdexcept>

#include "vi/core.hpp"
#include "vi/geometry.hpp"
#include "vi/mappings.hpp"

namespace vi {

class LineSearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LineSearchParams {
  double sigma = 7.55;  // initial trial step
  double rho = 0.5;     // backtracking factor
  double mu = 0.85;     // acceptance ratio
  int trial_cap = 100;
  /// Start each search at the previous accepted exponent minus one instead
  /// of at m = 0. The stepsize floor below is only guaranteed without it.
  bool warm_start = false;

  /// Throws std::invalid_argument on out-of-range parameters.
  void validate() const;
};

struct LineSearchOutcome {
  double alpha = 0.0;
  Vector y;    // P_C(x − αF(x))
  Vector f_y;  // F(y)
  int trials = 0;  // condition evaluations, including the accepted one
  int m = 0;       // accepted exponent
  /// x coincided with y, so x solves the VI.
  bool at_solution = false;
};

/// Finds the smallest m ≥ first_m such that α = σρᵐ and y = P_C(x − αF(x))
/// satisfy α‖F(x) − F(y)‖ ≤ μ‖x − y‖. Returns early with at_solution set when
/// ‖x − y‖ ≤ 1e-14·(1 + ‖x‖). Throws LineSearchError once trial_cap
/// conditions have been checked without success.
LineSearchOutcome armijo_search(const VectorField& f, const FeasibleSet& set, const Vector& x,
                                const Vector& f_x, const LineSearchParams& params,
                                double projector_tol = kDefaultProjectorTol, int first_m = 0);

/// (x − y) − α(F(x) − F(y))
Vector compute_d(const Vector& x, const Vector& y, double alpha, const Vector& f_x,
                 const Vector& f_y);

/// ⟨x − y, d⟩ / ‖d‖². Throws std::domain_error when ‖d‖ ≤ 1e-300.
double compute_rho(const Vector& x, const Vector& y, const Vector& d);

/// (1 − μ)/(1 + μ²), the smallest ρ_k an accepted step can produce.
constexpr double rho_lower_bound(double mu) noexcept { return (1.0 - mu) / (1.0 + mu * mu); }

/// 1/(1 − μ)², from ⟨x − y, d⟩ ≤ (1 + μ)‖x − y‖² and ‖d‖ ≥ (1 − μ)‖x − y‖.
constexpr double rho_upper_bound(double mu) noexcept { return 1.0 / ((1.0 - mu) * (1.0 - mu)); }

/// min{σ, μρ/L}: no accepted cold-start step is shorter when F is L-Lipschitz.
double stepsize_floor(const LineSearchParams& params, double lipschitz) noexcept;

}  // namespace vi

// Projection-type iterative methods for monotone variational inequalities:
// find x* ∈ C with ⟨F(x*), x − x*⟩ ≥ 0 for all x ∈ C.
//
//   projection method      x⁺ = P_C(x − αF(x))                   fixed α
//   extragradient (EG)     y = P_C(x − αF(x)), x⁺ = P_C(x − αF(y))
//   projection-contraction y as EG,          x⁺ = P_C(x − γρα F(y))
//   subgradient EG (SEM)   y as EG,          x⁺ = P_T(x − αF(y))
//   modified SEM (MSEM)    y as EG,          x⁺ = P_T(x − γρα F(y))
//
// where α comes from armijo_search, ρ = ⟨x − y, d⟩/‖d‖² with
// d = (x − y) − α(F(x) − F(y)), and T is the halfspace through y with normal
// (x − αF(x)) − y, which contains C. SEM and MSEM therefore need only one
// projection onto C per iteration; the second is closed form.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vi/core.hpp"
#include "vi/geometry.hpp"
#include "vi/mappings.hpp"
#include "vi/stepsize.hpp"

namespace vi {

enum class StopRule {
  ResidualXY,  // ‖x − y‖ ≤ ε
  NormX,       // ‖x‖ ≤ ε, meaningful only when the solution is 0
};

enum class Algorithm { Projection, Extragradient, ProjectionContraction, Subgradient, ModifiedSubgradient };

/// Short names used on the command line and in reports: pm, eg, pc, sem, msem.
std::string_view short_name(Algorithm a) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept;

struct SolverConfig {
  LineSearchParams ls;
  /// Relaxation of the contraction step, in (0, 2). Values in [1, 2) tend to
  /// work best in practice.
  double gamma = 1.99;
  double eps = 0.005;
  int max_iter = 200000;
  StopRule stop_rule = StopRule::ResidualXY;
  double projector_tol = kDefaultProjectorTol;

  /// Re-verify the per-step inequalities and record any that fail.
  bool check_invariants = false;
  /// Enables the distance-based checks (Fejér monotonicity and the
  /// contraction inequalities) when check_invariants is set.
  std::optional<Vector> reference_solution;
  bool record_trajectory = false;
  /// Replace the γρ scaling of PC/MSEM by 1. Only useful to compare the
  /// methods against their unscaled counterparts.
  bool unit_correction = false;

  void validate() const;
};

/// Iterates of one run. xs holds x⁰ … x^K (one more than the others); ys,
/// alphas and rhos hold one entry per completed iteration. rhos is 1 for
/// methods without a contraction factor.
struct Trajectory {
  std::vector<Vector> xs;
  std::vector<Vector> ys;
  std::vector<double> alphas;
  std::vector<double> rhos;
};

struct SolveReport {
  int iterations = 0;
  /// Stepsize condition evaluations over the whole run (m_k + 1 per
  /// iteration; each costs one projection and one F evaluation).
  long inner_trials = 0;
  double wall_seconds = 0.0;
  /// ‖x^k − y^k‖ per completed iteration.
  std::vector<double> residuals;
  Vector final_x;
  bool converged = false;
  /// Terminated because x^k == y^k, which certifies a solution.
  bool stopped_at_solution = false;
  /// An iterate became non-finite.
  bool diverged = false;
  std::vector<std::string> invariant_violations;
  std::optional<Trajectory> trajectory;
};

SolveReport solve_projection_method(const VectorField& f, const FeasibleSet& set,
                                    const Vector& x0, double alpha, const SolverConfig& cfg);
SolveReport solve_extragradient(const VectorField& f, const FeasibleSet& set, const Vector& x0,
                                const SolverConfig& cfg);
SolveReport solve_projection_contraction(const VectorField& f, const FeasibleSet& set,
                                         const Vector& x0, const SolverConfig& cfg);
SolveReport solve_subgradient_extragradient(const VectorField& f, const FeasibleSet& set,
                                            const Vector& x0, const SolverConfig& cfg);
SolveReport solve_modified_subgradient_extragradient(const VectorField& f, const FeasibleSet& set,
                                                     const Vector& x0, const SolverConfig& cfg);

/// Dispatches on the algorithm. The projection method uses α = 1/L when F
/// carries a Lipschitz hint and α = σ otherwise.
SolveReport solve(Algorithm algo, const VectorField& f, const FeasibleSet& set, const Vector& x0,
                  const SolverConfig& cfg);

/// The halfspace {w : ⟨(x − αF(x)) − y, w − y⟩ ≤ 0}, or the whole space when
/// that normal is zero.
FeasibleSet build_tk(const Vector& x, double alpha, const Vector& f_x, const Vector& y);

/// Natural residual ‖x − P_C(x − αF(x))‖; zero exactly at solutions.
double vi_residual(const VectorField& f, const FeasibleSet& set, const Vector& x, double alpha,
                   double projector_tol = kDefaultProjectorTol);

}  // namespace vi

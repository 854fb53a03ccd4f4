// Independent reference computations for the unit and acceptance tests.
// Nothing here calls into the projector, spectral-norm or solver code paths
// it is used to check.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vi/core.hpp"
#include "vi/geometry.hpp"

namespace vi::oracle {

/// Singular values by one-sided (Hestenes) Jacobi rotations, descending.
std::vector<double> jacobi_singular_values(const Matrix& a);

/// Solves A x = rhs by Gaussian elimination with partial pivoting.
/// Empty when a pivot falls below pivot_tol.
std::optional<std::vector<double>> gauss_solve(std::vector<double> a, std::vector<double> rhs,
                                               std::size_t n, double pivot_tol = 1e-12);

/// Row-by-row dot products, no kernels.
Vector naive_matvec(const Matrix& m, const Vector& x);

/// argmin ‖z − u‖ s.t. ⟨v, z − x⟩ ≤ 0 from the KKT system of one constraint.
Vector halfspace_kkt(const Vector& u, const Vector& v, const Vector& x);

/// Projection onto {Qz ≤ b} by trying every subset of rows as the active
/// set, solving the equality-constrained KKT system, and keeping the closest
/// feasible candidate. Exponential in Q.rows(); meant for ≤ 10 rows.
Vector polyhedron_enumeration(const Matrix& q, const Vector& b, const Vector& u);

/// Points of {Qx ≤ b} by rejection from a box [−r, r]ᵐ, r halved until the
/// acceptance rate is usable. Requires 0 to be feasible.
std::vector<Vector> rejection_sample(const Matrix& q, const Vector& b, int count,
                                     std::uint64_t seed);

}  // namespace vi::oracle

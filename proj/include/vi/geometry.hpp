// Metric projections onto the feasible sets used by the solvers.
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "vi/core.hpp"

namespace vi {

inline constexpr double kDefaultProjectorTol = 1e-10;
inline constexpr int kDefaultMaxSweeps = 100000;

/// Thrown when a polyhedral projector exhausts its budget or finds the set empty.
class ProjectionError : public std::runtime_error {
 public:
  ProjectionError(const std::string& what, Vector best, int sweeps)
      : std::runtime_error(what), best_(std::move(best)), sweeps_(sweeps) {}
  const Vector& best_iterate() const noexcept { return best_; }
  int sweeps() const noexcept { return sweeps_; }

 private:
  Vector best_;
  int sweeps_;
};

/// {z : ⟨normal, z − anchor⟩ ≤ 0}.
class Halfspace {
 public:
  Halfspace(Vector normal, Vector anchor);

  const Vector& normal() const noexcept { return normal_; }
  const Vector& anchor() const noexcept { return anchor_; }
  double normal_sq() const noexcept { return normal_sq_; }
  std::size_t dim() const noexcept { return normal_.dim(); }

  /// ⟨normal, z − anchor⟩; positive outside.
  double signed_gap(const Vector& z) const;
  bool contains(const Vector& z, double tol = 0.0) const { return signed_gap(z) <= tol; }

 private:
  Vector normal_;
  Vector anchor_;
  double normal_sq_;
  double offset_;  // ⟨normal, anchor⟩
};

struct WholeSpace {};

struct Box {
  Vector lower;
  Vector upper;
};

struct Ball {
  Vector center;
  double radius = 0.0;
};

enum class PolyhedralMethod {
  /// Goldfarb–Idnani dual active set; exact up to roundoff, finite.
  ActiveSet,
  /// Dykstra's alternating projections over the rows; linear convergence.
  Dykstra,
};

/// {x : Qx ≤ b}. Zero rows with b_i ≥ 0 are vacuous and dropped at
/// construction; a zero row with b_i < 0 makes the set empty and is rejected.
class Polyhedron {
 public:
  Polyhedron(Matrix q, Vector b, PolyhedralMethod method = PolyhedralMethod::ActiveSet);

  PolyhedralMethod method() const noexcept { return method_; }
  void set_method(PolyhedralMethod m) noexcept { method_ = m; }

  /// As passed in, including any vacuous rows.
  const Matrix& q() const noexcept { return q_; }
  const Vector& b() const noexcept { return b_; }
  std::size_t dim() const noexcept { return q_.cols(); }

  /// Rows that actually constrain the set.
  const std::vector<std::size_t>& active_rows() const noexcept { return rows_; }
  double row_norm_sq(std::size_t k) const noexcept { return row_norm_sq_[k]; }
  double feasibility_slack(double tol) const noexcept { return tol * (1.0 + b_norm_); }

  /// max_i (Q x − b)_i over the kept rows, or −∞ when there are none.
  double max_violation(const Vector& x) const;

 private:
  Matrix q_;
  Vector b_;
  std::vector<std::size_t> rows_;
  std::vector<double> row_norm_sq_;  // indexed like rows_
  double b_norm_ = 0.0;
  PolyhedralMethod method_ = PolyhedralMethod::ActiveSet;
};

struct PolyhedralProjection {
  Vector point;
  /// Dykstra sweeps, or active-set changes for the dual method.
  int sweeps = 0;
};

/// Closed form: u − max{0, ⟨v, u − x⟩/‖v‖²}·v.
Vector project_halfspace(const Vector& u, const Halfspace& h);

/// Dispatches on p.method().
PolyhedralProjection project_polyhedron(const Polyhedron& p, const Vector& u,
                                        double tol = kDefaultProjectorTol);

/// Dykstra's alternating projections over the rows of Q. For halfspaces the
/// correction terms are multiples of the row normals, so the state is one
/// multiplier per row. Sweeps stop when the total movement within a sweep
/// is at most tol and every row holds within the feasibility slack.
PolyhedralProjection project_polyhedron_dykstra(const Polyhedron& p, const Vector& u,
                                                double tol = kDefaultProjectorTol,
                                                int max_sweeps = kDefaultMaxSweeps);

/// Dual active-set method for min ½‖z − u‖² s.t. Qz ≤ b. Starts from z = u
/// and repeatedly adds the most violated row, dropping rows whose multiplier
/// would turn negative, until every row holds within the feasibility slack.
/// Throws ProjectionError if the set is detected empty.
PolyhedralProjection project_polyhedron_active_set(const Polyhedron& p, const Vector& u,
                                                   double tol = kDefaultProjectorTol);

class FeasibleSet {
 public:
  using Variant = std::variant<WholeSpace, Halfspace, Box, Ball, Polyhedron>;

  FeasibleSet() : set_(WholeSpace{}) {}
  FeasibleSet(WholeSpace s) : set_(s) {}
  FeasibleSet(Halfspace h) : set_(std::move(h)) {}
  FeasibleSet(Box b);
  FeasibleSet(Ball b);
  FeasibleSet(Polyhedron p) : set_(std::move(p)) {}

  static FeasibleSet whole_space() { return FeasibleSet(WholeSpace{}); }
  static FeasibleSet box(Vector lower, Vector upper) {
    return FeasibleSet(Box{std::move(lower), std::move(upper)});
  }
  static FeasibleSet ball(Vector center, double radius) {
    return FeasibleSet(Ball{std::move(center), radius});
  }
  static FeasibleSet polyhedron(Matrix q, Vector b,
                                PolyhedralMethod method = PolyhedralMethod::ActiveSet) {
    return FeasibleSet(Polyhedron(std::move(q), std::move(b), method));
  }

  const Variant& variant() const noexcept { return set_; }
  /// Selects the projector of a Polyhedron; no effect on other variants.
  void set_polyhedral_method(PolyhedralMethod m) noexcept;
  bool is_whole_space() const noexcept { return std::holds_alternative<WholeSpace>(set_); }
  /// Dimension the set lives in; empty for WholeSpace, which accepts any.
  std::optional<std::size_t> dim() const;

  /// Metric projection. tol only affects the Polyhedron variant.
  Vector project(const Vector& u, double tol = kDefaultProjectorTol) const;

  /// Membership with slack; Polyhedron uses tol·(1 + ‖b‖).
  bool contains(const Vector& u, double tol = 0.0) const;

 private:
  Variant set_;
};

inline Vector project(const FeasibleSet& set, const Vector& u, double tol = kDefaultProjectorTol) {
  return set.project(u, tol);
}

/// ⟨u − z, z − y⟩. Nonnegative for every y in the set iff z is the projection of u.
double characterization_residual(const Vector& u, const Vector& z, const Vector& y);

}  // namespace vi

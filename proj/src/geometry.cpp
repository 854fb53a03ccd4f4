#include "vi/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vi/kernels.hpp"

namespace vi {

namespace {

void require_dim(std::size_t expected, const Vector& u, const char* what) {
  if (u.dim() != expected) {
    throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(expected) +
                         ", got " + std::to_string(u.dim()));
  }
}

}  // namespace

Halfspace::Halfspace(Vector normal, Vector anchor)
    : normal_(std::move(normal)), anchor_(std::move(anchor)) {
  if (normal_.dim() != anchor_.dim()) throw DimensionError("Halfspace: normal/anchor dimension mismatch");
  normal_sq_ = squared_norm(normal_);
  if (!(normal_sq_ > 0.0)) throw std::invalid_argument("Halfspace: normal must be nonzero");
  offset_ = inner(normal_, anchor_);
}

double Halfspace::signed_gap(const Vector& z) const {
  require_dim(dim(), z, "Halfspace");
  return inner(normal_, z) - offset_;
}

Polyhedron::Polyhedron(Matrix q, Vector b, PolyhedralMethod method)
    : q_(std::move(q)), b_(std::move(b)), method_(method) {
  if (q_.rows() != b_.dim()) throw DimensionError("Polyhedron: Q.rows must equal b.dim");
  for (std::size_t i = 0; i < q_.rows(); ++i) {
    const auto row = q_.row(i);
    const double nsq = kernels::dot(row, row);
    if (nsq == 0.0) {
      if (b_[i] < 0.0) {
        throw std::invalid_argument("Polyhedron: zero row " + std::to_string(i) +
                                    " with negative bound makes the set empty");
      }
      continue;
    }
    rows_.push_back(i);
    row_norm_sq_.push_back(nsq);
  }
  b_norm_ = norm(b_);
}

double Polyhedron::max_violation(const Vector& x) const {
  require_dim(dim(), x, "Polyhedron");
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i : rows_) worst = std::max(worst, kernels::dot(q_.row(i), x.span()) - b_[i]);
  return worst;
}

Vector project_halfspace(const Vector& u, const Halfspace& h) {
  const double gap = h.signed_gap(u);
  if (gap <= 0.0) return u;
  Vector z = u;
  z.axpy(-gap / h.normal_sq(), h.normal());
  return z;
}

PolyhedralProjection project_polyhedron_dykstra(const Polyhedron& p, const Vector& u, double tol,
                                                int max_sweeps) {
  require_dim(p.dim(), u, "project_polyhedron_dykstra");
  const auto& rows = p.active_rows();
  const Matrix& q = p.q();
  const Vector& b = p.b();
  const double slack = p.feasibility_slack(tol);

  Vector x = u;
  std::vector<double> lambda(rows.size(), 0.0);
  std::vector<double> row_norm(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) row_norm[k] = std::sqrt(p.row_norm_sq(k));

  auto xs = x.span();
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    double moved = 0.0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const auto a = q.row(rows[k]);
      const double gap = kernels::dot(a, xs) - b[rows[k]];
      const double next = std::max(0.0, lambda[k] + gap / p.row_norm_sq(k));
      const double step = lambda[k] - next;
      if (step != 0.0) {
        for (std::size_t j = 0; j < xs.size(); ++j) xs[j] += step * a[j];
        moved += std::abs(step) * row_norm[k];
        lambda[k] = next;
      }
    }
    if (moved <= tol && (rows.empty() || p.max_violation(x) <= slack)) {
      return {std::move(x), sweep};
    }
  }
  throw ProjectionError("project_polyhedron_dykstra: no convergence after " + std::to_string(max_sweeps) +
                            " sweeps",
                        x, max_sweeps);
}

namespace {

/// In-place Cholesky of a k×k SPD matrix (row-major, lower triangle used).
/// Returns false when a pivot is not positive.
bool cholesky(std::vector<double>& g, std::size_t k) {
  for (std::size_t j = 0; j < k; ++j) {
    double d = g[j * k + j];
    for (std::size_t t = 0; t < j; ++t) d -= g[j * k + t] * g[j * k + t];
    if (!(d > 0.0)) return false;
    d = std::sqrt(d);
    g[j * k + j] = d;
    for (std::size_t i = j + 1; i < k; ++i) {
      double s = g[i * k + j];
      for (std::size_t t = 0; t < j; ++t) s -= g[i * k + t] * g[j * k + t];
      g[i * k + j] = s / d;
    }
  }
  return true;
}

void cholesky_solve(const std::vector<double>& l, std::size_t k, std::vector<double>& x) {
  for (std::size_t i = 0; i < k; ++i) {
    double s = x[i];
    for (std::size_t t = 0; t < i; ++t) s -= l[i * k + t] * x[t];
    x[i] = s / l[i * k + i];
  }
  for (std::size_t i = k; i-- > 0;) {
    double s = x[i];
    for (std::size_t t = i + 1; t < k; ++t) s -= l[t * k + i] * x[t];
    x[i] = s / l[i * k + i];
  }
}

}  // namespace

PolyhedralProjection project_polyhedron_active_set(const Polyhedron& p, const Vector& u,
                                                   double tol) {
  require_dim(p.dim(), u, "project_polyhedron_active_set");
  const Matrix& q = p.q();
  const Vector& b = p.b();
  const auto& rows = p.active_rows();
  const std::size_t n = u.dim();
  const double slack = p.feasibility_slack(tol);
  // Each row enters at most a bounded number of times in exact arithmetic;
  // the cap only guards against cycling under roundoff.
  const int max_changes = 20 * static_cast<int>(rows.size() + n) + 100;

  std::vector<std::size_t> active;  // row indices into q
  std::vector<double> lambda;       // multipliers, aligned with active
  std::vector<char> in_active(q.rows(), 0);
  Vector z = u;
  int changes = 0;

  // z = u − Σ λ_j q_j
  auto rebuild = [&] {
    z = u;
    for (std::size_t a = 0; a < active.size(); ++a) {
      const auto row = q.row(active[a]);
      for (std::size_t j = 0; j < n; ++j) z[j] -= lambda[a] * row[j];
    }
  };

  std::vector<double> gram, r, pn(n);
  while (true) {
    std::size_t worst = q.rows();
    double worst_gap = slack;
    for (std::size_t i : rows) {
      if (in_active[i]) continue;
      const double gap = kernels::dot(q.row(i), z.span()) - b[i];
      if (gap > worst_gap) {
        worst_gap = gap;
        worst = i;
      }
    }
    if (worst == q.rows()) return {std::move(z), changes};

    const auto np = q.row(worst);
    const double np_sq = kernels::dot(np, np);
    double lambda_p = 0.0;
    while (true) {
      if (++changes > max_changes) {
        throw ProjectionError("project_polyhedron_active_set: too many active-set changes", z,
                              changes);
      }
      const std::size_t k = active.size();
      // r = (N Nᵀ)⁻¹ N q_p and P q_p = q_p − Nᵀ r.
      r.assign(k, 0.0);
      for (std::size_t a = 0; a < k; ++a) r[a] = kernels::dot(q.row(active[a]), np);
      if (k > 0) {
        gram.assign(k * k, 0.0);
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t c = 0; c <= a; ++c)
            gram[a * k + c] = kernels::dot(q.row(active[a]), q.row(active[c]));
        if (!cholesky(gram, k)) {
          throw ProjectionError("project_polyhedron_active_set: degenerate active set", z, changes);
        }
        cholesky_solve(gram, k, r);
      }
      std::copy(np.begin(), np.end(), pn.begin());
      for (std::size_t a = 0; a < k; ++a) {
        const auto row = q.row(active[a]);
        for (std::size_t j = 0; j < n; ++j) pn[j] -= r[a] * row[j];
      }
      const double pn_sq = kernels::dot(pn, pn);
      const double gap = kernels::dot(np, z.span()) - b[worst];

      const bool independent = pn_sq > 1e-12 * np_sq;
      const double full_step = independent ? gap / pn_sq : std::numeric_limits<double>::infinity();
      double partial_step = std::numeric_limits<double>::infinity();
      std::size_t blocking = k;
      for (std::size_t a = 0; a < k; ++a) {
        if (r[a] > 0.0 && lambda[a] / r[a] < partial_step) {
          partial_step = lambda[a] / r[a];
          blocking = a;
        }
      }
      if (!std::isfinite(full_step) && !std::isfinite(partial_step)) {
        throw ProjectionError("project_polyhedron_active_set: constraints are inconsistent", z,
                              changes);
      }

      const double t = std::min(full_step, partial_step);
      for (std::size_t a = 0; a < k; ++a) lambda[a] = std::max(0.0, lambda[a] - t * r[a]);
      lambda_p += t;
      if (full_step <= partial_step) {
        active.push_back(worst);
        lambda.push_back(lambda_p);
        in_active[worst] = 1;
        rebuild();
        break;
      }
      in_active[active[blocking]] = 0;
      active.erase(active.begin() + static_cast<std::ptrdiff_t>(blocking));
      lambda.erase(lambda.begin() + static_cast<std::ptrdiff_t>(blocking));
      // z with the partial multiplier of the entering row included.
      rebuild();
      for (std::size_t j = 0; j < n; ++j) z[j] -= lambda_p * np[j];
    }
  }
}

PolyhedralProjection project_polyhedron(const Polyhedron& p, const Vector& u, double tol) {
  if (p.method() == PolyhedralMethod::Dykstra) return project_polyhedron_dykstra(p, u, tol);
  return project_polyhedron_active_set(p, u, tol);
}

void FeasibleSet::set_polyhedral_method(PolyhedralMethod m) noexcept {
  if (auto* p = std::get_if<Polyhedron>(&set_)) p->set_method(m);
}

FeasibleSet::FeasibleSet(Box b) {
  if (b.lower.dim() != b.upper.dim()) throw DimensionError("Box: bound dimensions differ");
  for (std::size_t i = 0; i < b.lower.dim(); ++i) {
    if (!(b.lower[i] <= b.upper[i])) throw std::invalid_argument("Box: lower must not exceed upper");
  }
  set_ = std::move(b);
}

FeasibleSet::FeasibleSet(Ball b) {
  if (!(b.radius >= 0.0)) throw std::invalid_argument("Ball: radius must be nonnegative");
  set_ = std::move(b);
}

std::optional<std::size_t> FeasibleSet::dim() const {
  struct Visitor {
    std::optional<std::size_t> operator()(const WholeSpace&) const { return std::nullopt; }
    std::optional<std::size_t> operator()(const Halfspace& h) const { return h.dim(); }
    std::optional<std::size_t> operator()(const Box& b) const { return b.lower.dim(); }
    std::optional<std::size_t> operator()(const Ball& b) const { return b.center.dim(); }
    std::optional<std::size_t> operator()(const Polyhedron& p) const { return p.dim(); }
  };
  return std::visit(Visitor{}, set_);
}

Vector FeasibleSet::project(const Vector& u, double tol) const {
  struct Visitor {
    const Vector& u;
    double tol;

    Vector operator()(const WholeSpace&) const { return u; }
    Vector operator()(const Halfspace& h) const { return project_halfspace(u, h); }
    Vector operator()(const Box& b) const {
      require_dim(b.lower.dim(), u, "Box");
      Vector z = u;
      for (std::size_t i = 0; i < z.dim(); ++i) z[i] = std::clamp(z[i], b.lower[i], b.upper[i]);
      return z;
    }
    Vector operator()(const Ball& b) const {
      require_dim(b.center.dim(), u, "Ball");
      const double r = distance(u, b.center);
      if (r <= b.radius) return u;
      Vector z = u - b.center;
      z *= b.radius / r;
      return z += b.center;
    }
    Vector operator()(const Polyhedron& p) const {
      return project_polyhedron(p, u, tol).point;
    }
  };
  if (!(tol > 0.0)) throw std::invalid_argument("project: tol must be positive");
  return std::visit(Visitor{u, tol}, set_);
}

bool FeasibleSet::contains(const Vector& u, double tol) const {
  struct Visitor {
    const Vector& u;
    double tol;

    bool operator()(const WholeSpace&) const { return true; }
    bool operator()(const Halfspace& h) const { return h.contains(u, tol); }
    bool operator()(const Box& b) const {
      require_dim(b.lower.dim(), u, "Box");
      for (std::size_t i = 0; i < u.dim(); ++i) {
        if (u[i] < b.lower[i] - tol || u[i] > b.upper[i] + tol) return false;
      }
      return true;
    }
    bool operator()(const Ball& b) const {
      require_dim(b.center.dim(), u, "Ball");
      return distance(u, b.center) <= b.radius + tol;
    }
    bool operator()(const Polyhedron& p) const {
      return p.max_violation(u) <= p.feasibility_slack(tol);
    }
  };
  return std::visit(Visitor{u, tol}, set_);
}

double characterization_residual(const Vector& u, const Vector& z, const Vector& y) {
  return inner(u - z, z - y);
}

}  // namespace vi

#include "vi/stepsize.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vi {

void LineSearchParams::validate() const {
  if (!(sigma > 0.0)) throw std::invalid_argument("line search: sigma must be positive");
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("line search: rho must lie in (0,1)");
  if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("line search: mu must lie in (0,1)");
  if (trial_cap < 1) throw std::invalid_argument("line search: trial_cap must be >= 1");
}

LineSearchOutcome armijo_search(const VectorField& f, const FeasibleSet& set, const Vector& x,
                                const Vector& f_x, const LineSearchParams& params,
                                double projector_tol, int first_m) {
  LineSearchOutcome out;
  const double stop_tol = 1e-14 * (1.0 + norm(x));
  first_m = std::max(first_m, 0);
  for (int m = first_m; out.trials < params.trial_cap; ++m) {
    ++out.trials;
    const double alpha = params.sigma * std::pow(params.rho, m);
    Vector trial = x;
    trial.axpy(-alpha, f_x);
    Vector y = set.project(trial, projector_tol);
    const double gap = distance(x, y);
    if (gap <= stop_tol) {
      out.alpha = alpha;
      out.m = m;
      out.f_y = f.eval(y);
      out.y = std::move(y);
      out.at_solution = true;
      return out;
    }
    Vector f_y = f.eval(y);
    if (alpha * distance(f_x, f_y) <= params.mu * gap) {
      out.alpha = alpha;
      out.m = m;
      out.y = std::move(y);
      out.f_y = std::move(f_y);
      return out;
    }
  }
  throw LineSearchError("armijo_search: no acceptable step within " +
                        std::to_string(params.trial_cap) + " trials");
}

Vector compute_d(const Vector& x, const Vector& y, double alpha, const Vector& f_x,
                 const Vector& f_y) {
  Vector d = x - y;
  d.axpy(-alpha, f_x);
  d.axpy(alpha, f_y);
  return d;
}

double compute_rho(const Vector& x, const Vector& y, const Vector& d) {
  const double dn = norm(d);
  if (dn <= 1e-300) throw std::domain_error("compute_rho: d vanishes; x == y should have stopped");
  return inner(x - y, d) / (dn * dn);
}

double stepsize_floor(const LineSearchParams& params, double lipschitz) noexcept {
  if (!(lipschitz > 0.0)) return params.sigma;
  return std::min(params.sigma, params.mu * params.rho / lipschitz);
}

}  // namespace vi

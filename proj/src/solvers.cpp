#include "vi/solvers.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vi {

std::string_view short_name(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::Projection: return "pm";
    case Algorithm::Extragradient: return "eg";
    case Algorithm::ProjectionContraction: return "pc";
    case Algorithm::Subgradient: return "sem";
    case Algorithm::ModifiedSubgradient: return "msem";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
  for (auto a : {Algorithm::Projection, Algorithm::Extragradient, Algorithm::ProjectionContraction,
                 Algorithm::Subgradient, Algorithm::ModifiedSubgradient}) {
    if (short_name(a) == name) return a;
  }
  return std::nullopt;
}

void SolverConfig::validate() const {
  ls.validate();
  if (!(gamma > 0.0 && gamma < 2.0)) throw std::invalid_argument("solver: gamma must lie in (0,2)");
  if (!(eps > 0.0)) throw std::invalid_argument("solver: eps must be positive");
  if (max_iter < 1) throw std::invalid_argument("solver: max_iter must be >= 1");
  if (!(projector_tol > 0.0)) throw std::invalid_argument("solver: projector_tol must be positive");
}

FeasibleSet build_tk(const Vector& x, double alpha, const Vector& f_x, const Vector& y) {
  Vector normal = x;
  normal.axpy(-alpha, f_x);
  normal -= y;
  if (squared_norm(normal) == 0.0) return FeasibleSet::whole_space();
  return FeasibleSet(Halfspace(std::move(normal), y));
}

double vi_residual(const VectorField& f, const FeasibleSet& set, const Vector& x, double alpha,
                   double projector_tol) {
  if (!(alpha > 0.0)) throw std::invalid_argument("vi_residual: alpha must be positive");
  Vector trial = x;
  trial.axpy(-alpha, f.eval(x));
  return distance(x, set.project(trial, projector_tol));
}

namespace {

constexpr std::size_t kMaxRecordedViolations = 200;

class ViolationLog {
 public:
  explicit ViolationLog(std::vector<std::string>& out) : out_(out) {}

  template <typename... Parts>
  void add(int k, Parts&&... parts) {
    ++count_;
    if (out_.size() < kMaxRecordedViolations) {
      std::ostringstream os;
      os.precision(17);
      os << "iter " << k << ": ";
      (os << ... << parts);
      out_.push_back(os.str());
    } else if (out_.size() == kMaxRecordedViolations) {
      out_.push_back("further violations not recorded");
    }
  }

 private:
  std::vector<std::string>& out_;
  long count_ = 0;
};

bool uses_contraction(Algorithm a) {
  return a == Algorithm::ProjectionContraction || a == Algorithm::ModifiedSubgradient;
}

bool uses_halfspace(Algorithm a) {
  return a == Algorithm::Subgradient || a == Algorithm::ModifiedSubgradient;
}

bool stop_rule_holds(const SolverConfig& cfg, const Vector& x) {
  return cfg.stop_rule == StopRule::NormX && norm(x) <= cfg.eps;
}

struct StepData {
  const Vector& x;
  const Vector& f_x;
  const LineSearchOutcome& ls;
  const Vector* d;  // null for methods without a contraction factor
  double rho;
  double scale;  // multiplier of α in the corrector step
  const FeasibleSet* tk;
  const Vector& next;
};

void check_step(Algorithm algo, const SolverConfig& cfg, const VectorField& f,
                const FeasibleSet& set, int k, const StepData& s, ViolationLog& log) {
  const auto& p = cfg.ls;
  const double gap = distance(s.x, s.ls.y);

  const double lhs = s.ls.alpha * distance(s.f_x, s.ls.f_y);
  if (lhs > p.mu * gap * (1.0 + 1e-12)) {
    log.add(k, "stepsize condition fails: ", lhs, " > ", p.mu * gap);
  }
  if (s.ls.alpha > p.sigma) log.add(k, "alpha ", s.ls.alpha, " exceeds sigma");
  if (auto lip = f.lipschitz_hint(); lip && !p.warm_start) {
    const double floor = stepsize_floor(p, *lip);
    if (s.ls.alpha < floor - 1e-12) log.add(k, "alpha ", s.ls.alpha, " below floor ", floor);
  }
  if (!set.contains(s.ls.y, cfg.projector_tol)) log.add(k, "y left the feasible set");

  if (s.d) {
    const double dn = norm(*s.d);
    if (dn < (1.0 - p.mu) * gap - 1e-12) {
      log.add(k, "|d| ", dn, " below (1-mu)|x-y| ", (1.0 - p.mu) * gap);
    }
    if (s.rho < rho_lower_bound(p.mu) - 1e-12 || s.rho > rho_upper_bound(p.mu) + 1e-12) {
      log.add(k, "rho ", s.rho, " outside [", rho_lower_bound(p.mu), ", ", rho_upper_bound(p.mu), "]");
    }
  }

  if (s.tk) {
    if (const auto* h = std::get_if<Halfspace>(&s.tk->variant())) {
      const double tol = 1e-12 * std::max(1.0, std::sqrt(h->normal_sq()) * norm(s.next));
      if (h->signed_gap(s.next) > tol) log.add(k, "x^{k+1} outside T_k by ", h->signed_gap(s.next));
    }
  }

  if (!cfg.reference_solution) return;
  const Vector& xs = *cfg.reference_solution;
  const double before = distance(s.x, xs);
  const double after = distance(s.next, xs);
  if (algo != Algorithm::Projection && algo != Algorithm::Extragradient) {
    const double slack = 1e-9 * (1.0 + norm(s.x));
    if (after > before + slack) log.add(k, "Fejer monotonicity fails: ", after, " > ", before);
  }
  if (algo == Algorithm::Subgradient) {
    const double bound = before * before - (1.0 - p.mu * p.mu) * gap * gap;
    if (after * after > bound + 1e-9) log.add(k, "SEM contraction fails by ", after * after - bound);
  }
  if (algo == Algorithm::ModifiedSubgradient && s.d && !cfg.unit_correction) {
    Vector w = s.x - s.next;
    w.axpy(-cfg.gamma * s.rho, *s.d);
    const double bound = before * before - squared_norm(w) -
                         cfg.gamma * (2.0 - cfg.gamma) * s.rho * s.rho * squared_norm(*s.d);
    if (after * after > bound + 1e-9) log.add(k, "MSEM contraction fails by ", after * after - bound);
  }
}

SolveReport run(Algorithm algo, const VectorField& f, const FeasibleSet& set, const Vector& x0,
                double fixed_alpha, const SolverConfig& cfg) {
  cfg.validate();
  if (x0.dim() != f.dim()) throw DimensionError("solve: x0 dimension does not match the field");
  if (auto d = set.dim(); d && *d != f.dim()) {
    throw DimensionError("solve: feasible set dimension does not match the field");
  }

  SolveReport report;
  ViolationLog log(report.invariant_violations);
  if (cfg.record_trajectory) report.trajectory.emplace();
  auto* traj = report.trajectory ? &*report.trajectory : nullptr;

  Vector x = x0;
  int last_m = 0;
  const auto start = std::chrono::steady_clock::now();

  while (true) {
    if (stop_rule_holds(cfg, x)) {
      report.converged = true;
      break;
    }
    if (report.iterations >= cfg.max_iter) break;
    if (!x.is_finite()) {
      report.diverged = true;
      break;
    }
    if (traj) traj->xs.push_back(x);

    const Vector f_x = f.eval(x);
    LineSearchOutcome ls;
    if (algo == Algorithm::Projection) {
      Vector trial = x;
      trial.axpy(-fixed_alpha, f_x);
      ls.alpha = fixed_alpha;
      ls.y = set.project(trial, cfg.projector_tol);
      ls.trials = 0;
    } else {
      const int first_m = cfg.ls.warm_start ? last_m - 1 : 0;
      ls = armijo_search(f, set, x, f_x, cfg.ls, cfg.projector_tol, first_m);
      report.inner_trials += ls.trials;
      last_m = ls.m;
    }

    const double gap = distance(x, ls.y);
    if (ls.at_solution) {
      report.stopped_at_solution = true;
      report.converged = true;
      if (traj) traj->xs.pop_back();
      break;
    }
    if (cfg.stop_rule == StopRule::ResidualXY && gap <= cfg.eps) {
      report.converged = true;
      if (traj) traj->xs.pop_back();
      break;
    }

    std::optional<Vector> d;
    double rho = 1.0;
    double scale = 1.0;
    if (uses_contraction(algo)) {
      d = compute_d(x, ls.y, ls.alpha, f_x, ls.f_y);
      rho = compute_rho(x, ls.y, *d);
      if (!cfg.unit_correction) scale = cfg.gamma * rho;
    }

    Vector next;
    std::optional<FeasibleSet> tk;
    if (algo == Algorithm::Projection) {
      next = ls.y;
    } else {
      Vector trial = x;
      trial.axpy(-(scale * ls.alpha), ls.f_y);
      if (uses_halfspace(algo)) {
        tk = build_tk(x, ls.alpha, f_x, ls.y);
        next = tk->project(trial, cfg.projector_tol);
      } else {
        next = set.project(trial, cfg.projector_tol);
      }
    }

    if (cfg.check_invariants && algo != Algorithm::Projection) {
      const StepData step{x, f_x, ls, d ? &*d : nullptr, rho, scale, tk ? &*tk : nullptr, next};
      check_step(algo, cfg, f, set, report.iterations, step, log);
    }

    ++report.iterations;
    report.residuals.push_back(gap);
    if (traj) {
      traj->ys.push_back(ls.y);
      traj->alphas.push_back(ls.alpha);
      traj->rhos.push_back(rho);
    }
    x = std::move(next);
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!x.is_finite()) {
    report.diverged = true;
    report.converged = false;
  }
  if (traj) traj->xs.push_back(x);
  report.final_x = std::move(x);
  return report;
}

}  // namespace

SolveReport solve_projection_method(const VectorField& f, const FeasibleSet& set,
                                    const Vector& x0, double alpha, const SolverConfig& cfg) {
  if (!(alpha > 0.0)) throw std::invalid_argument("projection method: alpha must be positive");
  return run(Algorithm::Projection, f, set, x0, alpha, cfg);
}

SolveReport solve_extragradient(const VectorField& f, const FeasibleSet& set, const Vector& x0,
                                const SolverConfig& cfg) {
  return run(Algorithm::Extragradient, f, set, x0, 0.0, cfg);
}

SolveReport solve_projection_contraction(const VectorField& f, const FeasibleSet& set,
                                         const Vector& x0, const SolverConfig& cfg) {
  return run(Algorithm::ProjectionContraction, f, set, x0, 0.0, cfg);
}

SolveReport solve_subgradient_extragradient(const VectorField& f, const FeasibleSet& set,
                                            const Vector& x0, const SolverConfig& cfg) {
  return run(Algorithm::Subgradient, f, set, x0, 0.0, cfg);
}

SolveReport solve_modified_subgradient_extragradient(const VectorField& f, const FeasibleSet& set,
                                                     const Vector& x0, const SolverConfig& cfg) {
  return run(Algorithm::ModifiedSubgradient, f, set, x0, 0.0, cfg);
}

SolveReport solve(Algorithm algo, const VectorField& f, const FeasibleSet& set, const Vector& x0,
                  const SolverConfig& cfg) {
  if (algo == Algorithm::Projection) {
    const auto lip = f.lipschitz_hint();
    const double alpha = (lip && *lip > 0.0) ? 1.0 / *lip : cfg.ls.sigma;
    return solve_projection_method(f, set, x0, alpha, cfg);
  }
  return run(algo, f, set, x0, 0.0, cfg);
}

}  // namespace vi

#include "dym/solver.hpp"

#include <cmath>

#include "dym/calculus.hpp"
#include "dym/gauge.hpp"

namespace dym {

std::string to_string(Objective o) {
  switch (o) {
    case Objective::Action:
      return "action";
    case Objective::SelfDual:
      return "sd_residual";
    case Objective::AntiSelfDual:
      return "anti_sd_residual";
  }
  return "action";
}

Objective objective_from_string(const std::string& s) {
  if (s == "action") return Objective::Action;
  if (s == "sd_residual") return Objective::SelfDual;
  if (s == "anti_sd_residual") return Objective::AntiSelfDual;
  throw std::invalid_argument("unknown objective '" + s + "'");
}

std::string to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::Converged:
      return "converged";
    case SolverStatus::MaxIterations:
      return "max_iterations";
    case SolverStatus::LineSearchFailed:
      return "line_search_failed";
  }
  return "max_iterations";
}

void SolverConfig::validate() const {
  if (!(armijo_c > 0 && armijo_c < 1)) throw std::invalid_argument("armijo_c must lie in (0, 1)");
  if (!(backtrack_factor > 0 && backtrack_factor < 1)) throw std::invalid_argument("backtrack_factor must lie in (0, 1)");
  if (!(initial_step > 0)) throw std::invalid_argument("initial_step must be positive");
  if (max_iters < 0) throw std::invalid_argument("max_iters must be >= 0");
  if (!(grad_tol >= 0)) throw std::invalid_argument("grad_tol must be >= 0");
}

namespace {

/// The 2-form whose distance from zero the objective measures; the objective
/// is its norm_sq.
Cochain residual_form(const Cochain& a, Objective objective) {
  Cochain f = curvature(a);
  switch (objective) {
    case Objective::Action:
      return f;
    case Objective::SelfDual:
      return f - dual(f);
    case Objective::AntiSelfDual:
      return f + dual(f);
  }
  return f;
}

double checked_real(std::complex<double> z) {
  const double tol = 1e-10 * std::max(1.0, std::abs(z.real()));
  if (!(std::abs(z.imag()) <= tol) && std::isfinite(z.imag())) {
    throw std::logic_error("norm has an imaginary part " + std::to_string(z.imag()));
  }
  return z.real();
}

}  // namespace

double action(const Cochain& a) {
  const Cochain f = curvature(a);
  return checked_real(inner_product(f, f));
}

double action(const Connection& a) { return action(a.form()); }

double objective_value(const Cochain& a, Objective objective) {
  const Cochain r = residual_form(a, objective);
  return checked_real(inner_product(r, r));
}

Cochain linearized_curvature(const Cochain& a, const Cochain& b) {
  return coboundary(b) + cup(b, a) + cup(a, b);
}

ConnectionGradient pullback_gradient(const Cochain& a, const Cochain& cotangent) {
  if (a.degree() != 1 || cotangent.degree() != 2) throw std::invalid_argument("pullback_gradient: expects a 1-form and a 2-form");
  const Domain& d = a.domain();
  std::vector<Matrix2d> w(a.values().size(), Matrix2d::Zero());
  // Accumulates X into the adjoint slot of the 1-form cell at (chart, k, {axis}).
  auto slot = [&](Chart chart, const MultiIndex& k, int axis) -> Matrix2d& {
    const Address r = resolve_address(d, {chart, k});
    return w[a.index(r, DirectionSet{axis})];
  };
  auto coef = [&](Chart chart, const MultiIndex& k, int axis) -> const Matrix2d& {
    return a.at(chart, k, DirectionSet{axis});
  };

  for (const Address& s : interior_sites(d)) {
    for (DirectionSet r : direction_sets(2)) {
      const Matrix2d g = cotangent.at(s.chart, s.k, r).adjoint();
      // r = {i, j} with i < j.
      int i = 0, j = 0;
      for (int ax = 1; ax <= kDim; ++ax) {
        if (!r.contains(ax)) continue;
        (i == 0 ? i : j) = ax;
      }
      const MultiIndex ki = shift(s.k, i);
      const MultiIndex kj = shift(s.k, j);
      // dB: B^j(k+e_i) - B^j(k) - B^i(k+e_j) + B^i(k)
      slot(s.chart, ki, j) += g;
      slot(s.chart, s.k, j) -= g;
      slot(s.chart, kj, i) -= g;
      slot(s.chart, s.k, i) += g;
      // A u B: A^i(k) B^j(k+e_i) - A^j(k) B^i(k+e_j)
      slot(s.chart, ki, j) += g * coef(s.chart, s.k, i);
      slot(s.chart, kj, i) -= g * coef(s.chart, s.k, j);
      // B u A: B^i(k) A^j(k+e_i) - B^j(k) A^i(k+e_j)
      slot(s.chart, s.k, i) += coef(s.chart, ki, j) * g;
      slot(s.chart, s.k, j) -= coef(s.chart, kj, i) * g;
    }
  }

  ConnectionGradient grad(3, static_cast<Eigen::Index>(w.size()));
  for (std::size_t c = 0; c < w.size(); ++c) {
    for (int alpha = 1; alpha <= 3; ++alpha) {
      grad(alpha - 1, static_cast<Eigen::Index>(c)) = 2.0 * (su2_basis<double>(alpha) * w[c]).trace().real();
    }
  }
  return grad;
}

ConnectionGradient action_gradient(const Cochain& a) { return pullback_gradient(a, curvature(a)); }

ConnectionGradient objective_gradient(const Cochain& a, Objective objective) {
  if (objective == Objective::Action) return action_gradient(a);
  return pullback_gradient(a, 2.0 * residual_form(a, objective));
}

namespace {

void difference_column(const Cochain& a, Cochain& probe, Objective objective, double step, std::size_t c,
                       ConnectionGradient& grad) {
  for (int alpha = 1; alpha <= 3; ++alpha) {
    const Matrix2d delta = step * su2_basis<double>(alpha);
    probe.values()[c] = a.values()[c] + delta;
    const double up = objective_value(probe, objective);
    probe.values()[c] = a.values()[c] - delta;
    const double down = objective_value(probe, objective);
    probe.values()[c] = a.values()[c];
    grad(alpha - 1, static_cast<Eigen::Index>(c)) = (up - down) / (2.0 * step);
  }
}

}  // namespace

ConnectionGradient finite_difference_gradient(const Cochain& a, Objective objective, double step) {
  ConnectionGradient grad(3, static_cast<Eigen::Index>(a.values().size()));
  Cochain probe = a;
  for (std::size_t c = 0; c < a.values().size(); ++c) difference_column(a, probe, objective, step, c, grad);
  return grad;
}

double gradient_check_error(const Cochain& a, Objective objective, double step, int max_columns) {
  const ConnectionGradient analytic = objective_gradient(a, objective);
  const std::size_t n = a.values().size();
  const std::size_t stride = max_columns > 0 ? std::max<std::size_t>(1, n / static_cast<std::size_t>(max_columns)) : 1;
  ConnectionGradient numeric = ConnectionGradient::Zero(3, static_cast<Eigen::Index>(n));
  Cochain probe = a;
  double err = 0;
  double scale = 0;
  for (std::size_t c = 0; c < n; c += stride) {
    difference_column(a, probe, objective, step, c, numeric);
    const auto col = static_cast<Eigen::Index>(c);
    err = std::max(err, (analytic.col(col) - numeric.col(col)).cwiseAbs().maxCoeff());
    scale = std::max(scale, numeric.col(col).cwiseAbs().maxCoeff());
  }
  return scale > 0 ? err / scale : err;
}

Cochain descend(const Cochain& a, const ConnectionGradient& grad, double step) {
  Cochain out = a;
  auto values = out.values();
  for (std::size_t c = 0; c < values.size(); ++c) {
    const Su2Vectord coords = project_su2(values[c]) - step * grad.col(static_cast<Eigen::Index>(c));
    values[c] = embed_su2(coords);
  }
  return out;
}

Diagnostics diagnose(const Cochain& a) {
  Diagnostics out;
  const Cochain f = curvature(a);
  out.action = checked_real(inner_product(f, f));
  out.ym_residual_norm = ym_residual_norm(a);
  out.sd_residual = sd_residual(f);
  out.anti_sd_residual = anti_sd_residual(f);
  out.bianchi_residual = bianchi_residual(a);
  out.sd_defects = self_dual_defects(f, false);
  out.anti_sd_defects = self_dual_defects(f, true);
  return out;
}

SolverReport minimize(const Connection& a0, const SolverConfig& cfg) {
  cfg.validate();
  Cochain a = a0.form();
  double value = objective_value(a, cfg.objective);
  if (!std::isfinite(value)) throw SolverAbort("objective is not finite at the initial connection");
  ConnectionGradient grad = objective_gradient(a, cfg.objective);
  double grad_max = grad.size() > 0 ? grad.cwiseAbs().maxCoeff() : 0.0;

  SolverReport report{.trace = {}, .final_connection = a0};
  report.trace.push_back({0, value, grad_max, 0.0});
  report.max_su2_deviation = max_su2_algebra_deviation(a);

  const double min_step = cfg.initial_step * 1e-20;
  report.status = SolverStatus::MaxIterations;
  int it = 0;
  while (true) {
    if (grad_max <= cfg.grad_tol) {
      report.status = SolverStatus::Converged;
      break;
    }
    if (it >= cfg.max_iters) break;
    const double slope = grad.squaredNorm();
    double step = cfg.initial_step;
    bool accepted = false;
    Cochain trial = a;
    double trial_value = value;
    while (step >= min_step) {
      trial = descend(a, grad, step);
      trial_value = objective_value(trial, cfg.objective);
      if (std::isfinite(trial_value) && trial_value <= value - cfg.armijo_c * step * slope) {
        accepted = true;
        break;
      }
      step *= cfg.backtrack_factor;
    }
    if (!accepted) {
      report.status = SolverStatus::LineSearchFailed;
      break;
    }
    ++it;
    a = std::move(trial);
    value = trial_value;
    if (!std::isfinite(value)) throw SolverAbort("objective became non-finite at iteration " + std::to_string(it));
    grad = objective_gradient(a, cfg.objective);
    grad_max = grad.cwiseAbs().maxCoeff();
    report.max_su2_deviation = std::max(report.max_su2_deviation, max_su2_algebra_deviation(a));
    report.trace.push_back({it, value, grad_max, step});
  }
  report.iterations = it;
  report.final_connection = Connection(a);
  report.final = diagnose(a);
  return report;
}

SolverReport solve_self_dual(const Connection& a0, SolverConfig cfg, bool anti_self_dual) {
  cfg.objective = anti_self_dual ? Objective::AntiSelfDual : Objective::SelfDual;
  return minimize(a0, cfg);
}

}  // namespace dym

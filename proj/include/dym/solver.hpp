#pragma once

// Minimization of the discrete Yang-Mills action S = ||F||^2 and of the
// (anti-)self-dual residual ||F -+ itilde*F||^2 over su(2)-valued connections,
// by gradient descent with Armijo backtracking in the real lambda-basis
// coordinates of the connection.

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dym/cochain.hpp"

namespace dym {

enum class Objective { Action, SelfDual, AntiSelfDual };

std::string to_string(Objective o);
Objective objective_from_string(const std::string& s);

struct SolverConfig {
  int max_iters = 5000;
  /// Stop once the max-norm of the gradient is at or below this.
  double grad_tol = 1e-6;
  double armijo_c = 1e-4;
  double backtrack_factor = 0.5;
  double initial_step = 1.0;
  Objective objective = Objective::Action;
  /// Recorded with the run; the descent itself is deterministic.
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument unless 0 < armijo_c < 1,
  /// 0 < backtrack_factor < 1, initial_step > 0, max_iters >= 0, grad_tol >= 0.
  void validate() const;
};

/// One column (a1, a2, a3) per stored 1-form coefficient, in storage order.
using ConnectionGradient = Eigen::Matrix3Xd;

struct IterationRecord {
  int iteration = 0;
  double objective = 0;
  double grad_max_norm = 0;
  /// Accepted step length; 0 for the initial point.
  double step = 0;
};

struct Diagnostics {
  double action = 0;
  double ym_residual_norm = 0;
  double sd_residual = 0;
  double anti_sd_residual = 0;
  double bianchi_residual = 0;
  /// F12 - F34, F13 + F24, F14 - F23 for the self-dual system.
  std::array<double, 3> sd_defects{};
  /// F12 + F34, F13 - F24, F14 + F23 for the anti-self-dual system.
  std::array<double, 3> anti_sd_defects{};
};

enum class SolverStatus { Converged, MaxIterations, LineSearchFailed };

std::string to_string(SolverStatus s);

struct SolverReport {
  std::vector<IterationRecord> trace;
  Connection final_connection;
  Diagnostics final;
  SolverStatus status = SolverStatus::MaxIterations;
  int iterations = 0;
  /// Largest su(2) deviation of any coefficient over all iterates.
  double max_su2_deviation = 0;
};

/// A non-finite objective at an accepted iterate.
class SolverAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// S = ||curvature(A)||^2.
double action(const Cochain& a);
double action(const Connection& a);

double objective_value(const Cochain& a, Objective objective);

/// dB + B u A + A u B: the derivative of curvature(A + tB) at t = 0.
Cochain linearized_curvature(const Cochain& a, const Cochain& b);

/// Gradient of B -> Re (L_A(B), cotangent) pulled back to lambda coordinates:
/// column j, row alpha holds 2 Re tr(l_alpha W_j), where W is the adjoint of
/// L_A applied to the cotangent 2-form. One sweep over the 2-form cells.
ConnectionGradient pullback_gradient(const Cochain& a, const Cochain& cotangent);

/// Gradient of action(A) with respect to every stored coefficient.
ConnectionGradient action_gradient(const Cochain& a);
ConnectionGradient objective_gradient(const Cochain& a, Objective objective);

/// Central differences of objective_value in every lambda coordinate.
ConnectionGradient finite_difference_gradient(const Cochain& a, Objective objective, double step = 1e-4);

/// ||analytic - numeric||_max / ||numeric||_max (or the absolute error when
/// the numeric gradient vanishes). With max_columns > 0 only that many
/// evenly strided coefficients are differenced.
double gradient_check_error(const Cochain& a, Objective objective, double step = 1e-4, int max_columns = 0);

/// A - step * embed(grad), coefficientwise; the result is exactly su(2).
Cochain descend(const Cochain& a, const ConnectionGradient& grad, double step);

Diagnostics diagnose(const Cochain& a);

SolverReport minimize(const Connection& a0, const SolverConfig& cfg);

/// minimize with the (anti-)self-dual residual as objective; the reported
/// diagnostics carry the three componentwise defects.
SolverReport solve_self_dual(const Connection& a0, SolverConfig cfg, bool anti_self_dual = false);

}  // namespace dym

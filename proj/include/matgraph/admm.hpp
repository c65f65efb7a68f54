#pragma once

#include <functional>

namespace matgraph {

/// Called for every eigenvalue update with the coefficients of
/// a*x^2 + delta*x - 1 = 0 and the root that was taken.
using EigenObserver = std::function<void(double a, double delta, double root)>;

struct AdmmConfig {
  double rho0 = 2.0;
  double tau_abs = 1e-4;
  double tau_rel = 1e-4;
  double mu_bar = 10.0;
  int i_max = 100;
  EigenObserver observer;

  /// Throws std::invalid_argument on non-positive values or mu_bar <= 1.
  void validate() const;
};

struct AdmmDiagnostics {
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double rho = 0.0;
  bool converged = false;
};

enum class RhoStep { keep, doubled, halved };

/// Residual balancing: double rho when the primal residual dominates by more
/// than mu_bar, halve it when the dual residual does. The scaled dual variable
/// must then be divided (doubled) or multiplied (halved) by 2 by the caller.
[[nodiscard]] RhoStep balance_rho(double primal, double dual, double mu_bar, double& rho);

}  // namespace matgraph

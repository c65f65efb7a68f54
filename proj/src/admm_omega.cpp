#include "matgraph/admm_omega.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace matgraph {

RealMatrix omega_eigen_update(const RealMatrix& theta_check, const RealMatrix& w,
                              const RealMatrix& u, double rho, int p,
                              const EigenObserver& observer) {
  const double a = static_cast<double>(p) * rho;
  const auto eig = sym_eig(symmetrize(theta_check - a * (w - u)));
  RealVector roots(eig.values.size());
  for (Eigen::Index l = 0; l < eig.values.size(); ++l) {
    roots(l) = positive_quadratic_root(a, eig.values(l));
    if (observer) observer(a, eig.values(l), roots(l));
  }
  return symmetrize(eig.vectors * roots.asDiagonal() * eig.vectors.transpose());
}

RealMatrix omega_w_update(const RealMatrix& omega, const RealMatrix& u, double lambda_p,
                          double rho) {
  RealMatrix w = omega + u;
  const double beta = lambda_p / rho;
  for (Eigen::Index j = 0; j < w.rows(); ++j) {
    for (Eigen::Index k = j + 1; k < w.cols(); ++k) {
      const double value = soft_threshold(0.5 * (w(j, k) + w(k, j)), beta);
      w(j, k) = value;
      w(k, j) = value;
    }
  }
  return w;
}

OmegaSolution solve_omega(const RealMatrix& theta_check, double lambda_p, const AdmmConfig& config,
                          const std::optional<OmegaEstimate>& warm) {
  config.validate();
  if (theta_check.rows() != theta_check.cols() || theta_check.rows() == 0) {
    throw std::invalid_argument("solve_omega: Theta must be square and non-empty");
  }
  if (lambda_p < 0.0) throw std::invalid_argument("solve_omega: lambda_p must be >= 0");
  const int p = static_cast<int>(theta_check.rows());

  OmegaSolution out;
  out.omega = warm ? *warm : OmegaEstimate::identity(p);
  if (out.omega.dim() != p) throw std::invalid_argument("solve_omega: warm start has wrong shape");
  out.w = out.omega.omega;
  RealMatrix u = RealMatrix::Zero(p, p);
  double rho = config.rho0;

  for (int i = 0; i < config.i_max; ++i) {
    out.omega.omega = omega_eigen_update(theta_check, out.w, u, rho, p, config.observer);
    RealMatrix w_next = omega_w_update(out.omega.omega, u, lambda_p, rho);
    const RealMatrix gap = out.omega.omega - w_next;
    u += gap;
    const double pri = gap.norm();
    const double dual = rho * (w_next - out.w).norm();
    out.w = std::move(w_next);
    const double tau_pri =
        p * config.tau_abs + config.tau_rel * std::max(out.omega.omega.norm(), out.w.norm());
    const double tau_dual = p * config.tau_abs + config.tau_rel * u.norm() / rho;

    out.diagnostics.iterations = i + 1;
    out.diagnostics.primal_residual = pri;
    out.diagnostics.dual_residual = dual;
    out.diagnostics.rho = rho;
    if (pri <= tau_pri && dual <= tau_dual) {
      out.diagnostics.converged = true;
      break;
    }
    switch (balance_rho(pri, dual, config.mu_bar, rho)) {
      case RhoStep::doubled:
        u /= 2.0;
        break;
      case RhoStep::halved:
        u *= 2.0;
        break;
      case RhoStep::keep:
        break;
    }
  }
  return out;
}

double omega_objective(const RealMatrix& theta_check, const RealMatrix& omega, double lambda_p) {
  const double p = static_cast<double>(omega.rows());
  const double off = omega.cwiseAbs().sum() - omega.diagonal().cwiseAbs().sum();
  return (-log_det_pd(omega) + (omega * theta_check).trace()) / p + lambda_p * off;
}

}  // namespace matgraph

#pragma once

#include <optional>

#include "matgraph/admm.hpp"
#include "matgraph/estimates.hpp"
#include "matgraph/linalg.hpp"

namespace matgraph {

/// Eigen step: minimizer over symmetric PD Omega of
/// tr(Theta Omega) - ln|Omega| + (p rho / 2) ||Omega - W + U||_F^2.
[[nodiscard]] RealMatrix omega_eigen_update(const RealMatrix& theta_check, const RealMatrix& w,
                                            const RealMatrix& u, double rho, int p,
                                            const EigenObserver& observer = {});

/// Lasso proximal step on Omega + U: diagonal copied, off-diagonals
/// soft-thresholded at lambda/rho.
[[nodiscard]] RealMatrix omega_w_update(const RealMatrix& omega, const RealMatrix& u,
                                        double lambda_p, double rho);

struct OmegaSolution {
  OmegaEstimate omega;  // Omega iterate
  RealMatrix w;         // split variable; carries exact zeros
  AdmmDiagnostics diagnostics;
};

[[nodiscard]] OmegaSolution solve_omega(const RealMatrix& theta_check, double lambda_p,
                                        const AdmmConfig& config,
                                        const std::optional<OmegaEstimate>& warm = std::nullopt);

/// L_1 = -(1/p) ln|Omega| + (1/p) tr(Omega Theta) + lambda ||Omega^-||_1.
[[nodiscard]] double omega_objective(const RealMatrix& theta_check, const RealMatrix& omega,
                                     double lambda_p);

}  // namespace matgraph

#pragma once

#include <optional>
#include <vector>

#include "matgraph/admm.hpp"
#include "matgraph/estimates.hpp"
#include "matgraph/linalg.hpp"

namespace matgraph {

/// Eigen step for one window: minimizer over Hermitian PD Phi of
/// -ln|Phi| + tr(Theta Phi) + (Mq rho / 2) ||Phi - W + U||_F^2.
[[nodiscard]] ComplexMatrix phi_update(const ComplexMatrix& theta, const ComplexMatrix& w,
                                       const ComplexMatrix& u, double rho, int windows, int q,
                                       const EigenObserver& observer = {});

/// Sparse-group-lasso proximal step on G_k = Phi_k + U_k. Diagonals pass
/// through; each off-diagonal group (j, l) across windows is soft-thresholded
/// elementwise at alpha*lambda/rho and then shrunk as a group.
[[nodiscard]] std::vector<ComplexMatrix> w_update(const std::vector<ComplexMatrix>& phi,
                                                  const std::vector<ComplexMatrix>& u,
                                                  double lambda_q, double alpha, double rho);

struct GammaSolution {
  GammaEstimate gamma;            // Phi iterate
  std::vector<ComplexMatrix> w;   // split variable; carries exact zeros
  AdmmDiagnostics diagnostics;
};

/// Minimizes L_2 for fixed Theta-tilde. A warm start sets W = Phi_warm and U = 0.
[[nodiscard]] GammaSolution solve_gamma(const std::vector<ComplexMatrix>& theta_tilde,
                                        double lambda_q, double alpha, const AdmmConfig& config,
                                        const std::optional<GammaEstimate>& warm = std::nullopt);

/// P_q: alpha*lambda sum_k sum_{i!=j} |Phi_k,ij| + (1-alpha) sqrt(M) lambda sum_{i!=j} ||Phi^(ij)||.
[[nodiscard]] double gamma_penalty(const std::vector<ComplexMatrix>& phi, double lambda_q,
                                   double alpha);

/// L_2 = (1/Mq) sum_k (-ln|Phi_k| + Re tr(Theta_k Phi_k)) + P_q.
[[nodiscard]] double gamma_objective(const std::vector<ComplexMatrix>& theta_tilde,
                                     const std::vector<ComplexMatrix>& phi, double lambda_q,
                                     double alpha);

}  // namespace matgraph

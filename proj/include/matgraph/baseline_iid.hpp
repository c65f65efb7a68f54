#pragma once

#include "matgraph/admm_omega.hpp"
#include "matgraph/spectral.hpp"

namespace matgraph {

struct IidConfig {
  double lambda_p = 0.0;
  double lambda_q = 0.0;
  int m_max = 20;
  double tau_ff = 1e-5;
  AdmmConfig admm;
};

/// Penalized matrix-normal flip-flop that treats Z(0..n-1) as independent
/// draws with E{vec Z vec Z^T} = Psi (x) Sigma, Upsilon = Psi^{-1}.
struct IidFit {
  OmegaEstimate omega;
  RealMatrix upsilon;  // ||Upsilon||_F = 1
  RealMatrix omega_split;
  RealMatrix upsilon_split;
  int iterations = 0;
  bool converged = false;
};

/// S_Omega = (1/nq) sum_t Z Upsilon Z^T.
[[nodiscard]] RealMatrix row_statistic(const MatrixSeries& series, const RealMatrix& upsilon);
/// S_Upsilon = (1/np) sum_t Z^T Omega Z.
[[nodiscard]] RealMatrix col_statistic(const MatrixSeries& series, const RealMatrix& omega);

[[nodiscard]] IidFit fit_iid(const MatrixSeries& series, const IidConfig& config);

}  // namespace matgraph

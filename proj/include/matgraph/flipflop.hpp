#pragma once

#include <memory>
#include <vector>

#include "matgraph/admm_gamma.hpp"
#include "matgraph/admm_omega.hpp"
#include "matgraph/estimates.hpp"
#include "matgraph/spectral.hpp"

namespace matgraph {

struct FlipFlopConfig {
  double lambda_p = 0.0;
  double lambda_q = 0.0;
  double alpha = 0.05;
  int m_max = 20;
  double tau_ff = 1e-5;
  AdmmConfig admm;

  void validate() const;
};

/// Source of the two sufficient statistics used by the alternating solves.
class Statistics {
 public:
  virtual ~Statistics() = default;
  [[nodiscard]] virtual int p() const = 0;
  [[nodiscard]] virtual int q() const = 0;
  [[nodiscard]] virtual int windows() const = 0;
  [[nodiscard]] virtual std::vector<ComplexMatrix> theta_tilde(const RealMatrix& omega) const = 0;
  [[nodiscard]] virtual RealMatrix theta_check(const GammaEstimate& gamma) const = 0;
};

/// Statistics from windowed DFTs of an observed series.
/// Same values as the spectral.hpp reference functions, computed from the
/// window members repacked into real stacks so each statistic is two GEMMs.
class DftStatistics final : public Statistics {
 public:
  DftStatistics(const DftStack& dfts, const SpectralPlan& plan);

  [[nodiscard]] int p() const override { return p_; }
  [[nodiscard]] int q() const override { return q_; }
  [[nodiscard]] int windows() const override { return plan_.windows; }
  [[nodiscard]] std::vector<ComplexMatrix> theta_tilde(const RealMatrix& omega) const override;
  [[nodiscard]] RealMatrix theta_check(const GammaEstimate& gamma) const override;

 private:
  int p_;
  int q_;
  SpectralPlan plan_;
  std::vector<RealMatrix> vertical_;    // per window, Kp x 2q: rows l*p..: [Re D_l  Im D_l]
  std::vector<RealMatrix> transposed_;  // per window, 2Kq x p: rows l*2q..: [Re D_l  Im D_l]^T
};

/// Exact expectations of the statistics under S_z(f_k) = Sbar_k (x) Sigma:
/// E Theta-tilde_k = tr(Omega Sigma)/p * Sbar_k and
/// E Theta-check = (1/Mq) sum_k Re tr(Sbar_k Phi_k) * Sigma.
class PopulationStatistics final : public Statistics {
 public:
  PopulationStatistics(std::vector<ComplexMatrix> sbar, RealMatrix sigma);

  [[nodiscard]] int p() const override { return static_cast<int>(sigma_.rows()); }
  [[nodiscard]] int q() const override { return static_cast<int>(sbar_.front().rows()); }
  [[nodiscard]] int windows() const override { return static_cast<int>(sbar_.size()); }
  [[nodiscard]] std::vector<ComplexMatrix> theta_tilde(const RealMatrix& omega) const override;
  [[nodiscard]] RealMatrix theta_check(const GammaEstimate& gamma) const override;

 private:
  std::vector<ComplexMatrix> sbar_;
  RealMatrix sigma_;
};

struct OuterStep {
  int iteration = 0;
  double neg_log_like = 0.0;  // G
  double objective = 0.0;     // G + penalties
  double gamma_change = 0.0;
  double omega_change = 0.0;
  AdmmDiagnostics gamma_solver;
  AdmmDiagnostics omega_solver;
};

struct FitResult {
  OmegaEstimate omega;
  GammaEstimate gamma;                 // normalized, ||Gamma||_F = 1
  RealMatrix omega_split;              // W-bar of the last Omega solve
  std::vector<ComplexMatrix> gamma_split;  // W_k of the last Gamma solve, same scaling as gamma
  std::vector<OuterStep> trace;
  bool converged = false;
  double seconds = 0.0;

  [[nodiscard]] bool inner_converged() const;
};

/// G(Omega, Gamma) evaluated through the statistics: -(1/p) ln|Omega| +
/// (1/Mq) sum_k (-ln|Phi_k| + Re tr(Theta-tilde_k(Omega) Phi_k)).
[[nodiscard]] double neg_log_like(const Statistics& stats, const RealMatrix& omega,
                                  const GammaEstimate& gamma);

/// Alternating minimization started from Omega = I, Phi_k = I. Warm starts are
/// optional (defaults to identity) so a path of fits can reuse earlier solutions.
[[nodiscard]] FitResult fit(const Statistics& stats, const FlipFlopConfig& config,
                            const FitResult* warm = nullptr);
[[nodiscard]] FitResult fit(const DftStack& dfts, const SpectralPlan& plan,
                            const FlipFlopConfig& config);

}  // namespace matgraph

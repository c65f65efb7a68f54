#include "matgraph/admm_gamma.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace matgraph {
namespace {

void check_shapes(const std::vector<ComplexMatrix>& blocks, const char* what) {
  if (blocks.empty()) throw std::invalid_argument(std::string(what) + ": no windows");
  const auto q = blocks.front().rows();
  for (const auto& b : blocks) {
    if (b.rows() != q || b.cols() != q) {
      throw std::invalid_argument(std::string(what) + ": windows must be equal square blocks");
    }
  }
}

}  // namespace

ComplexMatrix phi_update(const ComplexMatrix& theta, const ComplexMatrix& w,
                         const ComplexMatrix& u, double rho, int windows, int q,
                         const EigenObserver& observer) {
  const double a = static_cast<double>(windows) * q * rho;
  const auto eig = herm_eig(hermitize(theta - a * (w - u)));
  RealVector roots(eig.values.size());
  for (Eigen::Index l = 0; l < eig.values.size(); ++l) {
    roots(l) = positive_quadratic_root(a, eig.values(l));
    if (observer) observer(a, eig.values(l), roots(l));
  }
  return hermitize(eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint());
}

std::vector<ComplexMatrix> w_update(const std::vector<ComplexMatrix>& phi,
                                    const std::vector<ComplexMatrix>& u, double lambda_q,
                                    double alpha, double rho) {
  check_shapes(phi, "w_update");
  if (u.size() != phi.size()) throw std::invalid_argument("w_update: U/Phi window mismatch");
  const std::size_t windows = phi.size();
  const auto q = phi.front().rows();
  std::vector<ComplexMatrix> w(windows);
  for (std::size_t k = 0; k < windows; ++k) w[k] = phi[k] + u[k];

  const double elem = alpha * lambda_q / rho;
  const double group = (1.0 - alpha) * lambda_q * std::sqrt(static_cast<double>(windows)) / rho;
  std::vector<Complex> shrunk(windows);
  for (Eigen::Index j = 0; j < q; ++j) {
    for (std::size_t k = 0; k < windows; ++k) w[k](j, j) = Complex(w[k](j, j).real(), 0.0);
    for (Eigen::Index l = j + 1; l < q; ++l) {
      double norm_sq = 0.0;
      for (std::size_t k = 0; k < windows; ++k) {
        shrunk[k] = soft_threshold(w[k](j, l), elem);
        norm_sq += std::norm(shrunk[k]);
      }
      const double norm = std::sqrt(norm_sq);
      const double factor = norm > 0.0 ? std::max(0.0, 1.0 - group / norm) : 0.0;
      for (std::size_t k = 0; k < windows; ++k) {
        const Complex value = factor * shrunk[k];
        w[k](j, l) = value;
        w[k](l, j) = std::conj(value);
      }
    }
  }
  return w;
}

GammaSolution solve_gamma(const std::vector<ComplexMatrix>& theta_tilde, double lambda_q,
                          double alpha, const AdmmConfig& config,
                          const std::optional<GammaEstimate>& warm) {
  config.validate();
  check_shapes(theta_tilde, "solve_gamma");
  if (lambda_q < 0.0 || alpha < 0.0 || alpha > 1.0) {
    throw std::invalid_argument("solve_gamma: need lambda_q >= 0 and alpha in [0, 1]");
  }
  const int windows = static_cast<int>(theta_tilde.size());
  const int q = static_cast<int>(theta_tilde.front().rows());
  const double scale = static_cast<double>(q) * std::sqrt(static_cast<double>(windows));

  GammaSolution out;
  out.gamma = warm ? *warm : GammaEstimate::identity(q, windows);
  if (out.gamma.windows() != windows || out.gamma.dim() != q) {
    throw std::invalid_argument("solve_gamma: warm start has the wrong shape");
  }
  out.w = out.gamma.phi;
  std::vector<ComplexMatrix> u(static_cast<std::size_t>(windows), ComplexMatrix::Zero(q, q));
  double rho = config.rho0;

  for (int i = 0; i < config.i_max; ++i) {
    for (int k = 0; k < windows; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      out.gamma.phi[kk] =
          phi_update(theta_tilde[kk], out.w[kk], u[kk], rho, windows, q, config.observer);
    }
    auto w_next = w_update(out.gamma.phi, u, lambda_q, alpha, rho);
    double pri_sq = 0.0;
    double dual_sq = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
      const ComplexMatrix gap = out.gamma.phi[k] - w_next[k];
      u[k] += gap;
      pri_sq += gap.squaredNorm();
      dual_sq += (w_next[k] - out.w[k]).squaredNorm();
    }
    out.w = std::move(w_next);
    const double pri = std::sqrt(pri_sq);
    const double dual = rho * std::sqrt(dual_sq);
    const double tau_pri =
        scale * config.tau_abs +
        config.tau_rel * std::max(out.gamma.frobenius_norm(), stacked_norm(out.w));
    const double tau_dual = scale * config.tau_abs + config.tau_rel * stacked_norm(u) / rho;

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
        for (auto& x : u) x /= 2.0;
        break;
      case RhoStep::halved:
        for (auto& x : u) x *= 2.0;
        break;
      case RhoStep::keep:
        break;
    }
  }
  return out;
}

double gamma_penalty(const std::vector<ComplexMatrix>& phi, double lambda_q, double alpha) {
  check_shapes(phi, "gamma_penalty");
  const auto q = phi.front().rows();
  const double root_m = std::sqrt(static_cast<double>(phi.size()));
  double elem = 0.0;
  double group = 0.0;
  for (Eigen::Index i = 0; i < q; ++i) {
    for (Eigen::Index j = 0; j < q; ++j) {
      if (i == j) continue;
      double sq = 0.0;
      for (const auto& b : phi) {
        elem += std::abs(b(i, j));
        sq += std::norm(b(i, j));
      }
      group += std::sqrt(sq);
    }
  }
  return alpha * lambda_q * elem + (1.0 - alpha) * root_m * lambda_q * group;
}

double gamma_objective(const std::vector<ComplexMatrix>& theta_tilde,
                       const std::vector<ComplexMatrix>& phi, double lambda_q, double alpha) {
  check_shapes(theta_tilde, "gamma_objective");
  if (phi.size() != theta_tilde.size()) {
    throw std::invalid_argument("gamma_objective: window count mismatch");
  }
  const double mq = static_cast<double>(phi.size()) * static_cast<double>(phi.front().rows());
  double smooth = 0.0;
  for (std::size_t k = 0; k < phi.size(); ++k) {
    smooth += -log_det_pd(phi[k]) + (theta_tilde[k] * phi[k]).trace().real();
  }
  return smooth / mq + gamma_penalty(phi, lambda_q, alpha);
}

}  // namespace matgraph

#include "matgraph/flipflop.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace matgraph {

void FlipFlopConfig::validate() const {
  if (lambda_p < 0.0 || lambda_q < 0.0) throw std::invalid_argument("lambdas must be >= 0");
  if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("alpha must lie in [0, 1]");
  if (m_max < 1) throw std::invalid_argument("m_max must be at least 1");
  if (!(tau_ff > 0.0)) throw std::invalid_argument("tau_ff must be positive");
  admm.validate();
}

DftStatistics::DftStatistics(const DftStack& dfts, const SpectralPlan& plan)
    : p_(dfts.p), q_(dfts.q), plan_(plan) {
  check_compatible(dfts, plan);
  const int k_len = plan.window_len;
  for (int k = 0; k < plan.windows; ++k) {
    RealMatrix vert(static_cast<Eigen::Index>(k_len) * p_, 2 * q_);
    RealMatrix trans(static_cast<Eigen::Index>(k_len) * 2 * q_, p_);
    for (int l = 0; l < k_len; ++l) {
      const ComplexMatrix& d = dfts.at(plan.member_bin(k, l - plan.half_width));
      vert.block(l * p_, 0, p_, q_) = d.real();
      vert.block(l * p_, q_, p_, q_) = d.imag();
      trans.block(l * 2 * q_, 0, q_, p_) = d.real().transpose();
      trans.block(l * 2 * q_ + q_, 0, q_, p_) = d.imag().transpose();
    }
    vertical_.push_back(std::move(vert));
    transposed_.push_back(std::move(trans));
  }
}

std::vector<ComplexMatrix> DftStatistics::theta_tilde(const RealMatrix& omega) const {
  if (omega.rows() != p_ || omega.cols() != p_) {
    throw SpectralError("theta_tilde: Omega shape does not match the data");
  }
  const Eigen::Index k_len = plan_.window_len;
  const double norm = static_cast<double>(k_len) * p_;
  std::vector<ComplexMatrix> out;
  out.reserve(vertical_.size());
  RealMatrix scaled(k_len * p_, 2 * q_);
  for (const auto& vert : vertical_) {
    // column-major Kp x 2q viewed as p x 2Kq applies Omega to every block
    Eigen::Map<const RealMatrix> blocks(vert.data(), p_, k_len * 2 * q_);
    Eigen::Map<RealMatrix>(scaled.data(), p_, k_len * 2 * q_).noalias() = omega * blocks;
    const RealMatrix gram = vert.transpose() * scaled;
    ComplexMatrix acc(q_, q_);
    acc.real() = gram.topLeftCorner(q_, q_) + gram.bottomRightCorner(q_, q_);
    acc.imag() = gram.bottomLeftCorner(q_, q_) - gram.topRightCorner(q_, q_);
    out.push_back(hermitize(acc / norm));
  }
  return out;
}

RealMatrix DftStatistics::theta_check(const GammaEstimate& gamma) const {
  if (gamma.windows() != plan_.windows || gamma.dim() != q_) {
    throw SpectralError("theta_check: Gamma shape does not match the plan");
  }
  const Eigen::Index k_len = plan_.window_len;
  RealMatrix acc = RealMatrix::Zero(p_, p_);
  RealMatrix mixed(k_len * 2 * q_, p_);
  for (std::size_t k = 0; k < transposed_.size(); ++k) {
    const ComplexMatrix& phi = gamma.phi[k];
    RealMatrix lift(2 * q_, 2 * q_);
    lift << phi.real(), -phi.imag(), phi.imag(), phi.real();
    const auto& trans = transposed_[k];
    Eigen::Map<const RealMatrix> blocks(trans.data(), 2 * q_, k_len * p_);
    Eigen::Map<RealMatrix>(mixed.data(), 2 * q_, k_len * p_).noalias() = lift * blocks;
    acc.noalias() += trans.transpose() * mixed;
  }
  const double norm = static_cast<double>(plan_.windows) * k_len * q_;
  return symmetrize(acc / norm);
}

PopulationStatistics::PopulationStatistics(std::vector<ComplexMatrix> sbar, RealMatrix sigma)
    : sbar_(std::move(sbar)), sigma_(std::move(sigma)) {
  if (sbar_.empty()) throw std::invalid_argument("PopulationStatistics: no windows");
  if (sigma_.rows() != sigma_.cols() || sigma_.rows() == 0) {
    throw std::invalid_argument("PopulationStatistics: Sigma must be square");
  }
}

std::vector<ComplexMatrix> PopulationStatistics::theta_tilde(const RealMatrix& omega) const {
  const double scale = (omega * sigma_).trace() / static_cast<double>(p());
  std::vector<ComplexMatrix> out;
  out.reserve(sbar_.size());
  for (const auto& s : sbar_) out.push_back(hermitize(scale * s));
  return out;
}

RealMatrix PopulationStatistics::theta_check(const GammaEstimate& gamma) const {
  double acc = 0.0;
  for (std::size_t k = 0; k < sbar_.size(); ++k) acc += (sbar_[k] * gamma.phi[k]).trace().real();
  return symmetrize(acc / (static_cast<double>(windows()) * q()) * sigma_);
}

bool FitResult::inner_converged() const {
  for (const auto& step : trace) {
    if (!step.gamma_solver.converged || !step.omega_solver.converged) return false;
  }
  return true;
}

double neg_log_like(const Statistics& stats, const RealMatrix& omega, const GammaEstimate& gamma) {
  const auto tilde = stats.theta_tilde(omega);
  const double mq = static_cast<double>(stats.windows()) * stats.q();
  double value = -log_det_pd(omega) / stats.p();
  for (std::size_t k = 0; k < tilde.size(); ++k) {
    value += (-log_det_pd(gamma.phi[k]) + (tilde[k] * gamma.phi[k]).trace().real()) / mq;
  }
  return value;
}

FitResult fit(const Statistics& stats, const FlipFlopConfig& config, const FitResult* warm) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const int p = stats.p();
  const int q = stats.q();
  const int m = stats.windows();

  FitResult out;
  out.omega = warm ? warm->omega : OmegaEstimate::identity(p);
  out.gamma = warm ? warm->gamma : GammaEstimate::identity(q, m);

  for (int iter = 1; iter <= config.m_max; ++iter) {
    OuterStep step;
    step.iteration = iter;

    const auto tilde = stats.theta_tilde(out.omega.omega);
    auto gamma_sol = solve_gamma(tilde, config.lambda_q, config.alpha, config.admm, out.gamma);
    const double norm = gamma_sol.gamma.frobenius_norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw std::runtime_error("flip-flop: Gamma estimate has zero or non-finite norm");
    }
    for (auto& phi : gamma_sol.gamma.phi) phi /= norm;
    for (auto& w : gamma_sol.w) w /= norm;
    step.gamma_change = stacked_norm([&] {
      std::vector<ComplexMatrix> diff;
      for (int k = 0; k < m; ++k) {
        diff.push_back(gamma_sol.gamma.phi[static_cast<std::size_t>(k)] -
                       out.gamma.phi[static_cast<std::size_t>(k)]);
      }
      return diff;
    }()) / out.gamma.frobenius_norm();
    step.gamma_solver = gamma_sol.diagnostics;
    out.gamma = std::move(gamma_sol.gamma);
    out.gamma_split = std::move(gamma_sol.w);

    const RealMatrix check = stats.theta_check(out.gamma);
    auto omega_sol = solve_omega(check, config.lambda_p, config.admm, out.omega);
    step.omega_change = (omega_sol.omega.omega - out.omega.omega).norm() / out.omega.omega.norm();
    step.omega_solver = omega_sol.diagnostics;
    out.omega = std::move(omega_sol.omega);
    out.omega_split = std::move(omega_sol.w);

    // pairing identity: (1/p) tr(check Omega) equals the Gamma-side trace term
    step.neg_log_like = (-log_det_pd(out.omega.omega) + (check * out.omega.omega).trace()) / p;
    for (const auto& phi : out.gamma.phi) {
      step.neg_log_like -= log_det_pd(phi) / (static_cast<double>(m) * q);
    }
    const RealMatrix& om = out.omega.omega;
    const double off = om.cwiseAbs().sum() - om.diagonal().cwiseAbs().sum();
    step.objective = step.neg_log_like + config.lambda_p * off +
                     gamma_penalty(out.gamma.phi, config.lambda_q, config.alpha);
    out.trace.push_back(step);

    if (step.gamma_change <= config.tau_ff && step.omega_change <= config.tau_ff) {
      out.converged = true;
      break;
    }
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

FitResult fit(const DftStack& dfts, const SpectralPlan& plan, const FlipFlopConfig& config) {
  return fit(DftStatistics(dfts, plan), config);
}

}  // namespace matgraph

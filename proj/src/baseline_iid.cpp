#include "matgraph/baseline_iid.hpp"

#include <stdexcept>

namespace matgraph {

RealMatrix row_statistic(const MatrixSeries& series, const RealMatrix& upsilon) {
  RealMatrix acc = RealMatrix::Zero(series.p(), series.p());
  for (const auto& z : series.frames()) acc.noalias() += z * upsilon * z.transpose();
  return symmetrize(acc / (static_cast<double>(series.n()) * series.q()));
}

RealMatrix col_statistic(const MatrixSeries& series, const RealMatrix& omega) {
  RealMatrix acc = RealMatrix::Zero(series.q(), series.q());
  for (const auto& z : series.frames()) acc.noalias() += z.transpose() * omega * z;
  return symmetrize(acc / (static_cast<double>(series.n()) * series.p()));
}

IidFit fit_iid(const MatrixSeries& series, const IidConfig& config) {
  if (series.n() < 2) throw std::invalid_argument("fit_iid: need at least two samples");
  if (config.lambda_p < 0.0 || config.lambda_q < 0.0 || config.m_max < 1) {
    throw std::invalid_argument("fit_iid: invalid configuration");
  }
  IidFit out;
  out.omega = OmegaEstimate::identity(series.p());
  out.upsilon = RealMatrix::Identity(series.q(), series.q());
  for (int iter = 1; iter <= config.m_max; ++iter) {
    auto ups = solve_omega(col_statistic(series, out.omega.omega), config.lambda_q, config.admm,
                           OmegaEstimate{out.upsilon});
    const double norm = ups.omega.omega.norm();
    ups.omega.omega /= norm;
    ups.w /= norm;
    const double ups_change = (ups.omega.omega - out.upsilon).norm() / out.upsilon.norm();
    out.upsilon = std::move(ups.omega.omega);
    out.upsilon_split = std::move(ups.w);

    auto om = solve_omega(row_statistic(series, out.upsilon), config.lambda_p, config.admm,
                          out.omega);
    const double om_change = (om.omega.omega - out.omega.omega).norm() / out.omega.omega.norm();
    out.omega = std::move(om.omega);
    out.omega_split = std::move(om.w);
    out.iterations = iter;
    if (ups_change <= config.tau_ff && om_change <= config.tau_ff) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace matgraph

#include <doctest.h>

#include <cmath>
#include <random>

#include "matgraph/flipflop.hpp"
#include "matgraph/graph.hpp"
#include "oracles.hpp"

using namespace matgraph;

namespace {

AdmmConfig tight() {
  AdmmConfig c;
  c.tau_abs = 1e-11;
  c.tau_rel = 1e-11;
  c.i_max = 20000;
  return c;
}

// z(t) = a z(t-1) + mix e(t), columns independent
MatrixSeries ar_series(std::mt19937_64& gen, int p, int q, int n, double a) {
  std::normal_distribution<double> nd;
  const RealMatrix mix = oracle::random_real(gen, p, p) + 2.0 * RealMatrix::Identity(p, p);
  RealMatrix state = RealMatrix::Zero(p, q);
  std::vector<RealMatrix> frames;
  for (int t = -50; t < n; ++t) {
    RealMatrix e(p, q);
    for (int j = 0; j < q; ++j)
      for (int i = 0; i < p; ++i) e(i, j) = nd(gen);
    state = (a * state + mix * e).eval();
    if (t >= 0) frames.push_back(state);
  }
  return {p, q, frames};
}

MatrixSeries white_series(std::mt19937_64& gen, int p, int q, int n) { return ar_series(gen, p, q, n, 0.0); }

}  // namespace

TEST_CASE("fast statistics agree with the per-bin reference") {
  std::mt19937_64 gen(8);
  const auto s = ar_series(gen, 3, 4, 64, 0.5);
  const auto dfts = dft(s);
  const auto plan = plan_windows(64, 3);
  const DftStatistics stats(dfts, plan);
  const RealMatrix omega = oracle::random_spd(gen, 3);
  GammaEstimate g;
  for (int k = 0; k < 3; ++k) g.phi.push_back(oracle::random_hpd(gen, 4));
  const auto fast = stats.theta_tilde(omega);
  const auto ref = theta_tilde(dfts, plan, omega);
  for (std::size_t k = 0; k < 3; ++k) CHECK((fast[k] - ref[k]).norm() < 1e-12 * ref[k].norm());
  const RealMatrix check_ref = theta_check(dfts, plan, g);
  CHECK((stats.theta_check(g) - check_ref).norm() < 1e-12 * check_ref.norm());
  CHECK(neg_log_like(stats, omega, g) == doctest::Approx(neg_log_like(dfts, plan, omega, g)).epsilon(1e-12));

  const auto scaled = dft(s.scaled(3.0));
  const DftStatistics stats3(scaled, plan);
  CHECK((stats3.theta_check(g) - 9.0 * check_ref).norm() < 1e-11 * check_ref.norm());
  CHECK((stats3.theta_tilde(omega)[1] - 9.0 * ref[1]).norm() < 1e-11 * ref[1].norm());
}

TEST_CASE("population statistics") {
  std::mt19937_64 gen(2);
  const std::vector<ComplexMatrix> sbar{oracle::random_hpd(gen, 3), oracle::random_hpd(gen, 3)};
  const RealMatrix sigma = oracle::random_spd(gen, 2);
  const PopulationStatistics stats(sbar, sigma);
  CHECK(stats.p() == 2);
  CHECK(stats.q() == 3);
  CHECK(stats.windows() == 2);
  const RealMatrix omega = oracle::random_spd(gen, 2);
  const auto tilde = stats.theta_tilde(omega);
  const double scale = (omega * sigma).trace() / 2.0;
  CHECK((tilde[0] - scale * sbar[0]).norm() < 1e-12);
  GammaEstimate g{{oracle::random_hpd(gen, 3), oracle::random_hpd(gen, 3)}};
  const double w = ((sbar[0] * g.phi[0]).trace().real() + (sbar[1] * g.phi[1]).trace().real()) / 6.0;
  CHECK((stats.theta_check(g) - w * sigma).norm() < 1e-12);
}

TEST_CASE("unpenalized fit with q = 1 matches the closed-form fixed point") {
  std::mt19937_64 gen(14);
  const int p = 3;
  const auto s = ar_series(gen, p, 1, 256, 0.6);
  const auto dfts = dft(s);
  const auto plan = plan_windows(256, 2);
  FlipFlopConfig cfg;
  cfg.admm = tight();
  cfg.m_max = 300;
  cfg.tau_ff = 1e-11;
  const auto result = fit(dfts, plan, cfg);

  // independent scalar fixed point
  const int m = plan.windows;
  const int k_len = plan.window_len;
  RealMatrix omega = RealMatrix::Identity(p, p);
  std::vector<double> phi(static_cast<std::size_t>(m), 1.0);
  for (int it = 0; it < 2000; ++it) {
    double norm = 0.0;
    for (int k = 0; k < m; ++k) {
      double acc = 0.0;
      for (int l = -plan.half_width; l <= plan.half_width; ++l) {
        const ComplexMatrix& d = dfts.at(plan.member_bin(k, l));
        acc += (d.transpose() * omega.cast<Complex>() * d.conjugate())(0, 0).real();
      }
      phi[static_cast<std::size_t>(k)] = 1.0 / (acc / (k_len * p));
      norm += phi[static_cast<std::size_t>(k)] * phi[static_cast<std::size_t>(k)];
    }
    norm = std::sqrt(norm);
    RealMatrix check = RealMatrix::Zero(p, p);
    for (int k = 0; k < m; ++k) {
      phi[static_cast<std::size_t>(k)] /= norm;
      for (int l = -plan.half_width; l <= plan.half_width; ++l) {
        const ComplexMatrix& d = dfts.at(plan.member_bin(k, l));
        check += phi[static_cast<std::size_t>(k)] * (d * d.adjoint()).real();
      }
    }
    omega = (check / (m * k_len)).inverse();
  }
  for (int k = 0; k < m; ++k) {
    const RealMatrix expect = phi[static_cast<std::size_t>(k)] * omega;
    const RealMatrix got = result.gamma.phi[static_cast<std::size_t>(k)](0, 0).real() * result.omega.omega;
    CHECK((got - expect).norm() < 1e-3 * expect.norm());
  }
  CHECK(result.converged);
}

TEST_CASE("white data with Sigma = I gives a near-diagonal Omega") {
  std::mt19937_64 gen(4);
  std::normal_distribution<double> nd;
  std::vector<RealMatrix> frames;
  for (int t = 0; t < 512; ++t) {
    RealMatrix z(4, 3);
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 4; ++i) z(i, j) = nd(gen);
    frames.push_back(z);
  }
  const MatrixSeries s(4, 3, frames);
  FlipFlopConfig cfg;
  cfg.lambda_p = 0.05;
  cfg.lambda_q = 0.05;
  const auto result = fit(dft(s), plan_windows(512, 4), cfg);
  CHECK(result.gamma.frobenius_norm() == doctest::Approx(1.0).epsilon(1e-14));
  const RealMatrix& om = result.omega.omega;
  const double off = (om - RealMatrix(om.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
  CHECK(off < 0.05 * om.diagonal().minCoeff());
  CHECK(support_edges(result.omega_split).size() == 0);
}

TEST_CASE("fit invariants: normalization, determinism, trace") {
  std::mt19937_64 gen(6);
  const auto s = ar_series(gen, 4, 3, 128, 0.4);
  const auto dfts = dft(s);
  const auto plan = plan_windows(128, 3);
  FlipFlopConfig cfg;
  cfg.lambda_p = 0.02;
  cfg.lambda_q = 0.02;
  const auto a = fit(dfts, plan, cfg);
  const auto b = fit(dfts, plan, cfg);
  CHECK(a.gamma.frobenius_norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(a.omega.omega == b.omega.omega);
  for (std::size_t k = 0; k < a.gamma.phi.size(); ++k) CHECK(a.gamma.phi[k] == b.gamma.phi[k]);
  REQUIRE_FALSE(a.trace.empty());
  CHECK(static_cast<int>(a.trace.size()) <= cfg.m_max);
  const DftStatistics stats(dfts, plan);
  CHECK(a.trace.back().neg_log_like ==
        doctest::Approx(neg_log_like(stats, a.omega.omega, a.gamma)).epsilon(1e-10));
  CHECK(a.trace.back().objective >= a.trace.back().neg_log_like);
}

TEST_CASE("inner solves never increase their objective over the warm start") {
  std::mt19937_64 gen(10);
  const auto s = white_series(gen, 3, 3, 96);
  const auto dfts = dft(s);
  const auto plan = plan_windows(96, 2);
  const DftStatistics stats(dfts, plan);
  for (int trial = 0; trial < 5; ++trial) {
    const RealMatrix omega = oracle::random_spd(gen, 3);
    GammaEstimate warm{{oracle::random_hpd(gen, 3), oracle::random_hpd(gen, 3)}};
    const auto tilde = stats.theta_tilde(omega);
    const auto sol = solve_gamma(tilde, 0.05, 0.05, AdmmConfig{}, warm);
    CHECK(gamma_objective(tilde, sol.gamma.phi, 0.05, 0.05) <=
          gamma_objective(tilde, warm.phi, 0.05, 0.05) + 1e-6);

    const RealMatrix check = stats.theta_check(warm);
    const OmegaEstimate owarm{oracle::random_spd(gen, 3)};
    const auto osol = solve_omega(check, 0.05, AdmmConfig{}, owarm);
    CHECK(omega_objective(check, osol.omega.omega, 0.05) <=
          omega_objective(check, owarm.omega, 0.05) + 1e-6);
  }
}

TEST_CASE("config validation") {
  FlipFlopConfig cfg;
  cfg.alpha = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.alpha = 0.05;
  cfg.lambda_p = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

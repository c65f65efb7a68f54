#include <doctest.h>

#include <cmath>
#include <random>

#include "matgraph/admm_omega.hpp"
#include "oracles.hpp"

using namespace matgraph;

namespace {

AdmmConfig tight() {
  AdmmConfig c;
  c.tau_abs = 1e-10;
  c.tau_rel = 1e-10;
  c.i_max = 20000;
  return c;
}

double step_a_objective(const RealMatrix& theta, const RealMatrix& v, double a, const RealMatrix& x) {
  return -std::log(x.determinant()) + (theta * x).trace() + 0.5 * a * (x - v).squaredNorm();
}

}  // namespace

TEST_CASE("omega_eigen_update closed forms and probes") {
  const RealMatrix zero = RealMatrix::Zero(3, 3);
  CHECK((omega_eigen_update(zero, zero, zero, 2.0, 3) - RealMatrix::Identity(3, 3) / std::sqrt(6.0))
            .norm() < 1e-14);
  const RealMatrix one = RealMatrix::Ones(1, 1);
  const RealMatrix z1 = RealMatrix::Zero(1, 1);
  CHECK(omega_eigen_update(one, z1, z1, 1.0, 1)(0, 0) ==
        doctest::Approx((-1.0 + std::sqrt(5.0)) / 2.0));

  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 5; ++trial) {
    const RealMatrix theta = oracle::random_spd(gen, 3);
    RealMatrix w = oracle::random_real(gen, 3, 3);
    w = (0.5 * (w + w.transpose())).eval();
    RealMatrix u = oracle::random_real(gen, 3, 3);
    u = (0.1 * (u + u.transpose())).eval();
    const double rho = 1.3;
    double worst = 0.0;
    const RealMatrix x = omega_eigen_update(theta, w, u, rho, 3, [&](double a, double d, double r) {
      worst = std::max(worst, std::abs(a * r * r + d * r - 1.0));
    });
    CHECK(worst < 1e-10);
    const double best = step_a_objective(theta, w - u, 3 * rho, x);
    for (int probe = 0; probe < 100; ++probe) {
      RealMatrix d = oracle::random_real(gen, 3, 3);
      const RealMatrix y = x + 0.05 * (d + d.transpose());
      if (Eigen::SelfAdjointEigenSolver<RealMatrix>(y).eigenvalues().minCoeff() <= 0.0) continue;
      CHECK(step_a_objective(theta, w - u, 3 * rho, y) >= best - 1e-12);
    }
  }
}

TEST_CASE("omega_w_update") {
  RealMatrix om(2, 2);
  om << 1.0, 0.5, 0.5, 2.0;
  const RealMatrix zero = RealMatrix::Zero(2, 2);
  const RealMatrix w = omega_w_update(om, zero, 0.2, 1.0);
  CHECK(w(0, 1) == doctest::Approx(0.3));
  CHECK(w(1, 0) == doctest::Approx(0.3));
  CHECK(w(0, 0) == 1.0);
  CHECK(w(1, 1) == 2.0);
  CHECK(omega_w_update(om, zero, 0.0, 1.0) == om);
  CHECK(omega_w_update(om, zero, 1.0, 1.0)(0, 1) == 0.0);
  RealMatrix u = RealMatrix::Constant(2, 2, 0.1);
  CHECK((omega_w_update(om, u, 0.0, 1.0) - (om + u)).norm() == 0.0);
}

TEST_CASE("solve_omega scalar MLE, saturation and oracle agreement") {
  const auto scalar = solve_omega(RealMatrix::Constant(1, 1, 4.0), 0.0, tight());
  CHECK(scalar.omega.omega(0, 0) == doctest::Approx(0.25).epsilon(1e-8));

  std::mt19937_64 gen(32);
  const RealMatrix theta = oracle::random_spd(gen, 5);
  const auto sat = solve_omega(theta, 1e3, AdmmConfig{});
  CHECK(sat.w.isDiagonal(0.0));

  for (int trial = 0; trial < 6; ++trial) {
    const int p = 2 + trial % 2;
    oracle::LassoProblem pb{oracle::random_spd(gen, p), 0.05 + 0.02 * trial};
    const auto sol = solve_omega(pb.theta, pb.lambda, tight());
    const double ours = omega_objective(pb.theta, sol.omega.omega, pb.lambda);
    const double theirs = pb.value(oracle::prox_gradient(pb));
    CHECK(ours == doctest::Approx(pb.value(sol.omega.omega)).epsilon(1e-12));
    CHECK(std::abs(ours - theirs) <= 1e-5 * std::abs(theirs));
  }
}

TEST_CASE("solve_omega invariants: symmetry, warm/cold agreement, permutation") {
  std::mt19937_64 gen(33);
  const RealMatrix theta = oracle::random_spd(gen, 4);
  const double lambda = 0.05;
  const auto cold = solve_omega(theta, lambda, tight());
  CHECK((cold.omega.omega - cold.omega.omega.transpose()).norm() == 0.0);
  CHECK((cold.w - cold.w.transpose()).norm() == 0.0);
  const auto warm = solve_omega(theta, lambda, tight(), OmegaEstimate{3.0 * RealMatrix::Identity(4, 4)});
  CHECK((warm.omega.omega - cold.omega.omega).norm() < 1e-4);

  Eigen::PermutationMatrix<Eigen::Dynamic> perm(4);
  perm.indices() << 2, 0, 3, 1;
  const RealMatrix permuted = perm * theta * perm.transpose();
  const auto sol_p = solve_omega(permuted, lambda, tight());
  CHECK((sol_p.omega.omega - perm * cold.omega.omega * perm.transpose()).norm() < 1e-6);
}

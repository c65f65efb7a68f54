#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace matgraph {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

class LinalgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigenvalues in ascending order with orthonormal (unitary) eigenvectors as columns.
template <typename MatrixT>
struct EigenPair {
  RealVector values;
  MatrixT vectors;
};

/// Relative floor below which an eigenvalue is not considered positive.
inline constexpr double kPdTolerance = 1e-12;

[[nodiscard]] EigenPair<RealMatrix> sym_eig(const RealMatrix& a);
[[nodiscard]] EigenPair<ComplexMatrix> herm_eig(const ComplexMatrix& a);

/// Sum of log-eigenvalues. Throws LinalgError naming the minimum eigenvalue
/// when the matrix is not positive definite.
[[nodiscard]] double log_det_pd(const RealMatrix& a);
[[nodiscard]] double log_det_pd(const ComplexMatrix& a);

/// S_F(b, beta) = (1 - beta/|b|)_+ b, with S_F(0, beta) = 0.
[[nodiscard]] Complex soft_threshold(Complex b, double beta);
[[nodiscard]] double soft_threshold(double b, double beta);

/// Symmetric square root F~ of a PD matrix (F~ F~ = A) together with its inverse.
struct PdSquareRoot {
  RealMatrix root;
  RealMatrix inverse_root;
};
[[nodiscard]] PdSquareRoot sqrt_pd(const RealMatrix& a);

[[nodiscard]] RealMatrix inverse_pd(const RealMatrix& a);
[[nodiscard]] ComplexMatrix inverse_pd(const ComplexMatrix& a);

[[nodiscard]] RealMatrix symmetrize(const RealMatrix& a);
[[nodiscard]] ComplexMatrix hermitize(const ComplexMatrix& a);

/// The unique positive root of a*x^2 + b*x - 1 = 0 for a > 0, computed
/// without cancellation for either sign of b.
[[nodiscard]] double positive_quadratic_root(double a, double b);

}  // namespace matgraph

#include "matgraph/linalg.hpp"

#include <cmath>
#include <sstream>

namespace matgraph {
namespace {

template <typename MatrixT>
void require_square_finite(const MatrixT& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    std::ostringstream msg;
    msg << what << ": expected a non-empty square matrix, got " << a.rows() << "x" << a.cols();
    throw LinalgError(msg.str());
  }
  if (!a.allFinite()) {
    throw LinalgError(std::string(what) + ": matrix has non-finite entries");
  }
}

template <typename MatrixT>
EigenPair<MatrixT> self_adjoint_eig(const MatrixT& a, const char* what) {
  require_square_finite(a, what);
  Eigen::SelfAdjointEigenSolver<MatrixT> solver(a, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw LinalgError(std::string(what) + ": eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

void require_pd(const RealVector& values, const char* what) {
  const double top = values.maxCoeff();
  const double bottom = values.minCoeff();
  if (!(top > 0.0) || bottom <= kPdTolerance * top) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << ": matrix is not positive definite (minimum eigenvalue " << bottom
        << ", maximum " << top << ")";
    throw LinalgError(msg.str());
  }
}

}  // namespace

EigenPair<RealMatrix> sym_eig(const RealMatrix& a) { return self_adjoint_eig(a, "sym_eig"); }

EigenPair<ComplexMatrix> herm_eig(const ComplexMatrix& a) {
  return self_adjoint_eig(a, "herm_eig");
}

double log_det_pd(const RealMatrix& a) {
  const auto eig = self_adjoint_eig(a, "log_det_pd");
  require_pd(eig.values, "log_det_pd");
  return eig.values.array().log().sum();
}

double log_det_pd(const ComplexMatrix& a) {
  const auto eig = self_adjoint_eig(a, "log_det_pd");
  require_pd(eig.values, "log_det_pd");
  return eig.values.array().log().sum();
}

Complex soft_threshold(Complex b, double beta) {
  const double magnitude = std::abs(b);
  if (magnitude <= beta || magnitude == 0.0) return {0.0, 0.0};
  return (1.0 - beta / magnitude) * b;
}

double soft_threshold(double b, double beta) {
  const double magnitude = std::abs(b);
  if (magnitude <= beta) return 0.0;
  return b > 0.0 ? b - beta : b + beta;
}

PdSquareRoot sqrt_pd(const RealMatrix& a) {
  const auto eig = sym_eig(a);
  require_pd(eig.values, "sqrt_pd");
  const RealVector roots = eig.values.array().sqrt();
  PdSquareRoot out;
  out.root = symmetrize(eig.vectors * roots.asDiagonal() * eig.vectors.transpose());
  out.inverse_root =
      symmetrize(eig.vectors * roots.cwiseInverse().asDiagonal() * eig.vectors.transpose());
  return out;
}

RealMatrix inverse_pd(const RealMatrix& a) {
  const auto eig = sym_eig(a);
  require_pd(eig.values, "inverse_pd");
  return symmetrize(eig.vectors * eig.values.cwiseInverse().asDiagonal() *
                    eig.vectors.transpose());
}

ComplexMatrix inverse_pd(const ComplexMatrix& a) {
  const auto eig = herm_eig(a);
  require_pd(eig.values, "inverse_pd");
  return hermitize(eig.vectors * eig.values.cwiseInverse().asDiagonal() *
                   eig.vectors.adjoint());
}

RealMatrix symmetrize(const RealMatrix& a) {
  RealMatrix out = 0.5 * (a + a.transpose());
  return out;
}

ComplexMatrix hermitize(const ComplexMatrix& a) {
  ComplexMatrix out = 0.5 * (a + a.adjoint());
  for (Eigen::Index i = 0; i < out.rows(); ++i) out(i, i) = Complex(out(i, i).real(), 0.0);
  return out;
}

double positive_quadratic_root(double a, double b) {
  const double disc = std::sqrt(b * b + 4.0 * a);
  if (b > 0.0) return 2.0 / (b + disc);
  return (disc - b) / (2.0 * a);
}

}  // namespace matgraph

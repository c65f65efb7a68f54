#include "matgraph/estimates.hpp"

#include <cmath>

namespace matgraph {

double stacked_norm(const std::vector<ComplexMatrix>& blocks) {
  double sq = 0.0;
  for (const auto& b : blocks) sq += b.squaredNorm();
  return std::sqrt(sq);
}

double GammaEstimate::frobenius_norm() const { return stacked_norm(phi); }

GammaEstimate GammaEstimate::identity(int q, int windows) {
  GammaEstimate g;
  g.phi.assign(static_cast<std::size_t>(windows), ComplexMatrix::Identity(q, q));
  return g;
}

OmegaEstimate OmegaEstimate::identity(int p) { return {RealMatrix::Identity(p, p)}; }

}  // namespace matgraph

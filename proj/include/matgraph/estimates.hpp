#pragma once

#include <vector>

#include "matgraph/linalg.hpp"

namespace matgraph {

/// Inverse-PSD factors Phi_1..Phi_M at the window centers; Gamma = [Phi_1 ... Phi_M].
struct GammaEstimate {
  std::vector<ComplexMatrix> phi;

  [[nodiscard]] int windows() const { return static_cast<int>(phi.size()); }
  [[nodiscard]] int dim() const { return phi.empty() ? 0 : static_cast<int>(phi.front().rows()); }

  /// ||Gamma||_F over the concatenation.
  [[nodiscard]] double frobenius_norm() const;

  /// Gamma with every Phi_k equal to I_q.
  [[nodiscard]] static GammaEstimate identity(int q, int windows);
};

/// Row-precision factor Omega (real symmetric PD).
struct OmegaEstimate {
  RealMatrix omega;

  [[nodiscard]] int dim() const { return static_cast<int>(omega.rows()); }
  [[nodiscard]] static OmegaEstimate identity(int p);
};

/// Frobenius norm of a concatenation of equally sized blocks.
[[nodiscard]] double stacked_norm(const std::vector<ComplexMatrix>& blocks);

}  // namespace matgraph

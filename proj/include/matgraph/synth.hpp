#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "matgraph/graph.hpp"
#include "matgraph/linalg.hpp"
#include "matgraph/random.hpp"
#include "matgraph/spectral.hpp"

namespace matgraph {

enum class Noise { gaussian, exponential, uniform };

[[nodiscard]] std::string to_string(Noise noise);
/// Throws std::invalid_argument for unknown names.
[[nodiscard]] Noise parse_noise(const std::string& name);

struct SynthConfig {
  int p = 15;
  int blocks = 3;
  int block_size = 5;
  int var_order = 3;
  double var_density = 0.05;
  double var_bound = 0.8;
  double max_radius = 0.95;
  int impulse_len = 40;  // L
  double edge_prob = 0.05;
  double omega_low = 0.1;
  double omega_high = 0.4;
  double omega_diag = 0.5;
  double omega_min_eig = 0.5;

  [[nodiscard]] int q() const { return blocks * block_size; }
  void validate() const;
};

class SynthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// VAR coefficients A_1..A_order of one block.
using VarCoefficients = std::vector<RealMatrix>;

/// Spectral radius of the block companion matrix.
[[nodiscard]] double companion_radius(const VarCoefficients& a);

/// One stable VAR block per diagonal block, redrawn until the companion
/// radius is at most max_radius (SynthError after 1000 consecutive failures).
[[nodiscard]] std::vector<VarCoefficients> gen_var_blocks(Rng& rng, const SynthConfig& config);

/// H_0..H_L with H_i = sum_k A_k H_{i-k} + I delta_i.
[[nodiscard]] std::vector<RealMatrix> impulse_response(const VarCoefficients& a, int impulse_len);

struct OmegaDraw {
  RealMatrix omega;
  RealMatrix f;  // F = (Omega^{1/2})^{-1}
};
[[nodiscard]] OmegaDraw gen_omega(Rng& rng, const SynthConfig& config);

struct GroundTruth {
  std::vector<RealMatrix> b;  // B_0..B_L, q x q
  RealMatrix f;
  RealMatrix sigma;
  RealMatrix omega;

  [[nodiscard]] int p() const { return static_cast<int>(f.rows()); }
  [[nodiscard]] int q() const { return static_cast<int>(b.front().rows()); }

  /// Psi(tau) = sum_i B_i B_{i-tau}^T.
  [[nodiscard]] RealMatrix psi(int tau) const;
  /// Sbar(f) = H(f) H(f)^H with H(f) = sum_i B_i exp(-i 2 pi f i).
  [[nodiscard]] ComplexMatrix sbar(double freq) const;
};

[[nodiscard]] GroundTruth make_truth(std::uint64_t seed, const SynthConfig& config = {});

/// Z(t) = sum_{i=0}^{L} F E(t-i) B_i^T with E(t), t = -L..n-1, drawn entrywise
/// in column-major order from the zero-mean unit-variance family.
[[nodiscard]] MatrixSeries generate_series(const GroundTruth& truth, int n, std::uint64_t seed,
                                           Noise noise = Noise::gaussian);

/// Off-diagonal support of the true Omega.
[[nodiscard]] EdgeSet true_row_edges(const GroundTruth& truth);
/// Pairs with max_f |[Sbar^{-1}(f)]_ij| > rel_tol * global max over a uniform
/// grid of `grid` frequencies on [0, 0.5].
[[nodiscard]] EdgeSet true_col_edges(const GroundTruth& truth, int grid = 256,
                                     double rel_tol = 1e-8);

}  // namespace matgraph

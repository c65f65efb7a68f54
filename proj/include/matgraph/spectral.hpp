#pragma once

#include <stdexcept>
#include <vector>

#include "matgraph/estimates.hpp"
#include "matgraph/linalg.hpp"

namespace matgraph {

class SpectralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Observed p x q matrix series Z(0..n-1). All entries finite.
class MatrixSeries {
 public:
  MatrixSeries(int p, int q, std::vector<RealMatrix> frames);

  [[nodiscard]] int p() const { return p_; }
  [[nodiscard]] int q() const { return q_; }
  [[nodiscard]] int n() const { return static_cast<int>(frames_.size()); }
  [[nodiscard]] const RealMatrix& at(int t) const { return frames_[static_cast<std::size_t>(t)]; }
  [[nodiscard]] const std::vector<RealMatrix>& frames() const { return frames_; }

  /// Copy with the last sample dropped when n is odd.
  [[nodiscard]] MatrixSeries even_length() const;
  [[nodiscard]] MatrixSeries scaled(double c) const;

  friend bool operator==(const MatrixSeries& a, const MatrixSeries& b);

 private:
  int p_;
  int q_;
  std::vector<RealMatrix> frames_;
};

/// Window geometry: M windows of K = 2*m_t + 1 consecutive DFT bins. Window k
/// (0-based) is centred on bin k*K + m_t + 1, so all members lie in [1, n/2 - 1].
struct SpectralPlan {
  int n = 0;
  int window_len = 0;  // K
  int half_width = 0;  // m_t
  int windows = 0;     // M

  [[nodiscard]] int center_bin(int k) const { return k * window_len + half_width + 1; }
  [[nodiscard]] double center_frequency(int k) const {
    return static_cast<double>(center_bin(k)) / static_cast<double>(n);
  }
  /// Bin of offset `offset` in [-m_t, m_t] within window k.
  [[nodiscard]] int member_bin(int k, int offset) const { return center_bin(k) + offset; }
};

/// Largest odd K with windows*K <= n/2 - 1.
[[nodiscard]] SpectralPlan plan_windows(int n, int windows);

/// Normalized DFTs D_z(f_m) = n^{-1/2} sum_t Z(t) exp(-i 2 pi m t / n), m = 0..n-1.
struct DftStack {
  int n = 0;
  int p = 0;
  int q = 0;
  std::vector<ComplexMatrix> coeffs;

  [[nodiscard]] const ComplexMatrix& at(int m) const {
    return coeffs[static_cast<std::size_t>(m)];
  }
};

/// FFT path when n has only factors 2, 3 and 5; direct summation otherwise.
/// Rejects odd n.
[[nodiscard]] DftStack dft(const MatrixSeries& series);
[[nodiscard]] DftStack dft_fft(const MatrixSeries& series);
[[nodiscard]] DftStack dft_direct(const MatrixSeries& series);

/// Theta-check = (1/MKq) sum_k sum_l Re{ D Phi_k^* D^H } (p x p, symmetric PSD).
[[nodiscard]] RealMatrix theta_check(const DftStack& dfts, const SpectralPlan& plan,
                                     const GammaEstimate& gamma);

/// Theta-tilde_k = (1/Kp) sum_l D^T Omega D^* (q x q Hermitian PSD), one per window.
[[nodiscard]] std::vector<ComplexMatrix> theta_tilde(const DftStack& dfts,
                                                     const SpectralPlan& plan,
                                                     const RealMatrix& omega);

/// Re tr(A_k) with A_k = (1/Kp) sum_l D^H Omega D Phi_k^*.
[[nodiscard]] double a_trace(const DftStack& dfts, const SpectralPlan& plan,
                             const RealMatrix& omega, const ComplexMatrix& phi, int k);

/// G(Omega, Gamma) = -(1/p) ln|Omega| - (1/Mq) sum_k ln|Phi_k| + (1/Mq) sum_k Re tr(A_k).
[[nodiscard]] double neg_log_like(const DftStack& dfts, const SpectralPlan& plan,
                                  const RealMatrix& omega, const GammaEstimate& gamma);

void check_compatible(const DftStack& dfts, const SpectralPlan& plan);

}  // namespace matgraph

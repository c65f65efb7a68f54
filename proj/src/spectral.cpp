#include "matgraph/spectral.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include <unsupported/Eigen/FFT>

namespace matgraph {
namespace {

bool fft_friendly(int n) {
  for (int f : {2, 3, 5}) {
    while (n % f == 0) n /= f;
  }
  return n == 1;
}

void require_even(const MatrixSeries& series) {
  if (series.n() % 2 != 0) {
    throw SpectralError("dft: series length " + std::to_string(series.n()) +
                        " is odd; truncate to even length first");
  }
}

DftStack empty_stack(const MatrixSeries& series) {
  DftStack out;
  out.n = series.n();
  out.p = series.p();
  out.q = series.q();
  out.coeffs.assign(static_cast<std::size_t>(out.n), ComplexMatrix::Zero(out.p, out.q));
  return out;
}

}  // namespace

MatrixSeries::MatrixSeries(int p, int q, std::vector<RealMatrix> frames)
    : p_(p), q_(q), frames_(std::move(frames)) {
  if (p < 1 || q < 1) throw SpectralError("MatrixSeries: p and q must be positive");
  if (frames_.empty()) throw SpectralError("MatrixSeries: empty series");
  for (std::size_t t = 0; t < frames_.size(); ++t) {
    const auto& z = frames_[t];
    if (z.rows() != p || z.cols() != q) {
      std::ostringstream msg;
      msg << "MatrixSeries: frame " << t << " is " << z.rows() << "x" << z.cols()
          << ", expected " << p << "x" << q;
      throw SpectralError(msg.str());
    }
    if (!z.allFinite()) {
      throw SpectralError("MatrixSeries: frame " + std::to_string(t) + " has non-finite entries");
    }
  }
}

MatrixSeries MatrixSeries::even_length() const {
  if (n() % 2 == 0) return *this;
  if (n() == 1) throw SpectralError("MatrixSeries: cannot truncate a length-1 series");
  std::vector<RealMatrix> kept(frames_.begin(), frames_.end() - 1);
  return {p_, q_, std::move(kept)};
}

MatrixSeries MatrixSeries::scaled(double c) const {
  std::vector<RealMatrix> out;
  out.reserve(frames_.size());
  for (const auto& z : frames_) out.push_back(c * z);
  return {p_, q_, std::move(out)};
}

bool operator==(const MatrixSeries& a, const MatrixSeries& b) {
  if (a.p_ != b.p_ || a.q_ != b.q_ || a.frames_.size() != b.frames_.size()) return false;
  for (std::size_t t = 0; t < a.frames_.size(); ++t) {
    if (a.frames_[t] != b.frames_[t]) return false;
  }
  return true;
}

SpectralPlan plan_windows(int n, int windows) {
  if (n < 2 || n % 2 != 0) {
    throw SpectralError("plan_windows: n must be even and positive, got " + std::to_string(n));
  }
  if (windows < 1) throw SpectralError("plan_windows: need at least one window");
  int k = (n / 2 - 1) / windows;
  if (k % 2 == 0) --k;
  if (k < 1) {
    std::ostringstream msg;
    msg << "plan_windows: n=" << n << " cannot hold " << windows << " windows";
    throw SpectralError(msg.str());
  }
  SpectralPlan plan;
  plan.n = n;
  plan.window_len = k;
  plan.half_width = (k - 1) / 2;
  plan.windows = windows;
  return plan;
}

DftStack dft(const MatrixSeries& series) {
  require_even(series);
  return fft_friendly(series.n()) ? dft_fft(series) : dft_direct(series);
}

DftStack dft_fft(const MatrixSeries& series) {
  require_even(series);
  DftStack out = empty_stack(series);
  const int n = series.n();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  Eigen::FFT<double> fft;
  std::vector<Complex> in(static_cast<std::size_t>(n));
  std::vector<Complex> freq;
  for (int j = 0; j < series.q(); ++j) {
    for (int i = 0; i < series.p(); ++i) {
      for (int t = 0; t < n; ++t) in[static_cast<std::size_t>(t)] = series.at(t)(i, j);
      fft.fwd(freq, in);
      for (int m = 0; m < n; ++m) {
        out.coeffs[static_cast<std::size_t>(m)](i, j) = scale * freq[static_cast<std::size_t>(m)];
      }
    }
  }
  return out;
}

DftStack dft_direct(const MatrixSeries& series) {
  require_even(series);
  DftStack out = empty_stack(series);
  const int n = series.n();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<Complex> twiddle(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
    twiddle[static_cast<std::size_t>(r)] = {std::cos(angle), std::sin(angle)};
  }
  for (int m = 0; m < n; ++m) {
    ComplexMatrix acc = ComplexMatrix::Zero(series.p(), series.q());
    for (int t = 0; t < n; ++t) {
      const auto r = static_cast<std::size_t>((static_cast<long long>(m) * t) % n);
      acc += twiddle[r] * series.at(t).cast<Complex>();
    }
    out.coeffs[static_cast<std::size_t>(m)] = scale * acc;
  }
  return out;
}

void check_compatible(const DftStack& dfts, const SpectralPlan& plan) {
  if (dfts.n != plan.n || static_cast<int>(dfts.coeffs.size()) != dfts.n) {
    std::ostringstream msg;
    msg << "spectral plan for n=" << plan.n << " does not match DFT stack of length " << dfts.n;
    throw SpectralError(msg.str());
  }
  if (plan.windows * plan.window_len > plan.n / 2 - 1 || plan.window_len < 1) {
    throw SpectralError("spectral plan has members outside (0, n/2)");
  }
}

RealMatrix theta_check(const DftStack& dfts, const SpectralPlan& plan,
                       const GammaEstimate& gamma) {
  check_compatible(dfts, plan);
  if (gamma.windows() != plan.windows || gamma.dim() != dfts.q) {
    throw SpectralError("theta_check: Gamma shape does not match the plan");
  }
  RealMatrix acc = RealMatrix::Zero(dfts.p, dfts.p);
  for (int k = 0; k < plan.windows; ++k) {
    const ComplexMatrix phi_conj = gamma.phi[static_cast<std::size_t>(k)].conjugate();
    for (int l = -plan.half_width; l <= plan.half_width; ++l) {
      const ComplexMatrix& d = dfts.at(plan.member_bin(k, l));
      acc += (d * phi_conj * d.adjoint()).real();
    }
  }
  const double norm = static_cast<double>(plan.windows) * plan.window_len * dfts.q;
  return symmetrize(acc / norm);
}

std::vector<ComplexMatrix> theta_tilde(const DftStack& dfts, const SpectralPlan& plan,
                                       const RealMatrix& omega) {
  check_compatible(dfts, plan);
  if (omega.rows() != dfts.p || omega.cols() != dfts.p) {
    throw SpectralError("theta_tilde: Omega shape does not match the data");
  }
  const ComplexMatrix omega_c = omega.cast<Complex>();
  const double norm = static_cast<double>(plan.window_len) * dfts.p;
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(plan.windows));
  for (int k = 0; k < plan.windows; ++k) {
    ComplexMatrix acc = ComplexMatrix::Zero(dfts.q, dfts.q);
    for (int l = -plan.half_width; l <= plan.half_width; ++l) {
      const ComplexMatrix& d = dfts.at(plan.member_bin(k, l));
      acc += d.transpose() * omega_c * d.conjugate();
    }
    out.push_back(hermitize(acc / norm));
  }
  return out;
}

double a_trace(const DftStack& dfts, const SpectralPlan& plan, const RealMatrix& omega,
               const ComplexMatrix& phi, int k) {
  check_compatible(dfts, plan);
  const ComplexMatrix omega_c = omega.cast<Complex>();
  const ComplexMatrix phi_conj = phi.conjugate();
  Complex acc = 0.0;
  for (int l = -plan.half_width; l <= plan.half_width; ++l) {
    const ComplexMatrix& d = dfts.at(plan.member_bin(k, l));
    acc += (d.adjoint() * omega_c * d * phi_conj).trace();
  }
  return acc.real() / (static_cast<double>(plan.window_len) * dfts.p);
}

double neg_log_like(const DftStack& dfts, const SpectralPlan& plan, const RealMatrix& omega,
                    const GammaEstimate& gamma) {
  check_compatible(dfts, plan);
  if (gamma.windows() != plan.windows) {
    throw SpectralError("neg_log_like: Gamma has the wrong number of windows");
  }
  const double p = dfts.p;
  const double mq = static_cast<double>(plan.windows) * dfts.q;
  double value = -log_det_pd(omega) / p;
  for (int k = 0; k < plan.windows; ++k) {
    const auto& phi = gamma.phi[static_cast<std::size_t>(k)];
    value += (-log_det_pd(phi) + a_trace(dfts, plan, omega, phi, k)) / mq;
  }
  return value;
}

}  // namespace matgraph

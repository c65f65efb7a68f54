#include "matgraph/synth.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace matgraph {

std::string to_string(Noise noise) {
  switch (noise) {
    case Noise::gaussian:
      return "gaussian";
    case Noise::exponential:
      return "exponential";
    case Noise::uniform:
      return "uniform";
  }
  return "gaussian";
}

Noise parse_noise(const std::string& name) {
  if (name == "gaussian") return Noise::gaussian;
  if (name == "exponential") return Noise::exponential;
  if (name == "uniform") return Noise::uniform;
  throw std::invalid_argument("unknown noise family '" + name +
                              "' (expected gaussian, exponential or uniform)");
}

void SynthConfig::validate() const {
  if (p < 1 || blocks < 1 || block_size < 1 || var_order < 1 || impulse_len < 0) {
    throw std::invalid_argument("SynthConfig: dimensions must be positive");
  }
  if (var_density < 0.0 || var_density > 1.0 || edge_prob < 0.0 || edge_prob > 1.0) {
    throw std::invalid_argument("SynthConfig: probabilities must lie in [0, 1]");
  }
  if (!(max_radius > 0.0 && max_radius < 1.0)) {
    throw std::invalid_argument("SynthConfig: max_radius must lie in (0, 1)");
  }
  if (!(omega_low >= 0.0 && omega_high >= omega_low) || !(omega_min_eig > 0.0)) {
    throw std::invalid_argument("SynthConfig: invalid Omega ranges");
  }
}

double companion_radius(const VarCoefficients& a) {
  if (a.empty()) return 0.0;
  const auto d = a.front().rows();
  const auto order = static_cast<Eigen::Index>(a.size());
  RealMatrix companion = RealMatrix::Zero(d * order, d * order);
  for (Eigen::Index k = 0; k < order; ++k) companion.block(0, k * d, d, d) = a[static_cast<std::size_t>(k)];
  if (order > 1) companion.block(d, 0, d * (order - 1), d * (order - 1)).setIdentity();
  Eigen::EigenSolver<RealMatrix> solver(companion, false);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

std::vector<VarCoefficients> gen_var_blocks(Rng& rng, const SynthConfig& config) {
  config.validate();
  std::vector<VarCoefficients> out;
  for (int r = 0; r < config.blocks; ++r) {
    int failures = 0;
    while (true) {
      VarCoefficients a;
      for (int k = 0; k < config.var_order; ++k) {
        RealMatrix ak = RealMatrix::Zero(config.block_size, config.block_size);
        for (int j = 0; j < config.block_size; ++j) {
          for (int i = 0; i < config.block_size; ++i) {
            if (rng.bernoulli(config.var_density)) {
              ak(i, j) = rng.uniform(-config.var_bound, config.var_bound);
            }
          }
        }
        a.push_back(std::move(ak));
      }
      if (companion_radius(a) <= config.max_radius) {
        out.push_back(std::move(a));
        break;
      }
      if (++failures >= 1000) {
        throw SynthError("gen_var_blocks: 1000 consecutive unstable VAR draws");
      }
    }
  }
  return out;
}

std::vector<RealMatrix> impulse_response(const VarCoefficients& a, int impulse_len) {
  if (a.empty()) throw std::invalid_argument("impulse_response: no coefficients");
  const auto d = a.front().rows();
  std::vector<RealMatrix> h;
  h.reserve(static_cast<std::size_t>(impulse_len) + 1);
  for (int i = 0; i <= impulse_len; ++i) {
    RealMatrix hi = i == 0 ? RealMatrix(RealMatrix::Identity(d, d)) : RealMatrix(RealMatrix::Zero(d, d));
    for (int k = 1; k <= static_cast<int>(a.size()) && k <= i; ++k) {
      hi += a[static_cast<std::size_t>(k - 1)] * h[static_cast<std::size_t>(i - k)];
    }
    h.push_back(std::move(hi));
  }
  return h;
}

OmegaDraw gen_omega(Rng& rng, const SynthConfig& config) {
  config.validate();
  const int p = config.p;
  RealMatrix bar = config.omega_diag * RealMatrix::Identity(p, p);
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      if (!rng.bernoulli(config.edge_prob)) continue;
      const double magnitude = rng.uniform(config.omega_low, config.omega_high);
      const double value = rng.bernoulli(0.5) ? magnitude : -magnitude;
      bar(i, j) = value;
      bar(j, i) = value;
    }
  }
  const double kappa = config.omega_min_eig - sym_eig(bar).values.minCoeff();
  OmegaDraw out;
  out.omega = bar + kappa * RealMatrix::Identity(p, p);
  out.f = sqrt_pd(out.omega).inverse_root;
  return out;
}

RealMatrix GroundTruth::psi(int tau) const {
  const int len = static_cast<int>(b.size());
  RealMatrix acc = RealMatrix::Zero(q(), q());
  for (int i = 0; i < len; ++i) {
    const int j = i - tau;
    if (j < 0 || j >= len) continue;
    acc += b[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)].transpose();
  }
  return acc;
}

ComplexMatrix GroundTruth::sbar(double freq) const {
  ComplexMatrix h = ComplexMatrix::Zero(q(), q());
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double angle = -2.0 * std::numbers::pi * freq * static_cast<double>(i);
    h += std::polar(1.0, angle) * b[i].cast<Complex>();
  }
  return hermitize(h * h.adjoint());
}

GroundTruth make_truth(std::uint64_t seed, const SynthConfig& config) {
  config.validate();
  Rng rng(seed);
  const auto blocks = gen_var_blocks(rng, config);
  const auto draw = gen_omega(rng, config);

  GroundTruth truth;
  const int q = config.q();
  std::vector<std::vector<RealMatrix>> responses;
  for (const auto& a : blocks) responses.push_back(impulse_response(a, config.impulse_len));
  for (int i = 0; i <= config.impulse_len; ++i) {
    RealMatrix bi = RealMatrix::Zero(q, q);
    for (int r = 0; r < config.blocks; ++r) {
      bi.block(r * config.block_size, r * config.block_size, config.block_size, config.block_size) =
          responses[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)];
    }
    truth.b.push_back(std::move(bi));
  }
  truth.omega = draw.omega;
  truth.f = draw.f;
  truth.sigma = symmetrize(draw.f * draw.f.transpose());
  return truth;
}

MatrixSeries generate_series(const GroundTruth& truth, int n, std::uint64_t seed, Noise noise) {
  if (n < 1) throw std::invalid_argument("generate_series: n must be positive");
  Rng rng(seed);
  const int p = truth.p();
  const int q = truth.q();
  const int lag = static_cast<int>(truth.b.size()) - 1;
  const double root3 = std::sqrt(3.0);
  auto draw = [&]() {
    switch (noise) {
      case Noise::gaussian:
        return rng.normal();
      case Noise::exponential:
        return rng.exponential() - 1.0;
      case Noise::uniform:
        return rng.uniform(-root3, root3);
    }
    return 0.0;
  };
  // shaped[s] = F E(s - L)
  std::vector<RealMatrix> shaped;
  shaped.reserve(static_cast<std::size_t>(n + lag));
  for (int s = 0; s < n + lag; ++s) {
    RealMatrix e(p, q);
    for (int j = 0; j < q; ++j)
      for (int i = 0; i < p; ++i) e(i, j) = draw();
    shaped.push_back(truth.f * e);
  }
  std::vector<RealMatrix> bt;
  for (const auto& bi : truth.b) bt.push_back(bi.transpose());
  std::vector<RealMatrix> frames;
  frames.reserve(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    RealMatrix z = RealMatrix::Zero(p, q);
    for (int i = 0; i <= lag; ++i) {
      z.noalias() += shaped[static_cast<std::size_t>(t + lag - i)] * bt[static_cast<std::size_t>(i)];
    }
    frames.push_back(std::move(z));
  }
  return {p, q, std::move(frames)};
}

EdgeSet true_row_edges(const GroundTruth& truth) { return support_edges(truth.omega); }

EdgeSet true_col_edges(const GroundTruth& truth, int grid, double rel_tol) {
  if (grid < 2) throw std::invalid_argument("true_col_edges: grid needs at least 2 points");
  const int q = truth.q();
  RealMatrix peak = RealMatrix::Zero(q, q);
  for (int g = 0; g < grid; ++g) {
    const double freq = 0.5 * static_cast<double>(g) / static_cast<double>(grid - 1);
    const ComplexMatrix s = truth.sbar(freq);
    const auto eig = herm_eig(s);
    if (!(eig.values.minCoeff() > kPdTolerance * eig.values.maxCoeff())) {
      throw SynthError("true_col_edges: Sbar(f) is numerically singular");
    }
    peak = peak.cwiseMax(inverse_pd(s).cwiseAbs());
  }
  const double cut = rel_tol * peak.maxCoeff();
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j)
      if (peak(i, j) > cut) edges.emplace_back(i, j);
  return {q, std::move(edges)};
}

}  // namespace matgraph

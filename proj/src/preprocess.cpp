#include "matgraph/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "matgraph/io.hpp"

namespace matgraph {

std::vector<double> log_ratio(const std::vector<double>& x) {
  std::vector<double> out;
  for (std::size_t t = 1; t < x.size(); ++t) out.push_back(std::log(x[t] / x[t - 1]));
  return out;
}

std::vector<double> detrend(const std::vector<double>& x) {
  const auto n = static_cast<double>(x.size());
  if (x.size() < 2) return std::vector<double>(x.size(), 0.0);
  const double t_mean = (n - 1.0) / 2.0;
  const double x_mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    const double dt = static_cast<double>(t) - t_mean;
    sxy += dt * (x[t] - x_mean);
    sxx += dt * dt;
  }
  const double slope = sxy / sxx;
  std::vector<double> out(x.size());
  for (std::size_t t = 0; t < x.size(); ++t) {
    out[t] = x[t] - x_mean - slope * (static_cast<double>(t) - t_mean);
  }
  return out;
}

bool unit_mean_square(std::vector<double>& x) {
  if (x.empty()) return false;
  double ms = 0.0, peak = 0.0;
  for (double v : x) {
    ms += v * v;
    peak = std::max(peak, std::abs(v));
  }
  ms /= static_cast<double>(x.size());
  if (peak == 0.0 || std::sqrt(ms) <= 1e-12 * std::max(1.0, peak)) {
    std::fill(x.begin(), x.end(), 0.0);
    return false;
  }
  const double s = 1.0 / std::sqrt(ms);
  for (double& v : x) v *= s;
  return true;
}

int bump_zeros(std::vector<double>& x, double fraction) {
  std::vector<double> pos;
  for (double v : x)
    if (v > 0.0) pos.push_back(v);
  if (pos.empty()) return 0;
  const auto mid = pos.begin() + static_cast<std::ptrdiff_t>(pos.size() / 2);
  std::nth_element(pos.begin(), mid, pos.end());
  double median = *mid;
  if (pos.size() % 2 == 0) median = 0.5 * (median + *std::max_element(pos.begin(), mid));
  int count = 0;
  for (double& v : x) {
    if (v == 0.0) {
      v = fraction * median;
      ++count;
    }
  }
  return count;
}

PreprocessResult preprocess(const std::vector<std::vector<double>>& columns, int p,
                            double zero_fraction) {
  if (p < 1 || columns.empty() || columns.size() % static_cast<std::size_t>(p) != 0) {
    throw InputError("preprocess: column count must be a positive multiple of p");
  }
  const int q = static_cast<int>(columns.size()) / p;
  const std::size_t len = columns.front().size();
  if (len < 3) throw InputError("preprocess: need at least three time points");
  for (const auto& c : columns) {
    if (c.size() != len) throw InputError("preprocess: columns differ in length");
  }
  std::vector<std::pair<int, int>> bumped, bad, degenerate;
  std::vector<std::vector<double>> cleaned;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const int i = static_cast<int>(c) / q;
    const int j = static_cast<int>(c) % q;
    std::vector<double> x = columns[c];
    if (bump_zeros(x, zero_fraction) > 0) bumped.emplace_back(i, j);
    if (std::any_of(x.begin(), x.end(), [](double v) { return !(v > 0.0) || !std::isfinite(v); })) {
      bad.emplace_back(i, j);
    }
    cleaned.push_back(std::move(x));
  }
  if (!bad.empty()) {
    std::string msg = "preprocess: non-positive values after zero bumping in cells";
    for (const auto& [i, j] : bad) msg += " (" + std::to_string(i) + "," + std::to_string(j) + ")";
    throw InputError(msg);
  }
  const std::size_t n = len - 1;
  std::vector<RealMatrix> frames(n, RealMatrix(p, q));
  for (std::size_t c = 0; c < cleaned.size(); ++c) {
    const int i = static_cast<int>(c) / q;
    const int j = static_cast<int>(c) % q;
    std::vector<double> y = detrend(log_ratio(cleaned[c]));
    if (!unit_mean_square(y)) degenerate.emplace_back(i, j);
    for (std::size_t t = 0; t < n; ++t) frames[t](i, j) = y[t];
  }
  return {MatrixSeries(p, q, std::move(frames)), std::move(degenerate), std::move(bumped)};
}

}  // namespace matgraph

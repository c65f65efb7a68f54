#pragma once

#include <string>
#include <utility>
#include <vector>

#include "matgraph/spectral.hpp"

namespace matgraph {

/// x(t) -> ln(x(t) / x(t-1)), t = 1..n-1.
[[nodiscard]] std::vector<double> log_ratio(const std::vector<double>& x);

/// Residual of the least-squares straight line against t = 0..n-1.
[[nodiscard]] std::vector<double> detrend(const std::vector<double>& x);

/// Scales x to unit mean square. Returns false, leaving zeros, when x is
/// numerically zero.
bool unit_mean_square(std::vector<double>& x);

/// Zero entries become `fraction` times the median of the positive entries.
/// Returns the number of replaced entries.
int bump_zeros(std::vector<double>& x, double fraction = 1e-6);

struct PreprocessResult {
  MatrixSeries series;
  std::vector<std::pair<int, int>> degenerate;  // (row, col) cells emitted as zeros
  std::vector<std::pair<int, int>> bumped;      // cells that had zeros replaced
};

/// Per-cell log-ratio, detrend and unit mean square. Column c of `columns`
/// feeds cell (c / q, c % q) with q = columns.size() / p. Throws InputError
/// listing the cells that still hold non-positive values after zero bumping.
[[nodiscard]] PreprocessResult preprocess(const std::vector<std::vector<double>>& columns, int p,
                                          double zero_fraction = 1e-6);

}  // namespace matgraph

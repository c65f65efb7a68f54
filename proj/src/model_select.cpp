#include "matgraph/model_select.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "matgraph/graph.hpp"
#include "matgraph/parallel.hpp"

namespace matgraph {

std::string to_string(BicForm form) { return form == BicForm::scaled_trace ? "scaled_trace" : "likelihood"; }

BicForm parse_bic_form(const std::string& name) {
  if (name == "scaled_trace") return BicForm::scaled_trace;
  if (name == "likelihood") return BicForm::likelihood;
  throw std::invalid_argument("unknown BIC form '" + name + "' (expected scaled_trace or likelihood)");
}

BicScore bic(const FitResult& fit, const Statistics& stats, int window_len, BicForm form) {
  const int p = stats.p();
  const int q = stats.q();
  const int m = stats.windows();
  if (window_len < 1) throw std::invalid_argument("bic: window length must be positive");
  if (fit.gamma.windows() != m || fit.omega.dim() != p) {
    throw std::invalid_argument("bic: fit does not match the statistics");
  }
  const double k = window_len;
  const auto tilde = stats.theta_tilde(fit.omega.omega);
  const double trace_weight = form == BicForm::scaled_trace ? 1.0 / p : 1.0;

  BicScore out;
  out.data_term = -2.0 * k * m * q * log_det_pd(fit.omega.omega);
  for (int w = 0; w < m; ++w) {
    const auto& phi = fit.gamma.phi[static_cast<std::size_t>(w)];
    const double a_trace = (tilde[static_cast<std::size_t>(w)] * phi).trace().real();
    out.data_term += 2.0 * k * p * (-log_det_pd(phi) + trace_weight * a_trace);
  }
  out.omega_nonzeros = (fit.omega_split.array() != 0.0).count();
  for (const auto& w : fit.gamma_split) {
    out.gamma_nonzeros += (w.array() != Complex(0.0, 0.0)).count();
  }
  out.complexity_term = std::log(2.0 * k * m) *
                        (static_cast<double>(out.omega_nonzeros) / 2.0 +
                         static_cast<double>(out.gamma_nonzeros));
  out.value = out.data_term + out.complexity_term;
  return out;
}

double find_threshold(const std::function<bool(double)>& is_empty, double seed, int bisections) {
  if (!(seed > 0.0)) throw std::invalid_argument("find_threshold: seed must be positive");
  double hi = seed;
  int doublings = 0;
  while (!is_empty(hi)) {
    if (++doublings > 60) {
      throw std::runtime_error("no-edge lambda search did not saturate after 60 doublings");
    }
    hi *= 2.0;
  }
  if (doublings == 0) return hi;
  double lo = hi / 2.0;
  for (int i = 0; i < bisections; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (is_empty(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double find_no_edge_lambda(const Statistics& stats, Axis axis, double other_lambda,
                           const FlipFlopConfig& base) {
  auto is_empty = [&](double lambda) {
    FlipFlopConfig config = base;
    if (axis == Axis::p) {
      config.lambda_p = lambda;
      config.lambda_q = other_lambda;
    } else {
      config.lambda_q = lambda;
      config.lambda_p = other_lambda;
    }
    const FitResult result = fit(stats, config);
    return axis == Axis::p ? support_edges(result.omega_split).size() == 0
                           : group_edges(result.gamma_split).size() == 0;
  };
  return find_threshold(is_empty);
}

std::vector<double> log_space(double lower, double upper, int points) {
  if (!(lower > 0.0) || !(upper >= lower) || points < 1) {
    throw std::invalid_argument("log_space: need 0 < lower <= upper and points >= 1");
  }
  if (points == 1) return {upper};
  std::vector<double> out;
  const double step = std::log(upper / lower) / (points - 1);
  for (int i = 0; i < points; ++i) out.push_back(lower * std::exp(step * i));
  out.back() = upper;
  return out;
}

LambdaGrid LambdaGrid::from_no_edge(double lambda_p_sm, double lambda_q_sm, int points) {
  LambdaGrid grid;
  grid.lambda_p = log_space(lambda_p_sm / 20.0, lambda_p_sm / 2.0, points);
  grid.lambda_q = log_space(lambda_q_sm / 20.0, lambda_q_sm / 2.0, points);
  return grid;
}

void LambdaGrid::validate() const {
  if (lambda_p.empty() || lambda_q.empty()) throw std::invalid_argument("LambdaGrid: empty axis");
  for (double v : lambda_p)
    if (!(v >= 0.0)) throw std::invalid_argument("LambdaGrid: negative lambda_p");
  for (double v : lambda_q)
    if (!(v >= 0.0)) throw std::invalid_argument("LambdaGrid: negative lambda_q");
}

std::size_t best_cell(const std::vector<GridCell>& cells) {
  const std::size_t count = cells.size();
  bool any_converged = false;
  for (const auto& c : cells) any_converged = any_converged || (c.ok && c.converged);
  std::size_t best = count;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& c = cells[i];
    if (!c.ok || (any_converged && !c.converged)) continue;
    if (best == count) {
      best = i;
      continue;
    }
    const auto& b = cells[best];
    if (std::make_tuple(c.score.value, -c.lambda_p, -c.lambda_q) <
        std::make_tuple(b.score.value, -b.lambda_p, -b.lambda_q)) {
      best = i;
    }
  }
  if (best == count) throw std::runtime_error("grid_search: every grid cell failed");
  return best;
}

GridResult grid_search(const Statistics& stats, int window_len, const LambdaGrid& grid,
                       const FlipFlopConfig& base, BicForm form, int threads) {
  grid.validate();
  const std::size_t nq = grid.lambda_q.size();
  const std::size_t count = grid.lambda_p.size() * nq;
  std::vector<GridCell> cells(count);
  std::vector<FitResult> fits(count);
  parallel_for(count, threads, [&](std::size_t idx) {
    GridCell& cell = cells[idx];
    cell.lambda_p = grid.lambda_p[idx / nq];
    cell.lambda_q = grid.lambda_q[idx % nq];
    FlipFlopConfig config = base;
    config.lambda_p = cell.lambda_p;
    config.lambda_q = cell.lambda_q;
    try {
      fits[idx] = fit(stats, config);
      cell.score = bic(fits[idx], stats, window_len, form);
      cell.score.lambda_p = cell.lambda_p;
      cell.score.lambda_q = cell.lambda_q;
      cell.converged = fits[idx].inner_converged();
      cell.ok = std::isfinite(cell.score.value);
      if (!cell.ok) cell.error = "non-finite BIC";
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
  });

  const std::size_t best = best_cell(cells);
  GridResult out;
  out.best = best;
  out.best_fit = std::move(fits[best]);
  out.cells = std::move(cells);
  return out;
}

SelectionResult select_bic(const Statistics& stats, int window_len, const FlipFlopConfig& base,
                           int points, BicForm form, int threads) {
  SelectionResult out;
  out.lambda_p_sm = find_no_edge_lambda(stats, Axis::p, 0.0, base);
  out.lambda_q_sm = find_no_edge_lambda(stats, Axis::q, 0.0, base);
  out.grid = LambdaGrid::from_no_edge(out.lambda_p_sm, out.lambda_q_sm, points);
  out.search = grid_search(stats, window_len, out.grid, base, form, threads);
  return out;
}

}  // namespace matgraph

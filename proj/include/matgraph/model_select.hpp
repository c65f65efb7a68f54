#pragma once

#include <functional>
#include <string>
#include <vector>

#include "matgraph/flipflop.hpp"

namespace matgraph {

/// Which data term the BIC uses. `scaled_trace` weights Re tr(A_k) by an extra
/// 1/p inside 2Kp(...); `likelihood` uses 2KMpq * G so the
/// data term is the scaled negative log-likelihood.
enum class BicForm { scaled_trace, likelihood };

[[nodiscard]] std::string to_string(BicForm form);
[[nodiscard]] BicForm parse_bic_form(const std::string& name);

struct BicScore {
  double value = 0.0;
  double data_term = 0.0;
  double complexity_term = 0.0;
  long omega_nonzeros = 0;  // all nonzero entries of W-bar, diagonal included
  long gamma_nonzeros = 0;  // sum_k nonzero entries of W_k, diagonal included
  double lambda_p = 0.0;
  double lambda_q = 0.0;
};

/// BIC at a fitted model. `window_len` is K.
[[nodiscard]] BicScore bic(const FitResult& fit, const Statistics& stats, int window_len,
                           BicForm form = BicForm::likelihood);

/// Smallest lambda for which `is_empty(lambda)` holds: geometric doubling from
/// `seed` until the predicate holds, then `bisections` bisection steps on the
/// last bracket. Throws std::runtime_error when 60 doublings do not saturate.
[[nodiscard]] double find_threshold(const std::function<bool(double)>& is_empty,
                                    double seed = 1e-4, int bisections = 10);

enum class Axis { p, q };

/// Smallest lambda on one axis giving a no-edge model for that factor, with
/// the other lambda held at `other_lambda`.
[[nodiscard]] double find_no_edge_lambda(const Statistics& stats, Axis axis, double other_lambda,
                                         const FlipFlopConfig& base);

/// `points` log-spaced values from `lower` to `upper` (inclusive), ascending.
[[nodiscard]] std::vector<double> log_space(double lower, double upper, int points);

struct LambdaGrid {
  std::vector<double> lambda_p;
  std::vector<double> lambda_q;

  /// [sm/2/10, sm/2] on each axis with `points` log-spaced values.
  [[nodiscard]] static LambdaGrid from_no_edge(double lambda_p_sm, double lambda_q_sm,
                                               int points = 10);
  void validate() const;
};

struct GridCell {
  double lambda_p = 0.0;
  double lambda_q = 0.0;
  bool ok = false;
  bool converged = false;
  BicScore score;
  std::string error;
};

struct GridResult {
  std::size_t best = 0;
  FitResult best_fit;
  std::vector<GridCell> cells;  // lambda_p major, lambda_q minor
};

/// Index of the lowest-BIC usable cell. Cells whose inner solves converged win
/// over the rest when any exists; ties go to the larger (lambda_p, lambda_q).
/// Throws std::runtime_error when no cell is usable.
[[nodiscard]] std::size_t best_cell(const std::vector<GridCell>& cells);

/// Fits every cell and returns the BIC minimizer. Converged cells are preferred
/// when any exists; ties go to the sparser (larger lambda) cell.
[[nodiscard]] GridResult grid_search(const Statistics& stats, int window_len,
                                     const LambdaGrid& grid, const FlipFlopConfig& base,
                                     BicForm form = BicForm::likelihood, int threads = 1);

/// Full automatic selection: no-edge search on both axes, then grid_search.
struct SelectionResult {
  double lambda_p_sm = 0.0;
  double lambda_q_sm = 0.0;
  LambdaGrid grid;
  GridResult search;
};
[[nodiscard]] SelectionResult select_bic(const Statistics& stats, int window_len,
                                         const FlipFlopConfig& base, int points = 10,
                                         BicForm form = BicForm::likelihood, int threads = 1);

}  // namespace matgraph

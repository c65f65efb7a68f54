#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "matgraph/baseline_iid.hpp"
#include "matgraph/flipflop.hpp"
#include "matgraph/graph.hpp"
#include "matgraph/model_select.hpp"
#include "matgraph/synth.hpp"

namespace matgraph {

struct Confusion {
  long tp = 0;
  long fp = 0;
  long tn = 0;
  long fn = 0;

  [[nodiscard]] long total() const { return tp + fp + tn + fn; }
  [[nodiscard]] double tpr() const;
  [[nodiscard]] double tnr() const;
  [[nodiscard]] double fpr() const { return 1.0 - tnr(); }
  /// 2TP / (2TP + FP + FN); 1 when both graphs are empty.
  [[nodiscard]] double f1() const;
};

/// Counts over all unordered off-diagonal pairs.
[[nodiscard]] Confusion confusion(const EdgeSet& estimate, const EdgeSet& truth);

enum class Scope { omega, gamma, combined };
[[nodiscard]] std::string to_string(Scope scope);

struct TrueGraph {
  EdgeSet omega;
  EdgeSet gamma;
  EdgeSet combined;
};
[[nodiscard]] TrueGraph true_graph(const GroundTruth& truth);

struct ScopedConfusion {
  Confusion omega;
  Confusion gamma;
  Confusion combined;

  [[nodiscard]] const Confusion& at(Scope scope) const;
};
[[nodiscard]] ScopedConfusion score(const EdgeSet& omega, const EdgeSet& gamma,
                                    const TrueGraph& truth);

enum class Estimator { proposed, baseline };
enum class Selection { bic, oracle_f1 };
[[nodiscard]] std::string to_string(Estimator estimator);
[[nodiscard]] std::string to_string(Selection selection);
[[nodiscard]] Estimator parse_estimator(const std::string& name);
[[nodiscard]] Selection parse_selection(const std::string& name);

struct Scenario {
  int n = 256;
  int windows = 4;
  int runs = 20;
  std::uint64_t seed = 1;
  Estimator estimator = Estimator::proposed;
  Selection selection = Selection::bic;
  Noise noise = Noise::gaussian;
  SynthConfig synth;
  FlipFlopConfig flipflop;
  BicForm bic_form = BicForm::likelihood;
  int grid_points = 10;
  /// Oracle-F1 grids span [sm * oracle_low, sm * oracle_high] on each axis.
  double oracle_low = 1e-2;
  double oracle_high = 1.0;
  int threads = 1;

  void validate() const;
};

/// Seeds: truth from derive_seed(seed, run, 0), data from derive_seed(seed, run, 1).
[[nodiscard]] std::uint64_t truth_seed(std::uint64_t master, int run);
[[nodiscard]] std::uint64_t data_seed(std::uint64_t master, int run);

struct RunOutcome {
  int run = 0;
  bool ok = false;
  std::string error;
  double lambda_p = 0.0;
  double lambda_q = 0.0;
  ScopedConfusion confusion;
  double seconds = 0.0;      // whole selection pipeline for this run
  double fit_seconds = 0.0;  // the single fit at the selected lambdas
};

struct Moments {
  double mean = 0.0;
  double sd = 0.0;
};
[[nodiscard]] Moments moments(const std::vector<double>& values);

struct McSummary {
  std::vector<RunOutcome> runs;
  int failures = 0;
  Moments f1;
  Moments tpr;
  Moments fpr;
  Moments seconds;
  Moments fit_seconds;
};

[[nodiscard]] RunOutcome run_once(const Scenario& scenario, int run);
[[nodiscard]] McSummary monte_carlo(const Scenario& scenario);

/// Edge sets of one estimator at fixed lambdas; used by sweeps.
struct EstimatedGraph {
  EdgeSet omega;
  EdgeSet gamma;
};
[[nodiscard]] EstimatedGraph estimate_edges(Estimator estimator, const MatrixSeries& series,
                                            const SpectralPlan& plan, const DftStack& dfts,
                                            double lambda_p, double lambda_q,
                                            const FlipFlopConfig& base);

/// Smallest no-edge lambda per axis (other lambda held at 0).
struct NoEdgeLambdas {
  double lambda_p = 0.0;
  double lambda_q = 0.0;
};
[[nodiscard]] NoEdgeLambdas no_edge_lambdas(Estimator estimator, const MatrixSeries& series,
                                            const SpectralPlan& plan, const DftStack& dfts,
                                            const FlipFlopConfig& base);

struct RocPoint {
  double lambda_p = 0.0;
  double lambda_q = 0.0;
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocCurves {
  std::vector<RocPoint> omega;
  std::vector<RocPoint> gamma;
  std::vector<RocPoint> combined;

  [[nodiscard]] const std::vector<RocPoint>& at(Scope scope) const;
};

/// Paired lambda path: cell i fits (lambda_p[i], lambda_q[i]). Each scope's
/// points are averaged over `runs` replicates and sorted by FPR.
[[nodiscard]] RocCurves roc_sweep(const Scenario& scenario, const std::vector<double>& lambda_p,
                                  const std::vector<double>& lambda_q);

/// Default sweep path: 0, then log-spaced from sm*1e-3 to sm*2, then sm*1e4.
[[nodiscard]] std::vector<double> roc_path(double no_edge_lambda, int points = 24);

/// Scenario-driven sweep whose path is derived from the first replicate's no-edge lambdas.
[[nodiscard]] RocCurves roc(const Scenario& scenario, int points = 24);

/// Trapezoid area over points sorted by FPR.
[[nodiscard]] double roc_auc(const std::vector<RocPoint>& points);

struct RateRow {
  int n = 0;
  int windows = 0;
  int window_len = 0;
  std::vector<double> errors;  // one per run
  double mean_error = 0.0;
};

struct RateTable {
  std::vector<RateRow> rows;
  double slope = 0.0;        // least squares of log mean error on log n
  double monotone_share = 0.0;  // share of runs whose error strictly decreases along n
};

/// M(n) = max(1, round(n^0.25)); lambdas lambda_p = c sqrt(ln p / (M K q)),
/// lambda_q = c sqrt(ln q / (K p)). Error per run: ||Gamma-hat - Gamma*||_F +
/// ||Omega-hat - Omega*||_F after normalizing each to unit Frobenius norm, where
/// Gamma* stacks Sbar^{-1} at the window centers.
[[nodiscard]] int rate_windows(int n);
[[nodiscard]] RateTable rate_check(const std::vector<int>& n_list, int runs, std::uint64_t seed,
                                   const SynthConfig& synth = {}, double c = 0.5,
                                   const FlipFlopConfig& base = {});

/// ADMM settings used where solver error must sit far below a test tolerance.
[[nodiscard]] AdmmConfig tight_admm();

struct Theorem1Report {
  double phi_residual = 0.0;      // min_c sum ||Phi_k - c Phi*_k|| / sum ||Phi*_k||
  double omega_residual = 0.0;    // min_c ||Omega - c Omega*|| / ||Omega*||
  double product_residual = 0.0;  // max_k relative error of normalized Phi_k (x) Omega
  int outer_iterations = 0;
  double seconds = 0.0;
};

/// Unpenalized flip-flop on the exact expected statistics at the window centers of plan_windows(n, windows).
[[nodiscard]] Theorem1Report theorem1_check(const GroundTruth& truth, int windows, int n = 256,
                                            const AdmmConfig& admm = tight_admm());

}  // namespace matgraph

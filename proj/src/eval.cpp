#include "matgraph/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "matgraph/parallel.hpp"

namespace matgraph {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Instance {
  GroundTruth truth;
  MatrixSeries series;
  SpectralPlan plan;
  DftStack dfts;
};

Instance make_instance(const Scenario& s, int run) {
  GroundTruth truth = make_truth(truth_seed(s.seed, run), s.synth);
  MatrixSeries series = generate_series(truth, s.n, data_seed(s.seed, run), s.noise).even_length();
  SpectralPlan plan = plan_windows(series.n(), s.windows);
  DftStack dfts = dft(series);
  return {std::move(truth), std::move(series), plan, std::move(dfts)};
}

IidConfig iid_config(const FlipFlopConfig& base, double lambda_p, double lambda_q) {
  IidConfig c;
  c.lambda_p = lambda_p;
  c.lambda_q = lambda_q;
  c.m_max = base.m_max;
  c.tau_ff = base.tau_ff;
  c.admm = base.admm;
  return c;
}

}  // namespace

double Confusion::tpr() const {
  return tp + fn == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
}

double Confusion::tnr() const {
  return tn + fp == 0 ? 1.0 : static_cast<double>(tn) / static_cast<double>(tn + fp);
}

double Confusion::f1() const {
  const long denom = 2 * tp + fp + fn;
  return denom == 0 ? 1.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

Confusion confusion(const EdgeSet& estimate, const EdgeSet& truth) {
  if (estimate.nodes() != truth.nodes()) {
    throw std::invalid_argument("confusion: graphs have different node counts");
  }
  Confusion c;
  const long nodes = truth.nodes();
  const long pairs = nodes * (nodes - 1) / 2;
  const auto& est = estimate.edges();
  const auto& tru = truth.edges();
  std::vector<std::pair<int, int>> common;
  std::set_intersection(est.begin(), est.end(), tru.begin(), tru.end(),
                        std::back_inserter(common));
  c.tp = static_cast<long>(common.size());
  c.fp = static_cast<long>(est.size()) - c.tp;
  c.fn = static_cast<long>(tru.size()) - c.tp;
  c.tn = pairs - c.tp - c.fp - c.fn;
  return c;
}

std::string to_string(Scope scope) {
  switch (scope) {
    case Scope::omega:
      return "omega";
    case Scope::gamma:
      return "gamma";
    case Scope::combined:
      return "combined";
  }
  return "combined";
}

TrueGraph true_graph(const GroundTruth& truth) {
  TrueGraph g{true_row_edges(truth), true_col_edges(truth), EdgeSet{}};
  g.combined = kpg_edges(g.omega, g.gamma);
  return g;
}

const Confusion& ScopedConfusion::at(Scope scope) const {
  switch (scope) {
    case Scope::omega:
      return omega;
    case Scope::gamma:
      return gamma;
    case Scope::combined:
      return combined;
  }
  return combined;
}

ScopedConfusion score(const EdgeSet& omega, const EdgeSet& gamma, const TrueGraph& truth) {
  return {confusion(omega, truth.omega), confusion(gamma, truth.gamma),
          confusion(kpg_edges(omega, gamma), truth.combined)};
}

std::string to_string(Estimator estimator) {
  return estimator == Estimator::proposed ? "proposed" : "iid";
}

std::string to_string(Selection selection) {
  return selection == Selection::bic ? "bic" : "oracle_f1";
}

Estimator parse_estimator(const std::string& name) {
  if (name == "proposed") return Estimator::proposed;
  if (name == "iid" || name == "baseline") return Estimator::baseline;
  throw std::invalid_argument("unknown estimator '" + name + "' (expected proposed or iid)");
}

Selection parse_selection(const std::string& name) {
  if (name == "bic") return Selection::bic;
  if (name == "oracle_f1" || name == "oracle") return Selection::oracle_f1;
  throw std::invalid_argument("unknown selection '" + name + "' (expected bic or oracle_f1)");
}

void Scenario::validate() const {
  if (n < 4) throw std::invalid_argument("scenario: n must be at least 4");
  if (windows < 1 || runs < 1 || grid_points < 1) {
    throw std::invalid_argument("scenario: windows, runs and grid points must be positive");
  }
  if (!(oracle_low > 0.0) || !(oracle_high >= oracle_low)) {
    throw std::invalid_argument("scenario: invalid oracle range");
  }
  if (estimator == Estimator::baseline && selection == Selection::bic) {
    throw std::invalid_argument("scenario: BIC selection is only defined for the proposed estimator");
  }
  synth.validate();
  flipflop.validate();
  (void)plan_windows(n - n % 2, windows);
}

std::uint64_t truth_seed(std::uint64_t master, int run) {
  return derive_seed(master, static_cast<std::uint64_t>(run), 0);
}

std::uint64_t data_seed(std::uint64_t master, int run) {
  return derive_seed(master, static_cast<std::uint64_t>(run), 1);
}

Moments moments(const std::vector<double>& values) {
  Moments m;
  if (values.empty()) return m;
  m.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - m.mean) * (v - m.mean);
    m.sd = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return m;
}

EstimatedGraph estimate_edges(Estimator estimator, const MatrixSeries& series,
                              const SpectralPlan& plan, const DftStack& dfts, double lambda_p,
                              double lambda_q, const FlipFlopConfig& base) {
  if (estimator == Estimator::proposed) {
    FlipFlopConfig config = base;
    config.lambda_p = lambda_p;
    config.lambda_q = lambda_q;
    const auto result = fit(DftStatistics(dfts, plan), config);
    return {support_edges(result.omega_split), group_edges({result.gamma_split})};
  }
  const auto result = fit_iid(series, iid_config(base, lambda_p, lambda_q));
  return {support_edges(result.omega_split), support_edges(result.upsilon_split)};
}

NoEdgeLambdas no_edge_lambdas(Estimator estimator, const MatrixSeries& series,
                              const SpectralPlan& plan, const DftStack& dfts,
                              const FlipFlopConfig& base) {
  NoEdgeLambdas out;
  out.lambda_p = find_threshold([&](double lambda) {
    return estimate_edges(estimator, series, plan, dfts, lambda, 0.0, base).omega.size() == 0;
  });
  out.lambda_q = find_threshold([&](double lambda) {
    return estimate_edges(estimator, series, plan, dfts, 0.0, lambda, base).gamma.size() == 0;
  });
  return out;
}

RunOutcome run_once(const Scenario& scenario, int run) {
  RunOutcome out;
  out.run = run;
  const auto start = Clock::now();
  try {
    const Instance inst = make_instance(scenario, run);
    const TrueGraph truth = true_graph(inst.truth);
    if (scenario.selection == Selection::bic) {
      const DftStatistics stats(inst.dfts, inst.plan);
      const auto sel = select_bic(stats, inst.plan.window_len, scenario.flipflop,
                                  scenario.grid_points, scenario.bic_form, 1);
      const auto& best = sel.search.cells[sel.search.best];
      out.lambda_p = best.lambda_p;
      out.lambda_q = best.lambda_q;
      out.fit_seconds = sel.search.best_fit.seconds;
      const auto report = extract_edges(sel.search.best_fit);
      out.confusion = score(report.omega, report.gamma, truth);
    } else {
      const auto sm = no_edge_lambdas(scenario.estimator, inst.series, inst.plan, inst.dfts,
                                      scenario.flipflop);
      const auto grid_p = log_space(sm.lambda_p * scenario.oracle_low,
                                    sm.lambda_p * scenario.oracle_high, scenario.grid_points);
      const auto grid_q = log_space(sm.lambda_q * scenario.oracle_low,
                                    sm.lambda_q * scenario.oracle_high, scenario.grid_points);
      double best_f1 = -1.0;
      for (auto ip = grid_p.rbegin(); ip != grid_p.rend(); ++ip) {
        for (auto iq = grid_q.rbegin(); iq != grid_q.rend(); ++iq) {
          const auto cell_start = Clock::now();
          const auto g = estimate_edges(scenario.estimator, inst.series, inst.plan, inst.dfts,
                                        *ip, *iq, scenario.flipflop);
          const double cell_seconds = elapsed(cell_start);
          const auto sc = score(g.omega, g.gamma, truth);
          if (sc.combined.f1() > best_f1) {
            best_f1 = sc.combined.f1();
            out.confusion = sc;
            out.lambda_p = *ip;
            out.lambda_q = *iq;
            out.fit_seconds = cell_seconds;
          }
        }
      }
    }
    out.ok = true;
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  out.seconds = elapsed(start);
  return out;
}

McSummary monte_carlo(const Scenario& scenario) {
  scenario.validate();
  McSummary summary;
  summary.runs.resize(static_cast<std::size_t>(scenario.runs));
  parallel_for(summary.runs.size(), scenario.threads, [&](std::size_t r) {
    summary.runs[r] = run_once(scenario, static_cast<int>(r));
  });
  std::vector<double> f1, tpr, fpr, secs, fit_secs;
  for (const auto& r : summary.runs) {
    if (!r.ok) {
      ++summary.failures;
      continue;
    }
    f1.push_back(r.confusion.combined.f1());
    tpr.push_back(r.confusion.combined.tpr());
    fpr.push_back(r.confusion.combined.fpr());
    secs.push_back(r.seconds);
    fit_secs.push_back(r.fit_seconds);
  }
  summary.f1 = moments(f1);
  summary.tpr = moments(tpr);
  summary.fpr = moments(fpr);
  summary.seconds = moments(secs);
  summary.fit_seconds = moments(fit_secs);
  return summary;
}

const std::vector<RocPoint>& RocCurves::at(Scope scope) const {
  switch (scope) {
    case Scope::omega:
      return omega;
    case Scope::gamma:
      return gamma;
    case Scope::combined:
      return combined;
  }
  return combined;
}

RocCurves roc_sweep(const Scenario& scenario, const std::vector<double>& lambda_p,
                    const std::vector<double>& lambda_q) {
  scenario.validate();
  if (lambda_p.size() != lambda_q.size() || lambda_p.empty()) {
    throw std::invalid_argument("roc_sweep: lambda paths must be non-empty and of equal length");
  }
  const std::size_t cells = lambda_p.size();
  // per run, per cell
  std::vector<std::vector<ScopedConfusion>> results(static_cast<std::size_t>(scenario.runs));
  parallel_for(results.size(), scenario.threads, [&](std::size_t r) {
    const Instance inst = make_instance(scenario, static_cast<int>(r));
    const TrueGraph truth = true_graph(inst.truth);
    results[r].resize(cells);
    for (std::size_t i = 0; i < cells; ++i) {
      const auto g = estimate_edges(scenario.estimator, inst.series, inst.plan, inst.dfts,
                                    lambda_p[i], lambda_q[i], scenario.flipflop);
      results[r][i] = score(g.omega, g.gamma, truth);
    }
  });
  RocCurves curves;
  for (Scope scope : {Scope::omega, Scope::gamma, Scope::combined}) {
    std::vector<RocPoint> points;
    for (std::size_t i = 0; i < cells; ++i) {
      RocPoint pt{lambda_p[i], lambda_q[i], 0.0, 0.0};
      for (const auto& run : results) {
        pt.fpr += run[i].at(scope).fpr();
        pt.tpr += run[i].at(scope).tpr();
      }
      pt.fpr /= static_cast<double>(results.size());
      pt.tpr /= static_cast<double>(results.size());
      points.push_back(pt);
    }
    std::stable_sort(points.begin(), points.end(), [](const RocPoint& a, const RocPoint& b) {
      return a.fpr < b.fpr || (a.fpr == b.fpr && a.tpr < b.tpr);
    });
    (scope == Scope::omega ? curves.omega : scope == Scope::gamma ? curves.gamma : curves.combined) =
        std::move(points);
  }
  return curves;
}

std::vector<double> roc_path(double no_edge_lambda, int points) {
  if (points < 3) throw std::invalid_argument("roc_path: need at least 3 points");
  std::vector<double> path{0.0};
  for (double v : log_space(no_edge_lambda * 1e-3, no_edge_lambda * 2.0, points - 2)) {
    path.push_back(v);
  }
  path.push_back(no_edge_lambda * 1e4);
  return path;
}

RocCurves roc(const Scenario& scenario, int points) {
  scenario.validate();
  const Instance inst = make_instance(scenario, 0);
  const auto sm = no_edge_lambdas(scenario.estimator, inst.series, inst.plan, inst.dfts,
                                  scenario.flipflop);
  return roc_sweep(scenario, roc_path(sm.lambda_p, points), roc_path(sm.lambda_q, points));
}

double roc_auc(const std::vector<RocPoint>& points) {
  std::vector<RocPoint> sorted = points;
  std::stable_sort(sorted.begin(), sorted.end(), [](const RocPoint& a, const RocPoint& b) {
    return a.fpr < b.fpr || (a.fpr == b.fpr && a.tpr < b.tpr);
  });
  double area = 0.0;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    area += (sorted[i].fpr - sorted[i - 1].fpr) * 0.5 * (sorted[i].tpr + sorted[i - 1].tpr);
  }
  return area;
}

int rate_windows(int n) {
  return std::max(1, static_cast<int>(std::lround(std::pow(static_cast<double>(n), 0.25))));
}

RateTable rate_check(const std::vector<int>& n_list, int runs, std::uint64_t seed,
                     const SynthConfig& synth, double c, const FlipFlopConfig& base) {
  if (n_list.empty() || runs < 1) throw std::invalid_argument("rate_check: empty design");
  RateTable table;
  for (int n : n_list) {
    RateRow row;
    row.n = n;
    row.windows = rate_windows(n);
    row.window_len = plan_windows(n, row.windows).window_len;
    row.errors.assign(static_cast<std::size_t>(runs), 0.0);
    table.rows.push_back(std::move(row));
  }
  for (int r = 0; r < runs; ++r) {
    const GroundTruth truth = make_truth(truth_seed(seed, r), synth);
    const RealMatrix omega_star = truth.omega / truth.omega.norm();
    for (std::size_t idx = 0; idx < table.rows.size(); ++idx) {
      auto& row = table.rows[idx];
      const auto series = generate_series(truth, row.n, derive_seed(seed, static_cast<std::uint64_t>(r), 100 + idx));
      const auto plan = plan_windows(row.n, row.windows);
      const auto dfts = dft(series);
      const double p = truth.p();
      const double q = truth.q();
      FlipFlopConfig config = base;
      config.lambda_p = c * std::sqrt(std::log(p) / (row.windows * plan.window_len * q));
      config.lambda_q = c * std::sqrt(std::log(q) / (plan.window_len * p));
      const auto result = fit(dfts, plan, config);
      std::vector<ComplexMatrix> gamma_star;
      for (int k = 0; k < row.windows; ++k) {
        gamma_star.push_back(inverse_pd(truth.sbar(plan.center_frequency(k))));
      }
      const double gnorm = stacked_norm(gamma_star);
      double gamma_err_sq = 0.0;
      for (int k = 0; k < row.windows; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        gamma_err_sq += (result.gamma.phi[kk] - gamma_star[kk] / gnorm).squaredNorm();
      }
      const RealMatrix omega_hat = result.omega.omega / result.omega.omega.norm();
      row.errors[static_cast<std::size_t>(r)] = std::sqrt(gamma_err_sq) + (omega_hat - omega_star).norm();
    }
  }
  std::vector<double> xs, ys;
  for (auto& row : table.rows) {
    row.mean_error = moments(row.errors).mean;
    xs.push_back(std::log(static_cast<double>(row.n)));
    ys.push_back(std::log(row.mean_error));
  }
  if (xs.size() > 1) {
    const double mx = moments(xs).mean;
    const double my = moments(ys).mean;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    table.slope = sxy / sxx;
  }
  int monotone = 0;
  for (int r = 0; r < runs; ++r) {
    bool ok = true;
    for (std::size_t idx = 1; idx < table.rows.size(); ++idx) {
      ok = ok && table.rows[idx].errors[static_cast<std::size_t>(r)] <
                     table.rows[idx - 1].errors[static_cast<std::size_t>(r)];
    }
    monotone += ok ? 1 : 0;
  }
  table.monotone_share = static_cast<double>(monotone) / runs;
  return table;
}

AdmmConfig tight_admm() {
  AdmmConfig c;
  c.tau_abs = 1e-12;
  c.tau_rel = 1e-12;
  c.i_max = 5000;
  return c;
}

Theorem1Report theorem1_check(const GroundTruth& truth, int windows, int n,
                              const AdmmConfig& admm) {
  const auto start = Clock::now();
  const SpectralPlan plan = plan_windows(n, windows);
  std::vector<ComplexMatrix> sbar;
  std::vector<ComplexMatrix> phi_star;
  for (int k = 0; k < windows; ++k) {
    sbar.push_back(truth.sbar(plan.center_frequency(k)));
    phi_star.push_back(inverse_pd(sbar.back()));
  }
  const PopulationStatistics stats(sbar, truth.sigma);
  FlipFlopConfig config;
  config.lambda_p = 0.0;
  config.lambda_q = 0.0;
  config.tau_ff = 1e-12;
  config.admm = admm;
  const FitResult result = fit(stats, config);

  Theorem1Report report;
  report.outer_iterations = static_cast<int>(result.trace.size());

  Complex inner = 0.0;
  for (int k = 0; k < windows; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    inner += (phi_star[kk].adjoint() * result.gamma.phi[kk]).trace();
  }
  const double star_sq = stacked_norm(phi_star) * stacked_norm(phi_star);
  const double c_gamma = inner.real() / star_sq;
  double resid_sq = 0.0;
  for (int k = 0; k < windows; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    resid_sq += (result.gamma.phi[kk] - c_gamma * phi_star[kk]).squaredNorm();
  }
  report.phi_residual = std::sqrt(resid_sq) / (std::abs(c_gamma) * stacked_norm(phi_star));

  const RealMatrix& om = result.omega.omega;
  const double c_omega = (truth.omega.array() * om.array()).sum() / truth.omega.squaredNorm();
  report.omega_residual = (om - c_omega * truth.omega).norm() / (std::abs(c_omega) * truth.omega.norm());

  const RealMatrix x = om / om.norm();
  const RealMatrix y = truth.omega / truth.omega.norm();
  for (int k = 0; k < windows; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    const ComplexMatrix a = result.gamma.phi[kk] / result.gamma.phi[kk].norm();
    const ComplexMatrix b = phi_star[kk] / phi_star[kk].norm();
    double sq = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      for (Eigen::Index i = 0; i < a.rows(); ++i) {
        sq += (a(i, j) * x.cast<Complex>() - b(i, j) * y.cast<Complex>()).squaredNorm();
      }
    }
    report.product_residual = std::max(report.product_residual, std::sqrt(sq));
  }
  report.seconds = elapsed(start);
  return report;
}

}  // namespace matgraph

#include "matgraph/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "matgraph/io.hpp"
#include "matgraph/preprocess.hpp"

namespace matgraph {

namespace {

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (value.empty() || used != value.size() || !std::isfinite(v)) {
    throw InputError("config '" + key + "': expected a number, got '" + value + "'");
  }
  return v;
}

int to_int(const std::string& key, const std::string& value) {
  const double v = to_double(key, value);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw InputError("config '" + key + "': expected an integer, got '" + value + "'");
  }
  return static_cast<int>(v);
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (value.empty() || value.front() == '-' || used != value.size()) {
    throw InputError("config '" + key + "': expected a non-negative integer, got '" + value + "'");
  }
  return v;
}

template <class F>
auto named(const std::string& key, F&& parse) {
  try {
    return parse();
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InputError("config '" + key + "': " + e.what());
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  return f;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot read '" + path + "'");
  return f;
}

void write_json(const std::string& path, const nlohmann::json& j) {
  auto f = open_out(path);
  f << j.dump(2) << '\n';
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

nlohmann::json config_json(const RunConfig& c) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : c.entries()) j[k] = v;
  return j;
}

nlohmann::json edge_json(const EdgeSet& e) { return to_json(e); }

std::vector<std::string> cell_labels(int p, int q) {
  std::vector<std::string> out(static_cast<std::size_t>(p * q));
  for (int j = 0; j < q; ++j)
    for (int i = 0; i < p; ++i) {
      out[static_cast<std::size_t>(cell_node(i, j, p))] = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
    }
  return out;
}

// ---------------------------------------------------------------------------

int cmd_simulate(const RunConfig& cfg, const std::string& prefix, std::ostream& out) {
  if (cfg.n < 2) throw InputError("simulate: n must be at least 2");
  const std::uint64_t ts = truth_seed(cfg.seed, 0);
  const std::uint64_t ds = data_seed(cfg.seed, 0);
  const GroundTruth truth = make_truth(ts, cfg.synth);
  const MatrixSeries series = generate_series(truth, cfg.n, ds, cfg.noise);
  {
    auto f = open_out(prefix + ".csv");
    write_series_csv(f, series);
  }
  write_json(prefix + "_truth.json", truth_to_json(truth));
  write_json(prefix + "_manifest.json", {{"seed", cfg.seed},
                                         {"truth_seed", ts},
                                         {"data_seed", ds},
                                         {"n", series.n()},
                                         {"p", series.p()},
                                         {"q", series.q()},
                                         {"noise", to_string(cfg.noise)},
                                         {"series", prefix + ".csv"},
                                         {"truth", prefix + "_truth.json"},
                                         {"config", config_json(cfg)}});
  out << "wrote " << prefix << ".csv (n=" << series.n() << ", p=" << series.p()
      << ", q=" << series.q() << ")\n";
  return 0;
}

int cmd_fit(RunConfig cfg, bool force_auto, const std::string& input, const std::string& prefix,
            std::ostream& out, std::ostream& err) {
  if (force_auto) cfg.auto_lambda = true;
  const auto start = Clock::now();
  MatrixSeries raw = [&] {
    auto f = open_in(input);
    return read_series_csv(f);
  }();
  const bool truncated = raw.n() % 2 == 1;
  if (truncated) {
    err << "warning: odd series length " << raw.n() << "; dropping the last sample\n";
  }
  const MatrixSeries series = raw.even_length();
  const SpectralPlan plan = plan_windows(series.n(), cfg.windows);
  const DftStack dfts = dft(series);
  const DftStatistics stats(dfts, plan);

  nlohmann::json doc;
  doc["dims"] = {{"n", series.n()},           {"p", series.p()},
                 {"q", series.q()},           {"windows", plan.windows},
                 {"window_len", plan.window_len}, {"half_width", plan.half_width},
                 {"truncated", truncated}};
  doc["config"] = config_json(cfg);

  FitResult result;
  std::optional<SelectionResult> sel;
  if (cfg.auto_lambda) {
    sel = select_bic(stats, plan.window_len, cfg.flipflop, cfg.grid_points, cfg.bic_form,
                     cfg.threads);
    result = sel->search.best_fit;
    const auto& best = sel->search.cells[sel->search.best];
    doc["lambda_p"] = best.lambda_p;
    doc["lambda_q"] = best.lambda_q;
  } else {
    result = fit(stats, cfg.flipflop);
    doc["lambda_p"] = cfg.flipflop.lambda_p;
    doc["lambda_q"] = cfg.flipflop.lambda_q;
  }
  const EdgeReport report = extract_edges(result);

  doc["omega"] = to_json(result.omega.omega);
  nlohmann::json phi = nlohmann::json::array();
  for (const auto& m : result.gamma.phi) phi.push_back(to_json(m));
  doc["phi"] = phi;
  doc["gamma_norm"] = result.gamma.frobenius_norm();
  doc["supports"] = {{"omega", edge_json(report.omega)},
                     {"gamma", edge_json(report.gamma)},
                     {"combined", edge_json(report.combined)}};
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& s : result.trace) {
    trace.push_back({{"iteration", s.iteration},
                     {"neg_log_like", s.neg_log_like},
                     {"objective", s.objective},
                     {"gamma_change", s.gamma_change},
                     {"omega_change", s.omega_change},
                     {"gamma_admm_iterations", s.gamma_solver.iterations},
                     {"omega_admm_iterations", s.omega_solver.iterations},
                     {"gamma_admm_converged", s.gamma_solver.converged},
                     {"omega_admm_converged", s.omega_solver.converged}});
  }
  doc["diagnostics"] = {{"converged", result.converged},
                        {"inner_converged", result.inner_converged()},
                        {"outer_iterations", static_cast<int>(result.trace.size())},
                        {"trace", trace}};

  if (sel) {
    nlohmann::json cells = nlohmann::json::array();
    auto table = open_out(prefix + "_bic.csv");
    table << "lambda_p,lambda_q,ok,converged,bic,data_term,complexity_term,selected\n";
    for (std::size_t i = 0; i < sel->search.cells.size(); ++i) {
      const auto& c = sel->search.cells[i];
      const bool chosen = i == sel->search.best;
      cells.push_back({{"lambda_p", c.lambda_p},
                       {"lambda_q", c.lambda_q},
                       {"ok", c.ok},
                       {"converged", c.converged},
                       {"bic", c.score.value},
                       {"data_term", c.score.data_term},
                       {"complexity_term", c.score.complexity_term},
                       {"selected", chosen}});
      table << format_double(c.lambda_p) << ',' << format_double(c.lambda_q) << ',' << c.ok << ','
            << c.converged << ',' << format_double(c.score.value) << ','
            << format_double(c.score.data_term) << ',' << format_double(c.score.complexity_term)
            << ',' << chosen << '\n';
    }
    doc["bic"] = {{"form", to_string(cfg.bic_form)},
                  {"lambda_p_no_edge", sel->lambda_p_sm},
                  {"lambda_q_no_edge", sel->lambda_q_sm},
                  {"best", sel->search.best},
                  {"cells", cells}};
  } else {
    const BicScore b = bic(result, stats, plan.window_len, cfg.bic_form);
    doc["bic"] = {{"form", to_string(cfg.bic_form)}, {"value", b.value}};
  }

  const int p = series.p(), q = series.q();
  {
    auto f = open_out(prefix + "_p.dot");
    write_dot(f, "rows", report.omega, report.omega_weights);
  }
  {
    auto f = open_out(prefix + "_q.dot");
    write_dot(f, "columns", report.gamma, report.gamma_weights);
  }
  {
    auto f = open_out(prefix + "_kpg.dot");
    write_dot(f, "cells", report.combined, kronecker_weights(result.omega_split, result.gamma_split),
              cell_labels(p, q));
  }
  doc["timing"] = {{"fit_seconds", result.seconds}, {"total_seconds", seconds_since(start)}};
  write_json(prefix + ".json", doc);
  out << "lambda_p=" << format_double(doc["lambda_p"].get<double>())
      << " lambda_q=" << format_double(doc["lambda_q"].get<double>()) << " edges: rows "
      << report.omega.size() << ", columns " << report.gamma.size() << ", cells "
      << report.combined.size() << "\n";
  return 0;
}

int cmd_benchmark(const RunConfig& cfg, const std::string& prefix, std::ostream& out) {
  const Scenario sc = cfg.scenario();
  sc.validate();
  const McSummary mc = monte_carlo(sc);
  {
    auto f = open_out(prefix + ".csv");
    f << "run,ok,lambda_p,lambda_q,f1,tpr,fpr,omega_f1,gamma_f1,tp,fp,tn,fn\n";
    for (const auto& r : mc.runs) {
      const auto& c = r.confusion.combined;
      f << r.run << ',' << r.ok << ',' << format_double(r.lambda_p) << ','
        << format_double(r.lambda_q) << ',' << format_double(c.f1()) << ','
        << format_double(c.tpr()) << ',' << format_double(c.fpr()) << ','
        << format_double(r.confusion.omega.f1()) << ',' << format_double(r.confusion.gamma.f1())
        << ',' << c.tp << ',' << c.fp << ',' << c.tn << ',' << c.fn << '\n';
    }
  }
  const auto mom = [](const Moments& m) { return nlohmann::json{{"mean", m.mean}, {"sd", m.sd}}; };
  nlohmann::json errors = nlohmann::json::array();
  for (const auto& r : mc.runs)
    if (!r.ok) errors.push_back({{"run", r.run}, {"error", r.error}});
  write_json(prefix + "_summary.json",
             {{"config", config_json(cfg)},
              {"runs", static_cast<int>(mc.runs.size())},
              {"failures", mc.failures},
              {"errors", errors},
              {"f1", mom(mc.f1)},
              {"tpr", mom(mc.tpr)},
              {"fpr", mom(mc.fpr)},
              {"timing", {{"seconds", mom(mc.seconds)}, {"fit_seconds", mom(mc.fit_seconds)}}}});
  char line[256];
  std::snprintf(line, sizeof line,
                "%s/%s n=%d M=%d runs=%zu failures=%d  F1 %.4f +- %.4f  TPR %.4f  1-TNR %.4f  "
                "fit %.3f s/run  total %.3f s/run\n",
                to_string(sc.estimator).c_str(), to_string(sc.selection).c_str(), sc.n, sc.windows,
                mc.runs.size(), mc.failures, mc.f1.mean, mc.f1.sd, mc.tpr.mean, mc.fpr.mean,
                mc.fit_seconds.mean, mc.seconds.mean);
  out << line;
  return mc.failures == static_cast<int>(mc.runs.size()) ? 1 : 0;
}

int cmd_roc(const RunConfig& cfg, const std::string& prefix, std::ostream& out) {
  Scenario sc = cfg.scenario();
  sc.selection = Selection::oracle_f1;
  sc.validate();
  const RocCurves curves = roc(sc, cfg.roc_points);
  auto f = open_out(prefix + ".csv");
  f << "scope,lambda_p,lambda_q,fpr,tpr\n";
  for (Scope scope : {Scope::omega, Scope::gamma, Scope::combined}) {
    for (const auto& pt : curves.at(scope)) {
      f << to_string(scope) << ',' << format_double(pt.lambda_p) << ','
        << format_double(pt.lambda_q) << ',' << format_double(pt.fpr) << ','
        << format_double(pt.tpr) << '\n';
    }
    out << to_string(scope) << " AUC " << format_double(roc_auc(curves.at(scope))) << '\n';
  }
  return 0;
}

int cmd_preprocess(const std::string& input, const std::string& output, int rows, int skip,
                   double zero_fraction, std::ostream& out, std::ostream& err) {
  const RawTable table = [&] {
    auto f = open_in(input);
    return read_raw_csv(f, skip);
  }();
  const PreprocessResult res = preprocess(table.columns, rows, zero_fraction);
  for (const auto& [i, j] : res.bumped) {
    err << "warning: zeros replaced in cell (" << i << "," << j << ")\n";
  }
  for (const auto& [i, j] : res.degenerate) {
    err << "warning: cell (" << i << "," << j << ") has no variation after detrending; written as zeros\n";
  }
  auto f = open_out(output);
  write_series_csv(f, res.series);
  out << "wrote " << output << " (n=" << res.series.n() << ", p=" << res.series.p()
      << ", q=" << res.series.q() << ")\n";
  return 0;
}

}  // namespace

// ---------------------------------------------------------------------------

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> k{
      "n",          "M",           "seed",      "noise",        "p",           "blocks",
      "block_size", "var_order",   "var_density", "edge_prob",  "impulse_len", "alpha",
      "lambda",     "lambda_p",    "lambda_q",  "rho0",         "mu_bar",      "tau_abs",
      "tau_rel",    "i_max",       "m_max",     "tau_ff",       "bic_form",    "grid_points",
      "runs",       "estimator",   "select",    "oracle_low",   "oracle_high", "roc_points",
      "threads"};
  return k;
}

void RunConfig::set(const std::string& key_in, const std::string& value_in) {
  const std::string key = trimmed(key_in);
  const std::string value = trimmed(value_in);
  auto lambda = [&](double& slot) {
    if (value == "auto") {
      auto_lambda = true;
    } else {
      slot = to_double(key, value);
      auto_lambda = false;
    }
  };
  if (key == "n") n = to_int(key, value);
  else if (key == "M" || key == "windows") windows = to_int(key, value);
  else if (key == "seed") seed = to_u64(key, value);
  else if (key == "noise") noise = named(key, [&] { return parse_noise(value); });
  else if (key == "p") synth.p = to_int(key, value);
  else if (key == "blocks") synth.blocks = to_int(key, value);
  else if (key == "block_size") synth.block_size = to_int(key, value);
  else if (key == "var_order") synth.var_order = to_int(key, value);
  else if (key == "var_density") synth.var_density = to_double(key, value);
  else if (key == "edge_prob") synth.edge_prob = to_double(key, value);
  else if (key == "impulse_len") synth.impulse_len = to_int(key, value);
  else if (key == "alpha") flipflop.alpha = to_double(key, value);
  else if (key == "lambda") {
    lambda(flipflop.lambda_p);
    if (!auto_lambda) flipflop.lambda_q = flipflop.lambda_p;
  }
  else if (key == "lambda_p") lambda(flipflop.lambda_p);
  else if (key == "lambda_q") lambda(flipflop.lambda_q);
  else if (key == "rho0") flipflop.admm.rho0 = to_double(key, value);
  else if (key == "mu_bar") flipflop.admm.mu_bar = to_double(key, value);
  else if (key == "tau_abs") flipflop.admm.tau_abs = to_double(key, value);
  else if (key == "tau_rel") flipflop.admm.tau_rel = to_double(key, value);
  else if (key == "i_max") flipflop.admm.i_max = to_int(key, value);
  else if (key == "m_max") flipflop.m_max = to_int(key, value);
  else if (key == "tau_ff") flipflop.tau_ff = to_double(key, value);
  else if (key == "bic_form") bic_form = named(key, [&] { return parse_bic_form(value); });
  else if (key == "grid_points") grid_points = to_int(key, value);
  else if (key == "runs") runs = to_int(key, value);
  else if (key == "estimator") estimator = named(key, [&] { return parse_estimator(value); });
  else if (key == "select") {
    selection = named(key, [&] { return parse_selection(value); });
    selection_explicit = true;
  }
  else if (key == "oracle_low") oracle_low = to_double(key, value);
  else if (key == "oracle_high") oracle_high = to_double(key, value);
  else if (key == "roc_points") roc_points = to_int(key, value);
  else if (key == "threads") threads = to_int(key, value);
  else throw InputError("unknown config key '" + key + "'");
}

void RunConfig::validate() const {
  const auto check = [](bool ok, const std::string& msg) {
    if (!ok) throw InputError("config: " + msg);
  };
  check(n >= 4, "n must be at least 4");
  check(windows >= 1, "M must be positive");
  check(grid_points >= 1, "grid_points must be positive");
  check(runs >= 1, "runs must be positive");
  check(roc_points >= 3, "roc_points must be at least 3");
  check(threads >= 0, "threads must be non-negative");
  check(oracle_low > 0.0 && oracle_high >= oracle_low, "need 0 < oracle_low <= oracle_high");
  try {
    synth.validate();
    flipflop.validate();
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("config: ") + e.what());
  }
}

Scenario RunConfig::scenario() const {
  Scenario s;
  s.n = n;
  s.windows = windows;
  s.runs = runs;
  s.seed = seed;
  s.estimator = estimator;
  s.selection = selection;
  if (estimator == Estimator::baseline && !selection_explicit) s.selection = Selection::oracle_f1;
  s.noise = noise;
  s.synth = synth;
  s.flipflop = flipflop;
  s.bic_form = bic_form;
  s.grid_points = grid_points;
  s.oracle_low = oracle_low;
  s.oracle_high = oracle_high;
  s.threads = threads;
  return s;
}

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
  const auto d = [](double v) { return format_double(v); };
  const auto i = [](long v) { return std::to_string(v); };
  return {{"n", i(n)},
          {"M", i(windows)},
          {"seed", std::to_string(seed)},
          {"noise", to_string(noise)},
          {"p", i(synth.p)},
          {"blocks", i(synth.blocks)},
          {"block_size", i(synth.block_size)},
          {"var_order", i(synth.var_order)},
          {"var_density", d(synth.var_density)},
          {"edge_prob", d(synth.edge_prob)},
          {"impulse_len", i(synth.impulse_len)},
          {"alpha", d(flipflop.alpha)},
          {"lambda_p", auto_lambda ? "auto" : d(flipflop.lambda_p)},
          {"lambda_q", auto_lambda ? "auto" : d(flipflop.lambda_q)},
          {"rho0", d(flipflop.admm.rho0)},
          {"mu_bar", d(flipflop.admm.mu_bar)},
          {"tau_abs", d(flipflop.admm.tau_abs)},
          {"tau_rel", d(flipflop.admm.tau_rel)},
          {"i_max", i(flipflop.admm.i_max)},
          {"m_max", i(flipflop.m_max)},
          {"tau_ff", d(flipflop.tau_ff)},
          {"bic_form", to_string(bic_form)},
          {"grid_points", i(grid_points)},
          {"runs", i(runs)},
          {"estimator", to_string(estimator)},
          {"select", to_string(scenario().selection)},
          {"oracle_low", d(oracle_low)},
          {"oracle_high", d(oracle_high)},
          {"roc_points", i(roc_points)},
          {"threads", i(threads)}};
}

void apply_config_text(RunConfig& config, std::istream& in) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trimmed(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InputError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    config.set(line.substr(0, eq), line.substr(eq + 1));
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse Kronecker-structured graphs for matrix-valued time series"};
  app.require_subcommand(1);

  struct Common {
    std::string config_file;
    std::vector<std::string> sets;
    std::optional<std::string> seed, threads, n, windows, noise, lambda, lambda_p, lambda_q,
        runs, estimator, select, bic_form, points;
    std::string out;
  };
  Common c;
  const auto add_common = [&](CLI::App* sub, const std::string& default_out) {
    sub->add_option("--config", c.config_file, "key = value config file");
    sub->add_option("--set", c.sets, "extra key=value settings (repeatable)");
    sub->add_option("--seed", c.seed, "master seed");
    sub->add_option("--threads", c.threads, "worker cap (0 = all cores)");
    sub->add_option("-o,--out", c.out, "output path prefix")->default_val(default_out);
  };
  const auto add_model = [&](CLI::App* sub) {
    sub->add_option("--M", c.windows, "number of frequency windows");
    sub->add_option("--lambda", c.lambda, "both lambdas, or 'auto' for BIC selection");
    sub->add_option("--lambda-p", c.lambda_p, "row-factor penalty");
    sub->add_option("--lambda-q", c.lambda_q, "column-factor penalty");
    sub->add_option("--bic-form", c.bic_form, "likelihood | scaled_trace");
  };
  const auto add_scenario = [&](CLI::App* sub) {
    sub->add_option("--n", c.n, "series length");
    sub->add_option("--noise", c.noise, "gaussian | exponential | uniform");
  };

  auto* simulate = app.add_subcommand("simulate", "generate a synthetic dataset and its truth");
  add_common(simulate, "sim");
  add_scenario(simulate);

  std::string input;
  auto* fit_cmd = app.add_subcommand("fit", "estimate the graph of a series file");
  add_common(fit_cmd, "fit");
  add_model(fit_cmd);
  fit_cmd->add_option("-i,--input", input, "series CSV (t,row,col,value)")->required();

  auto* select = app.add_subcommand("select", "fit with BIC-selected penalties");
  add_common(select, "fit");
  add_model(select);
  select->add_option("-i,--input", input, "series CSV (t,row,col,value)")->required();

  auto* bench = app.add_subcommand("benchmark", "Monte-Carlo edge-recovery table");
  add_common(bench, "benchmark");
  add_model(bench);
  add_scenario(bench);
  bench->add_option("--runs", c.runs, "replicates");
  bench->add_option("--estimator", c.estimator, "proposed | iid");
  bench->add_option("--select", c.select, "bic | oracle_f1");

  auto* roc_cmd = app.add_subcommand("roc", "ROC sweep over a paired lambda path");
  add_common(roc_cmd, "roc");
  add_scenario(roc_cmd);
  roc_cmd->add_option("--M", c.windows, "number of frequency windows");
  roc_cmd->add_option("--runs", c.runs, "replicates");
  roc_cmd->add_option("--estimator", c.estimator, "proposed | iid");
  roc_cmd->add_option("--points", c.points, "points on the lambda path");

  int rows = 0, skip = 0;
  double zero_fraction = 1e-6;
  std::string pre_out = "series.csv";
  auto* pre = app.add_subcommand("preprocess", "log-ratio, detrend and scale a raw table");
  pre->add_option("-i,--input", input, "raw CSV with a header row")->required();
  pre->add_option("-o,--out", pre_out, "output series CSV")->capture_default_str();
  pre->add_option("--rows", rows, "p; column c maps to cell (c / q, c % q)")->required();
  pre->add_option("--skip-columns", skip, "leading non-numeric columns")->capture_default_str();
  pre->add_option("--zero-fraction", zero_fraction, "zero replacement, fraction of the cell median")
      ->capture_default_str();

  std::vector<std::string> argv_store{"matgraph"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (pre->parsed()) return cmd_preprocess(input, pre_out, rows, skip, zero_fraction, out, err);

    RunConfig cfg;
    if (!c.config_file.empty()) {
      auto f = open_in(c.config_file);
      apply_config_text(cfg, f);
    }
    for (const auto& kv : c.sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw InputError("--set expects key=value, got '" + kv + "'");
      cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    const std::pair<const char*, const std::optional<std::string>*> flags[] = {
        {"seed", &c.seed},         {"threads", &c.threads},     {"n", &c.n},
        {"M", &c.windows},         {"noise", &c.noise},         {"lambda", &c.lambda},
        {"lambda_p", &c.lambda_p}, {"lambda_q", &c.lambda_q},   {"runs", &c.runs},
        {"estimator", &c.estimator}, {"select", &c.select},     {"bic_form", &c.bic_form},
        {"roc_points", &c.points}};
    for (const auto& [key, value] : flags)
      if (value->has_value()) cfg.set(key, **value);
    cfg.validate();

    if (simulate->parsed()) return cmd_simulate(cfg, c.out, out);
    if (fit_cmd->parsed()) return cmd_fit(cfg, false, input, c.out, out, err);
    if (select->parsed()) return cmd_fit(cfg, true, input, c.out, out, err);
    if (bench->parsed()) return cmd_benchmark(cfg, c.out, out);
    if (roc_cmd->parsed()) return cmd_roc(cfg, c.out, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace matgraph

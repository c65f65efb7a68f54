#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "matgraph/eval.hpp"
#include "matgraph/synth.hpp"
#include "oracles.hpp"

using namespace matgraph;

namespace {

EdgeSet random_edges(std::mt19937_64& gen, int nodes, double prob) {
  std::bernoulli_distribution coin(prob);
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < nodes; ++i)
    for (int j = i + 1; j < nodes; ++j)
      if (coin(gen)) e.emplace_back(i, j);
  return EdgeSet(nodes, e);
}

Scenario tiny() {
  Scenario s;
  s.n = 64;
  s.windows = 2;
  s.runs = 2;
  s.seed = 17;
  s.grid_points = 3;
  s.synth.p = 3;
  s.synth.blocks = 1;
  s.synth.block_size = 3;
  s.synth.var_density = 0.4;
  s.synth.edge_prob = 0.5;
  return s;
}

}  // namespace

TEST_CASE("confusion matches an exhaustive pair recount") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int nodes = 2 + trial % 9;
    const EdgeSet est = random_edges(gen, nodes, 0.3);
    const EdgeSet tru = random_edges(gen, nodes, 0.3);
    long tp = 0, fp = 0, tn = 0, fn = 0;
    for (int i = 0; i < nodes; ++i)
      for (int j = i + 1; j < nodes; ++j) {
        const bool a = est.contains(i, j), b = tru.contains(i, j);
        tp += a && b;
        fp += a && !b;
        fn += !a && b;
        tn += !a && !b;
      }
    const Confusion c = confusion(est, tru);
    CHECK(c.tp == tp);
    CHECK(c.fp == fp);
    CHECK(c.fn == fn);
    CHECK(c.tn == tn);
    CHECK(c.total() == nodes * (nodes - 1) / 2);
    if (2 * tp + fp + fn > 0) CHECK(c.f1() == doctest::Approx(2.0 * tp / (2.0 * tp + fp + fn)));
  }
}

TEST_CASE("confusion edge cases") {
  const EdgeSet truth(5, {{0, 1}, {2, 4}});
  const Confusion same = confusion(truth, truth);
  CHECK(same.f1() == 1.0);
  CHECK(same.tpr() == 1.0);
  CHECK(same.fpr() == 0.0);
  CHECK(confusion(EdgeSet(5), truth).f1() == 0.0);
  const Confusion empty = confusion(EdgeSet(5), EdgeSet(5));
  CHECK(empty.f1() == 1.0);
  CHECK(empty.tn == 10);
  CHECK_THROWS((void)confusion(EdgeSet(4), truth));
}

TEST_CASE("scoped confusion uses the Kronecker graph") {
  const TrueGraph truth{EdgeSet(2, {{0, 1}}), EdgeSet(3), kpg_edges(EdgeSet(2, {{0, 1}}), EdgeSet(3))};
  const auto sc = score(EdgeSet(2, {{0, 1}}), EdgeSet(3), truth);
  CHECK(sc.combined.f1() == 1.0);
  CHECK(sc.combined.total() == 15);
  CHECK(sc.at(Scope::omega).tp == 1);
}

TEST_CASE("moments") {
  const auto m = moments({1.0, 2.0, 3.0, 4.0});
  CHECK(m.mean == doctest::Approx(2.5));
  CHECK(m.sd == doctest::Approx(std::sqrt(5.0 / 3.0)));
  CHECK(moments({7.0}).sd == 0.0);
  CHECK(moments({}).mean == 0.0);
}

TEST_CASE("roc area and path") {
  std::vector<RocPoint> diag{{0, 0, 1.0, 1.0}, {0, 0, 0.0, 0.0}, {0, 0, 0.5, 0.5}};
  CHECK(roc_auc(diag) == doctest::Approx(0.5));
  std::vector<RocPoint> perfect{{0, 0, 0.0, 0.0}, {0, 0, 0.0, 1.0}, {0, 0, 1.0, 1.0}};
  CHECK(roc_auc(perfect) == doctest::Approx(1.0));
  const auto path = roc_path(2.0, 6);
  REQUIRE(path.size() == 6);
  CHECK(path.front() == 0.0);
  CHECK(path[1] == doctest::Approx(2e-3));
  CHECK(path[4] == doctest::Approx(4.0));
  CHECK(path.back() == doctest::Approx(2e4));
  CHECK_THROWS((void)roc_path(1.0, 2));
}

TEST_CASE("names and scenario validation") {
  CHECK(parse_estimator("proposed") == Estimator::proposed);
  CHECK(parse_estimator("iid") == Estimator::baseline);
  CHECK(parse_selection("bic") == Selection::bic);
  CHECK(parse_selection("oracle_f1") == Selection::oracle_f1);
  CHECK(parse_estimator(to_string(Estimator::baseline)) == Estimator::baseline);
  CHECK(parse_selection(to_string(Selection::oracle_f1)) == Selection::oracle_f1);
  CHECK_THROWS_AS((void)parse_estimator("lasso"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_selection("cv"), std::invalid_argument);
  Scenario s = tiny();
  CHECK_NOTHROW(s.validate());
  s.estimator = Estimator::baseline;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = tiny();
  s.windows = 40;
  CHECK_THROWS(s.validate());
  CHECK(truth_seed(1, 0) != data_seed(1, 0));
  CHECK(truth_seed(1, 0) != truth_seed(1, 1));
}

TEST_CASE("run_once is deterministic and order free") {
  const Scenario s = tiny();
  const auto a = run_once(s, 1);
  const auto b = run_once(s, 1);
  REQUIRE(a.ok);
  CHECK(a.lambda_p == b.lambda_p);
  CHECK(a.lambda_q == b.lambda_q);
  CHECK(a.confusion.combined.tp == b.confusion.combined.tp);
  CHECK(a.confusion.combined.fp == b.confusion.combined.fp);
  const auto mc = monte_carlo(s);
  REQUIRE(mc.runs.size() == 2);
  CHECK(mc.runs[1].lambda_p == a.lambda_p);
  CHECK(mc.failures == 0);
  Scenario threaded = s;
  threaded.threads = 2;
  const auto mt = monte_carlo(threaded);
  CHECK(mt.f1.mean == mc.f1.mean);
  CHECK(mt.fpr.mean == mc.fpr.mean);
}

TEST_CASE("oracle selection beats the fixed cells it scans") {
  for (Estimator est : {Estimator::proposed, Estimator::baseline}) {
    Scenario s = tiny();
    s.selection = Selection::oracle_f1;
    s.estimator = est;
    const auto r = run_once(s, 0);
    REQUIRE(r.ok);
    const auto truth = make_truth(truth_seed(s.seed, 0), s.synth);
    const auto series = generate_series(truth, s.n, data_seed(s.seed, 0));
    const auto plan = plan_windows(s.n, s.windows);
    const auto dfts = dft(series);
    const auto sm = no_edge_lambdas(est, series, plan, dfts, s.flipflop);
    const auto tg = true_graph(truth);
    const auto grid_p = log_space(sm.lambda_p * s.oracle_low, sm.lambda_p * s.oracle_high, s.grid_points);
    const auto grid_q = log_space(sm.lambda_q * s.oracle_low, sm.lambda_q * s.oracle_high, s.grid_points);
    double best = 0.0;
    for (double lp : grid_p)
      for (double lq : grid_q) {
        const auto g = estimate_edges(est, series, plan, dfts, lp, lq, s.flipflop);
        best = std::max(best, score(g.omega, g.gamma, tg).combined.f1());
      }
    CHECK(r.confusion.combined.f1() == best);
  }
}

TEST_CASE("roc sweep endpoints") {
  Scenario s = tiny();
  s.runs = 1;
  const auto curves = roc_sweep(s, {0.0, 1e6}, {0.0, 1e6});
  const TrueGraph truth = true_graph(make_truth(truth_seed(s.seed, 0), s.synth));
  for (Scope scope : {Scope::omega, Scope::gamma, Scope::combined}) {
    const auto& pts = curves.at(scope);
    const EdgeSet& t = scope == Scope::omega ? truth.omega
                       : scope == Scope::gamma ? truth.gamma : truth.combined;
    const bool has_negatives = static_cast<int>(t.size()) < t.nodes() * (t.nodes() - 1) / 2;
    REQUIRE(pts.size() == 2);
    CHECK(pts.front().fpr == 0.0);
    CHECK(pts.front().tpr == 0.0);
    CHECK(pts.front().lambda_p == 1e6);
    CHECK(pts.back().fpr == (has_negatives ? 1.0 : 0.0));
    CHECK(pts.back().tpr == 1.0);
    for (const auto& p : pts) {
      CHECK(p.fpr >= 0.0);
      CHECK(p.fpr <= 1.0);
    }
  }
  CHECK_THROWS((void)roc_sweep(s, {0.0}, {0.0, 1.0}));
}

TEST_CASE("theorem 1 population recovery") {
  SynthConfig cfg;
  cfg.p = 4;
  cfg.blocks = 1;
  cfg.block_size = 4;
  cfg.var_density = 0.4;
  cfg.edge_prob = 0.5;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto rep = theorem1_check(make_truth(seed, cfg), 2);
    CHECK(rep.phi_residual <= 1e-6);
    CHECK(rep.omega_residual <= 1e-6);
    CHECK(rep.product_residual <= 1e-6);
  }
  SynthConfig white = cfg;
  white.var_density = 0.0;
  white.edge_prob = 0.0;
  const auto rep = theorem1_check(make_truth(4, white), 2);
  CHECK(rep.phi_residual <= 1e-10);
  CHECK(rep.omega_residual <= 1e-10);
}

TEST_CASE("rate window rule") {
  CHECK(rate_windows(1) == 1);
  CHECK(rate_windows(128) == 3);
  CHECK(rate_windows(512) == 5);
  CHECK(rate_windows(2048) == 7);
}

TEST_CASE("rate table shape") {
  SynthConfig cfg;
  cfg.p = 3;
  cfg.blocks = 1;
  cfg.block_size = 3;
  cfg.var_density = 0.4;
  cfg.edge_prob = 0.5;
  const auto t = rate_check({64, 256}, 2, 11, cfg);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0].errors.size() == 2);
  CHECK(t.rows[1].windows == rate_windows(256));
  CHECK(t.monotone_share >= 0.0);
  CHECK(t.monotone_share <= 1.0);
  CHECK(std::isfinite(t.slope));
}

TEST_CASE("i.i.d. baseline finds row edges more easily than column edges") {
  Scenario s;
  s.runs = 2;
  s.seed = 3;
  s.estimator = Estimator::baseline;
  s.selection = Selection::oracle_f1;
  const auto curves = roc(s, 12);
  CHECK(roc_auc(curves.omega) > roc_auc(curves.gamma));
}

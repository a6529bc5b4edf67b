#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <set>
#include <vector>

#include "gsamp/graph.hpp"
#include "gsamp/model.hpp"
#include "gsamp/rng.hpp"
#include "gsamp/sampler.hpp"
#include "gsamp/spectral.hpp"
#include "oracles.hpp"

using gsamp::GraphFilter;
using gsamp::HyperParams;
using gsamp::NoiseModel;
using gsamp::Posterior;
using gsamp::Rng;
using gsamp::SamplerConfig;
using gsamp::StepRecord;
using gsamp::StopReason;
using gsamp::TrialTrace;

namespace {

GraphFilter test_filter(int n, uint64_t seed, double floor_eps = 0.1) {
  Rng rng(seed);
  const gsamp::Graph g = oracles::random_connected_graph(n, rng);
  const gsamp::Spectrum spec = gsamp::eigendecompose(gsamp::combinatorial_laplacian(g));
  return gsamp::design_highpass(spec, 0.3, 0.2, floor_eps);
}

bool steps_equal(const StepRecord& a, const StepRecord& b) {
  return a.t == b.t && a.node == b.node && a.y == b.y && a.alpha_hat == b.alpha_hat &&
         a.beta_hat == b.beta_hat && a.em_iters == b.em_iters && a.trace_cov == b.trace_cov &&
         a.rel_error == b.rel_error;
}

bool traces_equal(const TrialTrace& a, const TrialTrace& b) {
  if (a.stop_reason != b.stop_reason || a.steps.size() != b.steps.size()) return false;
  for (std::size_t i = 0; i < a.steps.size(); ++i)
    if (!steps_equal(a.steps[i], b.steps[i])) return false;
  return true;
}

}  // namespace

TEST_CASE("relative error of reconstructions") {
  Eigen::VectorXd truth(2);
  truth << 3.0, 4.0;
  CHECK(gsamp::relative_error(truth, truth) == 0.0);
  CHECK(gsamp::relative_error(Eigen::VectorXd::Zero(2), truth) == 1.0);
  Eigen::VectorXd flipped = -truth;
  CHECK(gsamp::relative_error(flipped, truth) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(gsamp::relative_error(Eigen::VectorXd::Zero(3), truth), std::invalid_argument);
  CHECK_THROWS_AS(gsamp::relative_error(truth, Eigen::VectorXd::Zero(2)), std::invalid_argument);
}

TEST_CASE("next node is the largest predictive variance, first index on ties") {
  Posterior post;
  post.mean = Eigen::VectorXd::Zero(3);
  post.cov = Eigen::Vector3d(1.0, 2.0, 3.0).asDiagonal();
  CHECK(gsamp::select_next(post, {1.0, 1.0}) == 2);

  post.cov = Eigen::Vector3d(5.0, 5.0, 1.0).asDiagonal();
  CHECK(gsamp::select_next(post, {1.0, 1.0}) == 0);

  // The constant noise floor cannot change the argmax.
  post.cov = Eigen::Vector3d(0.4, 0.9, 0.2).asDiagonal();
  CHECK(gsamp::select_next(post, {1.0, 0.01}) == gsamp::select_next(post, {1.0, 100.0}));
}

TEST_CASE("stopping rule compares total variance to signal power") {
  Posterior post;
  post.mean = Eigen::VectorXd::Constant(4, 5.0);  // mu'mu = 100
  post.cov = Eigen::MatrixXd::Identity(4, 4) * 0.125;  // trace = 0.5

  SamplerConfig config;
  config.min_samples_before_stop = 5;
  config.stop_threshold = 0.01;
  CHECK(gsamp::stopping_reached(post, config, 5));      // 0.5/100 = 0.005 <= 0.01
  CHECK_FALSE(gsamp::stopping_reached(post, config, 4));  // below the minimum count
  config.stop_threshold = 0.001;
  CHECK_FALSE(gsamp::stopping_reached(post, config, 20));

  config.stop_threshold = 0.0;  // disabled
  CHECK_FALSE(gsamp::stopping_reached(post, config, 50));

  config.stop_threshold = 0.5;
  post.mean.setZero();  // no signal estimate yet: never stop
  CHECK_FALSE(gsamp::stopping_reached(post, config, 50));
}

TEST_CASE("budget-limited trials record every step in order") {
  const GraphFilter filter = test_filter(14, 60);
  Rng truth_rng(61);
  const Eigen::VectorXd truth = gsamp::sample_prior(filter, 2.0, truth_rng);

  SamplerConfig config;
  config.max_samples = 9;
  Rng rng(62);
  const TrialTrace trace = gsamp::run_active(filter, truth, NoiseModel{4.0}, config, rng);
  REQUIRE(trace.steps.size() == 9);
  CHECK(trace.stop_reason == StopReason::Budget);
  for (int t = 0; t < 9; ++t) {
    CHECK(trace.steps[t].t == t + 1);
    CHECK(trace.steps[t].node >= 0);
    CHECK(trace.steps[t].node < 14);
    CHECK(trace.steps[t].alpha_hat > 0.0);
    CHECK(trace.steps[t].beta_hat > 0.0);
    CHECK(trace.steps[t].em_iters >= 1);
    CHECK(trace.steps[t].trace_cov > 0.0);
    CHECK(trace.steps[t].rel_error >= 0.0);
  }
}

TEST_CASE("threshold stopping fires at the minimum sample count when loose") {
  const GraphFilter filter = test_filter(14, 63);
  Rng truth_rng(64);
  const Eigen::VectorXd truth = gsamp::sample_prior(filter, 2.0, truth_rng);

  SamplerConfig config;
  config.max_samples = 40;
  config.stop_threshold = 1e6;
  config.min_samples_before_stop = 3;
  Rng rng(65);
  const TrialTrace trace = gsamp::run_active(filter, truth, NoiseModel{4.0}, config, rng);
  CHECK(trace.stop_reason == StopReason::Threshold);
  CHECK(trace.steps.size() == 3);
}

TEST_CASE("active selection with known parameters visits distinct nodes first") {
  // With near-noiseless data a visited node's predictive variance collapses,
  // so the first n selections must all differ.
  const int n = 12;
  const GraphFilter filter = test_filter(n, 66, 0.3);
  Rng truth_rng(67);
  const double alpha_true = 1.5;
  const Eigen::VectorXd truth = gsamp::sample_prior(filter, alpha_true, truth_rng);

  SamplerConfig config;
  config.max_samples = n;
  config.fixed_params = HyperParams{alpha_true, 1e12};
  Rng rng(68);
  const TrialTrace trace = gsamp::run_active(filter, truth, NoiseModel{1e12}, config, rng);
  REQUIRE(trace.steps.size() == static_cast<std::size_t>(n));
  std::set<int> seen;
  for (const StepRecord& s : trace.steps) seen.insert(s.node);
  CHECK(static_cast<int>(seen.size()) == n);

  // Posterior uncertainty only shrinks as samples accumulate.
  for (std::size_t t = 1; t < trace.steps.size(); ++t)
    CHECK(trace.steps[t].trace_cov <= trace.steps[t - 1].trace_cov + 1e-12);

  // Bypassing estimation reports the fixed values with no EM work.
  for (const StepRecord& s : trace.steps) {
    CHECK(s.alpha_hat == alpha_true);
    CHECK(s.beta_hat == 1e12);
    CHECK(s.em_iters == 0);
  }
}

TEST_CASE("same seed reproduces a trial bitwise, different seed does not") {
  const GraphFilter filter = test_filter(16, 69);
  Rng truth_rng(70);
  const Eigen::VectorXd truth = gsamp::sample_prior(filter, 2.0, truth_rng);
  SamplerConfig config;
  config.max_samples = 10;

  for (bool active : {true, false}) {
    Rng a(71), b(71), c(72);
    const auto run = [&](Rng& r) {
      return active ? gsamp::run_active(filter, truth, NoiseModel{3.0}, config, r)
                    : gsamp::run_random(filter, truth, NoiseModel{3.0}, config, r);
    };
    const TrialTrace ta = run(a), tb = run(b), tc = run(c);
    CHECK(traces_equal(ta, tb));
    CHECK_FALSE(traces_equal(ta, tc));
  }
}

TEST_CASE("EM-in-the-loop trials produce sane estimates") {
  const GraphFilter filter = test_filter(16, 73);
  Rng truth_rng(74);
  const Eigen::VectorXd truth = gsamp::sample_prior(filter, 3.0, truth_rng);

  SamplerConfig config;
  config.max_samples = 20;
  Rng rng(75);
  const TrialTrace trace = gsamp::run_active(filter, truth, NoiseModel{10.0}, config, rng);
  REQUIRE(trace.steps.size() == 20);
  for (const StepRecord& s : trace.steps) {
    CHECK(s.em_iters >= 1);
    CHECK(std::isfinite(s.alpha_hat));
    CHECK(std::isfinite(s.beta_hat));
    CHECK(s.alpha_hat > 0.0);
    CHECK(s.beta_hat > 0.0);
  }
  // Errors should broadly decrease from start to finish on easy instances.
  CHECK(trace.steps.back().rel_error < trace.steps.front().rel_error);
}

TEST_CASE("random selection is uniform over nodes") {
  const int n = 10;
  const GraphFilter filter = test_filter(n, 76);
  Rng truth_rng(77);
  const Eigen::VectorXd truth = gsamp::sample_prior(filter, 2.0, truth_rng);

  SamplerConfig config;
  config.max_samples = 10000;
  config.fixed_params = HyperParams{2.0, 5.0};  // skip EM: keep this test fast
  Rng rng(78);
  const TrialTrace trace = gsamp::run_random(filter, truth, NoiseModel{5.0}, config, rng);

  std::vector<int> counts(n, 0);
  for (const StepRecord& s : trace.steps) ++counts[s.node];
  const double expected = 10000.0 / n;
  double chi2 = 0.0;
  for (int c : counts) {
    CHECK(std::abs(c - expected) <= 150.0);
    chi2 += (c - expected) * (c - expected) / expected;
  }
  CHECK(chi2 < 35.0);  // 9 dof; far beyond any sane quantile
}

TEST_CASE("active and random pipelines share the measurement mechanics") {
  // With a random first node, step one of the active sampler is distributed
  // exactly like the random sampler's: same seed, same record.
  const GraphFilter filter = test_filter(12, 79);
  Rng truth_rng(80);
  const Eigen::VectorXd truth = gsamp::sample_prior(filter, 2.0, truth_rng);

  SamplerConfig config;
  config.max_samples = 1;
  config.first_node_rule = gsamp::FirstNodeRule::Random;
  Rng a(81), b(81);
  const TrialTrace active = gsamp::run_active(filter, truth, NoiseModel{4.0}, config, a);
  const TrialTrace random = gsamp::run_random(filter, truth, NoiseModel{4.0}, config, b);
  REQUIRE(active.steps.size() == 1);
  REQUIRE(random.steps.size() == 1);
  CHECK(steps_equal(active.steps[0], random.steps[0]));
}

TEST_CASE("trial runner validates its inputs") {
  const GraphFilter filter = test_filter(6, 82);
  SamplerConfig config;
  Rng rng(83);
  CHECK_THROWS_AS(
      gsamp::run_active(filter, Eigen::VectorXd::Zero(5), NoiseModel{1.0}, config, rng),
      std::invalid_argument);
  config.max_samples = 0;
  CHECK_THROWS_AS(
      gsamp::run_active(filter, Eigen::VectorXd::Zero(6), NoiseModel{1.0}, config, rng),
      std::invalid_argument);
}

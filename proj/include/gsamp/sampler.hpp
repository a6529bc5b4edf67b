#pragma once

#include <optional>
#include <vector>

#include "gsamp/inference.hpp"
#include "gsamp/model.hpp"
#include "gsamp/rng.hpp"
#include "gsamp/spectral.hpp"

namespace gsamp {

enum class FirstNodeRule { MaxPriorVariance, Random };
enum class StopReason { Budget, Threshold };

struct SamplerConfig {
  int max_samples = 100;            // sampling budget, >= 1
  double stop_threshold = 0.0;      // c; <= 0 disables the stopping rule
  int min_samples_before_stop = 5;  // guard: never stop before this many samples
  double em_tol = 1e-6;
  int em_max_iter = 200;
  FirstNodeRule first_node_rule = FirstNodeRule::MaxPriorVariance;
  HyperParams init_params{1.0, 1.0};
  // When set, EM is bypassed and the posterior is computed at these fixed
  // hyperparameters. Used to test the sampling loop in isolation.
  std::optional<HyperParams> fixed_params;
};

struct StepRecord {
  int t = 0;
  int node = 0;
  double y = 0.0;
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
  int em_iters = 0;
  double trace_cov = 0.0;
  double rel_error = 0.0;
};

struct TrialTrace {
  std::vector<StepRecord> steps;
  StopReason stop_reason = StopReason::Budget;
};

/// ||estimate - truth|| / ||truth||. Requires a nonzero truth.
double relative_error(const Signal& estimate, const Signal& truth);

/// Uncertainty sampling: the node of maximum predictive variance
/// C_nn + 1/beta. Ties break to the lowest index; repeats are allowed.
int select_next(const Posterior& post, const HyperParams& params);

/// Posterior-uncertainty stopping rule tr(C) / (mu^T mu) <= c, guarded by
/// the minimum-sample count and a nonzero estimate.
bool stopping_reached(const Posterior& post, const SamplerConfig& config, int samples);

/// Online active sampling: observe, re-fit (alpha, beta) by warm-started EM,
/// recompute the posterior, record the step, then pick the next node by
/// predictive uncertainty. Runs until the budget or the stopping rule.
TrialTrace run_active(const GraphFilter& filter, const Signal& truth,
                      const NoiseModel& noise, const SamplerConfig& config, Rng& rng);

/// Baseline with the identical estimation pipeline; node selection is
/// replaced by a uniform draw (with replacement) at every step.
TrialTrace run_random(const GraphFilter& filter, const Signal& truth,
                      const NoiseModel& noise, const SamplerConfig& config, Rng& rng);

}  // namespace gsamp

#include "gsamp/sampler.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace gsamp {

double relative_error(const Signal& estimate, const Signal& truth) {
  if (estimate.size() != truth.size())
    throw std::invalid_argument("relative_error: size mismatch");
  const double denom = truth.norm();
  if (!(denom > 0.0)) throw std::invalid_argument("relative_error: truth must be nonzero");
  return (estimate - truth).norm() / denom;
}

int select_next(const Posterior& post, const HyperParams& params) {
  const auto [means, variances] = predictive(post, params);
  (void)means;
  int best = 0;
  for (int i = 1; i < static_cast<int>(variances.size()); ++i)
    if (variances(i) > variances(best)) best = i;  // strict: ties keep the lowest index
  return best;
}

bool stopping_reached(const Posterior& post, const SamplerConfig& config, int samples) {
  if (!(config.stop_threshold > 0.0)) return false;
  if (samples < config.min_samples_before_stop) return false;
  const double energy = post.mean.squaredNorm();
  if (!(energy > 1e-12)) return false;
  return post.cov.trace() / energy <= config.stop_threshold;
}

namespace {

int argmax_lowest(const Eigen::VectorXd& v) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(v.size()); ++i)
    if (v(i) > v(best)) best = i;
  return best;
}

void check_trial_inputs(const GraphFilter& filter, const Signal& truth, const NoiseModel& noise,
                        const SamplerConfig& config) {
  if (truth.size() != filter.size())
    throw std::invalid_argument("sampler: truth length must match the filter size");
  if (!(noise.beta > 0.0) || !std::isfinite(noise.beta))
    throw std::invalid_argument("sampler: noise precision must be positive and finite");
  if (config.max_samples < 1) throw std::invalid_argument("sampler: max_samples must be >= 1");
  if (config.min_samples_before_stop < 0)
    throw std::invalid_argument("sampler: min_samples_before_stop must be >= 0");
}

/// One trial of the online loop, shared by both methods. Per step: observe
/// the selected node, refresh the hyperparameter estimates (warm-started EM,
/// or the fixed values in bypass mode), recompute the posterior, record, and
/// pick the next node.
TrialTrace run_trial(const GraphFilter& filter, const Signal& truth, const NoiseModel& noise,
                     const SamplerConfig& config, Rng& rng, bool uniform_selection) {
  check_trial_inputs(filter, truth, noise, config);
  const int n = filter.size();

  ObservationLog log(n);
  HyperParams params = config.fixed_params ? *config.fixed_params : config.init_params;

  int node;
  if (uniform_selection || config.first_node_rule == FirstNodeRule::Random)
    node = rng.uniform_int(n);
  else
    node = argmax_lowest(filter.prior_variance_diag());

  TrialTrace trace;
  trace.stop_reason = StopReason::Budget;
  for (int t = 1; t <= config.max_samples; ++t) {
    const double y = observe(truth, node, noise, rng);
    log.append(node, y);

    int em_iters = 0;
    Posterior post;
    if (config.fixed_params) {
      post = posterior(filter.H2, log, params);
    } else {
      EMResult em = em_fit(filter.H2, log, params, config.em_tol, config.em_max_iter);
      params = em.params;
      em_iters = em.iterations;
      post = std::move(em.posterior);
    }

    StepRecord rec;
    rec.t = t;
    rec.node = node;
    rec.y = y;
    rec.alpha_hat = params.alpha;
    rec.beta_hat = params.beta;
    rec.em_iters = em_iters;
    rec.trace_cov = post.cov.trace();
    rec.rel_error = relative_error(post.mean, truth);
    trace.steps.push_back(rec);

    if (stopping_reached(post, config, t)) {
      trace.stop_reason = StopReason::Threshold;
      break;
    }
    node = uniform_selection ? rng.uniform_int(n) : select_next(post, params);
  }
  return trace;
}

}  // namespace

TrialTrace run_active(const GraphFilter& filter, const Signal& truth, const NoiseModel& noise,
                      const SamplerConfig& config, Rng& rng) {
  return run_trial(filter, truth, noise, config, rng, /*uniform_selection=*/false);
}

TrialTrace run_random(const GraphFilter& filter, const Signal& truth, const NoiseModel& noise,
                      const SamplerConfig& config, Rng& rng) {
  return run_trial(filter, truth, noise, config, rng, /*uniform_selection=*/true);
}

}  // namespace gsamp

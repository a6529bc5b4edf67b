#pragma once

#include <Eigen/Dense>

#include "gsamp/rng.hpp"
#include "gsamp/spectral.hpp"

namespace gsamp {

/// One real value per node.
using Signal = Eigen::VectorXd;

struct NoiseModel {
  double beta = 1.0;  // observation noise precision, > 0
};

/// Draw from the smoothness prior N(0, alpha^{-1} H^{-2}) using the exact
/// spectral square root: f = U diag(1/(sqrt(alpha) h)) z, z iid standard
/// normal.
Signal sample_prior(const GraphFilter& filter, double alpha, Rng& rng);

/// Noisy point observation y = f_node + w, w ~ N(0, 1/beta).
double observe(const Signal& f, int node, const NoiseModel& noise, Rng& rng);

/// Expected per-node signal power under the prior:
/// trace(alpha^{-1} H^{-2}) / n.
double mean_prior_power(const GraphFilter& filter, double alpha);

/// Noise precision hitting a target SNR, with SNR defined as expected
/// per-node signal power over noise variance:
/// beta = 10^(snr_db/10) / mean_prior_power.
double beta_for_snr(const GraphFilter& filter, double alpha, double snr_db);

}  // namespace gsamp

#include "gsamp/model.hpp"

#include <cmath>
#include <stdexcept>

namespace gsamp {

Signal sample_prior(const GraphFilter& filter, double alpha, Rng& rng) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("sample_prior: alpha must be positive and finite");
  const int n = filter.size();
  const double sqrt_alpha = std::sqrt(alpha);
  Eigen::VectorXd coeffs(n);
  for (int k = 0; k < n; ++k) coeffs(k) = rng.normal() / (sqrt_alpha * filter.response(k));
  return filter.spectrum.eigenvectors * coeffs;
}

double observe(const Signal& f, int node, const NoiseModel& noise, Rng& rng) {
  if (node < 0 || node >= f.size()) throw std::invalid_argument("observe: node out of range");
  if (!(noise.beta > 0.0) || !std::isfinite(noise.beta))
    throw std::invalid_argument("observe: noise precision must be positive and finite");
  return f(node) + rng.normal() / std::sqrt(noise.beta);
}

double mean_prior_power(const GraphFilter& filter, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("mean_prior_power: alpha must be positive and finite");
  // trace(alpha^{-1} H^{-2}) = sum_k 1/(alpha h_k^2) by orthonormality.
  const double trace = filter.response.array().square().inverse().sum() / alpha;
  return trace / filter.size();
}

double beta_for_snr(const GraphFilter& filter, double alpha, double snr_db) {
  return std::pow(10.0, snr_db / 10.0) / mean_prior_power(filter, alpha);
}

}  // namespace gsamp

#include "gsamp/inference.hpp"

#include <cmath>
#include <stdexcept>

#include "gsamp/errors.hpp"

namespace gsamp {

ObservationLog::ObservationLog(int num_nodes) {
  if (num_nodes <= 0) throw std::invalid_argument("ObservationLog: node count must be positive");
  counts_ = Eigen::VectorXi::Zero(num_nodes);
  sums_ = Eigen::VectorXd::Zero(num_nodes);
  sumsq_ = Eigen::VectorXd::Zero(num_nodes);
}

void ObservationLog::append(int node, double value) {
  if (node < 0 || node >= num_nodes())
    throw std::invalid_argument("ObservationLog: node out of range");
  if (!std::isfinite(value)) throw std::invalid_argument("ObservationLog: value must be finite");
  entries_.push_back({node, value});
  counts_(node) += 1;
  sums_(node) += value;
  sumsq_(node) += value * value;
}

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

void check_params(const HyperParams& p) {
  if (!(p.alpha > 0.0) || !std::isfinite(p.alpha) || !(p.beta > 0.0) || !std::isfinite(p.beta))
    throw std::invalid_argument("hyperparameters must be positive and finite");
}

void check_sizes(const SymmetricMatrix& H2, const ObservationLog& log) {
  if (H2.rows() != H2.cols()) throw std::invalid_argument("H2 must be square");
  if (H2.rows() != log.num_nodes())
    throw std::invalid_argument("H2 size must match the observation log's node count");
}

// Cholesky factor of the information matrix A = alpha H^2 + beta diag(counts).
Eigen::LLT<Eigen::MatrixXd> factor_information(const SymmetricMatrix& H2,
                                               const ObservationLog& log,
                                               const HyperParams& p) {
  Eigen::MatrixXd a = p.alpha * H2;
  a.diagonal() += p.beta * log.counts().cast<double>();
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success)
    throw NumericalError("posterior: information matrix is not positive definite");
  return llt;
}

Posterior posterior_from(const Eigen::LLT<Eigen::MatrixXd>& llt, const ObservationLog& log,
                         const HyperParams& p) {
  Posterior post;
  post.cov = spd_inverse(llt);
  post.mean = p.beta * (post.cov * log.sums());
  return post;
}

// log p(y | Psi, alpha, beta) for y ~ N(0, beta^{-1} I + Psi (alpha H^2)^{-1} Psi^T),
// rewritten through the information matrix A so only N x N factorizations are
// needed:
//   log det(cov of y) = -M log beta + log det A - N log alpha - log det H^2
//   y^T (cov of y)^{-1} y = beta sum(y^2) - beta sums.mu,  mu = beta A^{-1} sums.
double evidence_value(const Eigen::LLT<Eigen::MatrixXd>& llt, double logdet_H2,
                      const ObservationLog& log, const HyperParams& p,
                      const Eigen::VectorXd& mean) {
  const int n = log.num_nodes();
  const int m = log.sample_count();
  const double sum_y2 = log.sum_squares().sum();
  const double quad = p.beta * sum_y2 - p.beta * log.sums().dot(mean);
  return 0.5 * (m * (std::log(p.beta) - kLog2Pi) + n * std::log(p.alpha) + logdet_H2 -
                logdet(llt) - quad);
}

double logdet_spd(const SymmetricMatrix& m) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success)
    throw NumericalError("log_evidence: H^2 must be positive definite");
  return logdet(llt);
}

}  // namespace

Posterior posterior(const SymmetricMatrix& H2, const ObservationLog& log,
                    const HyperParams& params) {
  check_params(params);
  check_sizes(H2, log);
  return posterior_from(factor_information(H2, log, params), log, params);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> predictive(const Posterior& post,
                                                       const HyperParams& params) {
  check_params(params);
  Eigen::VectorXd variances = post.cov.diagonal().array() + 1.0 / params.beta;
  return {post.mean, std::move(variances)};
}

double log_evidence(const SymmetricMatrix& H2, const ObservationLog& log,
                    const HyperParams& params) {
  check_params(params);
  check_sizes(H2, log);
  if (log.sample_count() == 0) return 0.0;
  const Eigen::LLT<Eigen::MatrixXd> llt = factor_information(H2, log, params);
  const Eigen::VectorXd mean = params.beta * llt.solve(log.sums());
  return evidence_value(llt, logdet_spd(H2), log, params, mean);
}

EMResult em_fit(const SymmetricMatrix& H2, const ObservationLog& log, HyperParams init,
                double tol, int max_iter) {
  check_params(init);
  check_sizes(H2, log);
  if (log.sample_count() == 0)
    throw std::invalid_argument("em_fit: at least one observation is required");
  if (!(tol > 0.0)) throw std::invalid_argument("em_fit: tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("em_fit: max_iter must be >= 1");

  const int n = log.num_nodes();
  const int m = log.sample_count();
  const double logdet_H2 = logdet_spd(H2);
  const Eigen::VectorXd counts = log.counts().cast<double>();

  EMResult res;
  res.params = init;

  auto e_step = [&](const HyperParams& p) {
    Eigen::LLT<Eigen::MatrixXd> llt = factor_information(H2, log, p);
    Posterior post = posterior_from(llt, log, p);
    res.evidence_trace.push_back(evidence_value(llt, logdet_H2, log, p, post.mean));
    res.param_trace.push_back(p);
    return post;
  };

  res.posterior = e_step(res.params);
  for (int k = 1; k <= max_iter; ++k) {
    const Posterior& post = res.posterior;

    // M step: closed-form maximizers of the expected complete-data
    // log likelihood under the current posterior.
    const double tr_h2_cov = H2.cwiseProduct(post.cov).sum();
    const double mu_h2_mu = post.mean.dot(H2 * post.mean);
    const double alpha_new = n / (tr_h2_cov + mu_h2_mu);

    // ||y - Psi mu||^2 expanded per node through the sufficient statistics,
    // so the result cannot depend on the entry order. Each node's term is a
    // sum of squares; clamp away the tiny negatives rounding can produce.
    double residual = 0.0;
    for (int i = 0; i < n; ++i) {
      const double term = log.sum_squares()(i) - 2.0 * post.mean(i) * log.sums()(i) +
                          counts(i) * post.mean(i) * post.mean(i);
      residual += std::max(0.0, term);
    }
    const double tr_psi_cov = counts.dot(post.cov.diagonal());
    double beta_new = m / (residual + tr_psi_cov);
    if (beta_new > kBetaCap) beta_new = kBetaCap;

    if (!std::isfinite(alpha_new) || !(alpha_new > 0.0) || !std::isfinite(beta_new) ||
        !(beta_new > 0.0))
      throw NumericalError("em_fit: hyperparameter update left the positive domain");

    const double rel_alpha = std::abs(alpha_new - res.params.alpha) / res.params.alpha;
    const double rel_beta = std::abs(beta_new - res.params.beta) / res.params.beta;
    res.params = {alpha_new, beta_new};
    res.iterations = k;
    res.posterior = e_step(res.params);
    if (rel_alpha < tol && rel_beta < tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace gsamp

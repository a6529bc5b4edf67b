#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gsamp/linalg.hpp"

namespace gsamp {

struct HyperParams {
  double alpha = 1.0;  // signal-smoothness precision
  double beta = 1.0;   // observation-noise precision
};

/// Cap applied to the noise-precision update so pathological noise-free
/// configurations cannot overflow it.
inline constexpr double kBetaCap = 1e12;

/// Running sampling history. Keeps the raw entry sequence plus the per-node
/// sufficient statistics (observation counts, value sums, value sums of
/// squares); every inference quantity downstream is a function of the
/// sufficient statistics only, so entry order never changes results.
class ObservationLog {
 public:
  struct Entry {
    int node;
    double value;
  };

  explicit ObservationLog(int num_nodes);

  void append(int node, double value);

  int num_nodes() const { return static_cast<int>(counts_.size()); }
  int sample_count() const { return static_cast<int>(entries_.size()); }

  const std::vector<Entry>& entries() const { return entries_; }
  const Eigen::VectorXi& counts() const { return counts_; }        // diagonal of Psi^T Psi
  const Eigen::VectorXd& sums() const { return sums_; }            // Psi^T y
  const Eigen::VectorXd& sum_squares() const { return sumsq_; }    // per-node sum of y^2

 private:
  std::vector<Entry> entries_;
  Eigen::VectorXi counts_;
  Eigen::VectorXd sums_;
  Eigen::VectorXd sumsq_;
};

/// Gaussian belief over the signal.
struct Posterior {
  Eigen::VectorXd mean;
  SymmetricMatrix cov;
};

/// Closed-form Gaussian posterior:
///   C  = (alpha H^2 + beta Psi^T Psi)^{-1}   (SPD solve; Psi^T Psi diagonal)
///   mu = beta C Psi^T y.
/// With no data this is the prior: mu = 0, C = (alpha H^2)^{-1}.
Posterior posterior(const SymmetricMatrix& H2, const ObservationLog& log,
                    const HyperParams& params);

/// Predictive distribution of a noisy observation at each node:
/// means = mu, variances_n = C_nn + 1/beta.
std::pair<Eigen::VectorXd, Eigen::VectorXd> predictive(const Posterior& post,
                                                       const HyperParams& params);

/// Log marginal likelihood log p(y | Psi, alpha, beta) of the observed
/// values under N(0, beta^{-1} I + Psi (alpha H^2)^{-1} Psi^T), evaluated
/// through the information-form identities (no M x M matrix is formed).
/// Empty log -> 0.
double log_evidence(const SymmetricMatrix& H2, const ObservationLog& log,
                    const HyperParams& params);

struct EMResult {
  HyperParams params;
  Posterior posterior;          // at the returned params (final E step)
  int iterations = 0;
  bool converged = false;
  // Aligned traces: entry 0 is the initial point, entry k the point after
  // the k-th M step. evidence_trace is nondecreasing up to numerical slack.
  std::vector<double> evidence_trace;
  std::vector<HyperParams> param_trace;
};

/// Maximum-likelihood estimation of (alpha, beta) by EM. The E step is the
/// closed-form posterior at the current estimates; the M step maximizes the
/// expected complete-data log likelihood:
///   alpha <- n / (tr(H^2 C) + mu^T H^2 mu)
///   beta  <- M / (||y - Psi mu||^2 + tr(Psi^T Psi C))
/// Iterates until the relative change of both parameters drops below tol or
/// max_iter is reached. Requires at least one observation.
EMResult em_fit(const SymmetricMatrix& H2, const ObservationLog& log,
                HyperParams init, double tol = 1e-6, int max_iter = 200);

}  // namespace gsamp

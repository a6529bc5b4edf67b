// Independent reference implementations used to check the production code.
// Everything here deliberately takes a different computational route than the
// library: explicit joint-Gaussian conditioning instead of information-form
// posteriors, direct density evaluation instead of the determinant-lemma
// evidence, pivoted LU instead of Cholesky.
#pragma once

#include <cmath>
#include <cstring>
#include <set>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gsamp/graph.hpp"
#include "gsamp/inference.hpp"
#include "gsamp/rng.hpp"
#include "gsamp/spectral.hpp"

namespace oracles {

inline bool bitwise_equal(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

/// Random connected weighted graph: a random spanning tree plus extra edges.
inline gsamp::Graph random_connected_graph(int n, gsamp::Rng& rng) {
  std::vector<gsamp::Edge> edges;
  std::set<std::pair<int, int>> present;
  for (int v = 1; v < n; ++v) {
    const int u = rng.uniform_int(v);
    edges.push_back({u, v, rng.uniform(0.5, 1.5)});
    present.insert({u, v});
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (present.count({i, j})) continue;
      if (rng.uniform() < 0.3) edges.push_back({i, j, rng.uniform(0.5, 1.5)});
    }
  return gsamp::Graph(n, std::move(edges));
}

/// High-pass filter with moderate parameters (floors well away from zero so
/// small-instance comparisons stay well-conditioned).
inline gsamp::GraphFilter random_filter(const gsamp::Graph& g, gsamp::Rng& rng) {
  const gsamp::Spectrum spec = gsamp::eigendecompose(gsamp::combinatorial_laplacian(g));
  return gsamp::design_highpass(spec, rng.uniform(0.2, 0.6), rng.uniform(0.05, 0.3),
                                rng.uniform(0.05, 0.3));
}

struct Conditioned {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

/// Brute-force posterior: build the (N+M)-dimensional joint normal of
/// (f, y) and condition on y directly.
inline Conditioned condition_joint(const Eigen::MatrixXd& H2,
                                   const std::vector<std::pair<int, double>>& obs, double alpha,
                                   double beta) {
  const int n = static_cast<int>(H2.rows());
  const int m = static_cast<int>(obs.size());
  const Eigen::MatrixXd prior_cov = Eigen::MatrixXd(alpha * H2).fullPivLu().inverse();
  if (m == 0) return {Eigen::VectorXd::Zero(n), prior_cov};

  Eigen::MatrixXd psi = Eigen::MatrixXd::Zero(m, n);
  Eigen::VectorXd y(m);
  for (int k = 0; k < m; ++k) {
    psi(k, obs[k].first) = 1.0;
    y(k) = obs[k].second;
  }
  const Eigen::MatrixXd cross = prior_cov * psi.transpose();           // cov(f, y)
  const Eigen::MatrixXd yy =
      psi * cross + Eigen::MatrixXd::Identity(m, m) / beta;            // cov(y, y)
  const Eigen::MatrixXd gain = cross * yy.fullPivLu().inverse();
  return {gain * y, prior_cov - gain * cross.transpose()};
}

/// Direct log density of y under N(0, cov).
inline double mvn_logpdf(const Eigen::VectorXd& y, const Eigen::MatrixXd& cov) {
  const int m = static_cast<int>(y.size());
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(cov);
  const double logdet = std::log(std::abs(lu.determinant()));
  const double quad = y.dot(lu.solve(y));
  constexpr double log2pi = 1.8378770664093454835606594728112;
  return -0.5 * (m * log2pi + logdet + quad);
}

/// Marginal covariance of the observed values: beta^{-1} I + Psi S Psi^T
/// with S the prior covariance computed by pivoted LU.
inline Eigen::MatrixXd marginal_cov(const Eigen::MatrixXd& H2,
                                    const std::vector<std::pair<int, double>>& obs, double alpha,
                                    double beta) {
  const int m = static_cast<int>(obs.size());
  const Eigen::MatrixXd prior_cov = Eigen::MatrixXd(alpha * H2).fullPivLu().inverse();
  Eigen::MatrixXd yy(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      yy(a, b) = prior_cov(obs[a].first, obs[b].first) + (a == b ? 1.0 / beta : 0.0);
  return yy;
}

inline gsamp::ObservationLog make_log(int n, const std::vector<std::pair<int, double>>& obs) {
  gsamp::ObservationLog log(n);
  for (const auto& [node, value] : obs) log.append(node, value);
  return log;
}

}  // namespace oracles

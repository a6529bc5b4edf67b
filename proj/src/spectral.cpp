#include "gsamp/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "gsamp/errors.hpp"

namespace gsamp {

Spectrum eigendecompose(const SymmetricMatrix& laplacian) {
  if (laplacian.rows() != laplacian.cols() || laplacian.rows() == 0)
    throw std::invalid_argument("eigendecompose: matrix must be square and nonempty");
  if (!is_exactly_symmetric(laplacian))
    throw std::invalid_argument("eigendecompose: matrix must have an exact symmetric mirror");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigendecompose: eigensolver did not converge");

  Spectrum spec;
  spec.eigenvalues = solver.eigenvalues();  // ascending
  spec.eigenvectors = solver.eigenvectors();
  // Sign convention: first component of each column with magnitude above
  // 1e-12 is made positive, so serialized spectra are reproducible.
  for (Eigen::Index k = 0; k < spec.eigenvectors.cols(); ++k) {
    for (Eigen::Index i = 0; i < spec.eigenvectors.rows(); ++i) {
      const double v = spec.eigenvectors(i, k);
      if (std::abs(v) > 1e-12) {
        if (v < 0.0) spec.eigenvectors.col(k) = -spec.eigenvectors.col(k);
        break;
      }
    }
  }
  return spec;
}

GraphFilter make_filter(Spectrum spectrum, Eigen::VectorXd response, double cutoff,
                        double transition_width) {
  const int n = spectrum.size();
  if (n == 0 || spectrum.eigenvectors.rows() != n || spectrum.eigenvectors.cols() != n)
    throw std::invalid_argument("make_filter: malformed spectrum");
  if (response.size() != n)
    throw std::invalid_argument("make_filter: response length must match spectrum size");
  for (int k = 0; k < n; ++k) {
    if (!std::isfinite(response(k)) || response(k) <= 0.0 || response(k) > 1.0)
      throw std::invalid_argument("make_filter: response values must lie in (0, 1]");
    if (k > 0 && response(k) < response(k - 1))
      throw std::invalid_argument("make_filter: response must be nondecreasing (high-pass)");
  }
  if (std::abs(response.maxCoeff() - 1.0) > 1e-12)
    throw std::invalid_argument("make_filter: unit gain requires max response 1");

  GraphFilter f;
  f.spectrum = std::move(spectrum);
  f.response = std::move(response);
  f.floor_eps = f.response.minCoeff();
  f.cutoff = cutoff;
  f.transition_width = transition_width;

  const Eigen::MatrixXd& u = f.spectrum.eigenvectors;
  f.H = u * f.response.asDiagonal() * u.transpose();
  symmetrize(f.H);
  f.H2 = u * f.response.array().square().matrix().asDiagonal() * u.transpose();
  symmetrize(f.H2);
  return f;
}

GraphFilter design_highpass(const Spectrum& spectrum, double cutoff_frac,
                            double transition_frac, double floor_eps) {
  if (!(cutoff_frac > 0.0 && cutoff_frac < 1.0))
    throw ConfigError("filter: cutoff_frac must be in (0, 1)");
  if (!(transition_frac >= 0.0)) throw ConfigError("filter: transition_frac must be >= 0");
  if (!(floor_eps > 0.0 && floor_eps < 1.0))
    throw ConfigError("filter: floor_eps must be in (0, 1)");
  if (cutoff_frac + transition_frac / 2.0 > 1.0)
    throw ConfigError("filter: cutoff_frac + transition_frac/2 must be <= 1 so the response reaches unit gain");

  const int n = spectrum.size();
  if (n == 0) throw std::invalid_argument("design_highpass: empty spectrum");
  const double lambda_max = spectrum.eigenvalues(n - 1);
  if (!(lambda_max > 0.0))
    throw std::invalid_argument("design_highpass: spectrum must have a positive top eigenvalue");

  const double cutoff = cutoff_frac * lambda_max;
  const double width = transition_frac * lambda_max;
  Eigen::VectorXd response(n);
  for (int k = 0; k < n; ++k) {
    const double lambda = spectrum.eigenvalues(k);
    double h;
    if (width == 0.0) {
      h = lambda >= cutoff ? 1.0 : floor_eps;
    } else {
      h = (lambda - cutoff + width / 2.0) / width;  // 0 -> 1 across the band
      h = std::min(1.0, std::max(floor_eps, h));
    }
    response(k) = h;
  }
  return make_filter(spectrum, std::move(response), cutoff, width);
}

SymmetricMatrix prior_covariance(const GraphFilter& filter, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("prior_covariance: alpha must be positive and finite");
  const Eigen::MatrixXd& u = filter.spectrum.eigenvectors;
  const Eigen::VectorXd gains =
      (alpha * filter.response.array().square()).inverse().matrix();
  SymmetricMatrix cov = u * gains.asDiagonal() * u.transpose();
  symmetrize(cov);
  return cov;
}

Eigen::VectorXd GraphFilter::prior_variance_diag() const {
  const Eigen::VectorXd inv_h2 = response.array().square().inverse().matrix();
  return spectrum.eigenvectors.array().square().matrix() * inv_h2;
}

}  // namespace gsamp

#pragma once

#include <Eigen/Dense>

#include "gsamp/linalg.hpp"

namespace gsamp {

/// Full symmetric eigendecomposition of a Laplacian: the graph Fourier
/// basis. Eigenvalues ascending; eigenvector columns orthonormal with the
/// first nonzero component of each column made positive so serialized
/// spectra are reproducible.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;

  int size() const { return static_cast<int>(eigenvalues.size()); }
};

Spectrum eigendecompose(const SymmetricMatrix& laplacian);

/// Unit-gain high-pass spectral filter. response holds h(lambda_k) in
/// [floor_eps, 1]; H = U diag(h) U^T and H2 = U diag(h^2) U^T are assembled
/// spectrally with exact symmetric mirrors. The positive floor keeps H and
/// H^2 invertible so the induced Gaussian prior is proper.
struct GraphFilter {
  Spectrum spectrum;
  Eigen::VectorXd response;
  SymmetricMatrix H;
  SymmetricMatrix H2;
  double floor_eps = 0.0;        // min_k h(lambda_k)
  double cutoff = 0.0;           // ramp center, in eigenvalue units
  double transition_width = 0.0; // ramp width, in eigenvalue units

  int size() const { return spectrum.size(); }

  /// diag((H^2)^{-1}): per-node prior variance up to the 1/alpha factor.
  Eigen::VectorXd prior_variance_diag() const;
};

/// Wrap a spectrum and an explicit response vector into a filter.
/// Requires every response value in (0, 1], max exactly 1 (unit gain), and
/// the response nondecreasing in the eigenvalue order.
GraphFilter make_filter(Spectrum spectrum, Eigen::VectorXd response,
                        double cutoff = 0.0, double transition_width = 0.0);

/// Piecewise-linear high-pass response on the spectrum: floor_eps up to
/// lambda_c - w/2, a linear ramp across the transition band, 1 from
/// lambda_c + w/2 on, with lambda_c = cutoff_frac * lambda_max and
/// w = transition_frac * lambda_max. Requires cutoff_frac + transition_frac/2
/// <= 1 so the top of the spectrum reaches unit gain.
GraphFilter design_highpass(const Spectrum& spectrum, double cutoff_frac,
                            double transition_frac, double floor_eps);

/// Prior covariance alpha^{-1} H^{-2} = U diag(1/(alpha h^2)) U^T.
SymmetricMatrix prior_covariance(const GraphFilter& filter, double alpha);

}  // namespace gsamp

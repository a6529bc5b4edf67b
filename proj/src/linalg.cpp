#include "gsamp/linalg.hpp"

#include <cmath>
#include <stdexcept>

#ifdef GSAMP_HAVE_OPENMP
#include <omp.h>
#endif

#include "gsamp/errors.hpp"

namespace gsamp {

void symmetrize(Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("symmetrize: matrix must be square");
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = j + 1; i < n; ++i) m(j, i) = m(i, j);
}

bool is_exactly_symmetric(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = j + 1; i < m.rows(); ++i)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

double logdet(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  if (llt.info() != Eigen::Success)
    throw NumericalError("logdet: Cholesky factorization failed");
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

namespace {

// Solves A X = I column-block by column-block using a precomputed Cholesky
// factor. The block width is fixed (not derived from the thread count) so
// each block's solve performs the same floating-point operations regardless
// of how blocks are assigned to threads.
constexpr Eigen::Index kInverseBlockCols = 64;

void solve_identity_block(const Eigen::LLT<Eigen::MatrixXd>& llt,
                          Eigen::MatrixXd& out, Eigen::Index col0,
                          Eigen::Index ncols) {
  const Eigen::Index n = out.rows();
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n, ncols);
  for (Eigen::Index k = 0; k < ncols; ++k) rhs(col0 + k, k) = 1.0;
  out.middleCols(col0, ncols) = llt.solve(rhs);
}

void finalize_inverse(Eigen::MatrixXd& inv) {
  // The solve is not exactly symmetric; mirror the lower triangle so callers
  // can rely on bit-level symmetry.
  symmetrize(inv);
}

}  // namespace

SymmetricMatrix spd_inverse_serial(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  if (llt.info() != Eigen::Success)
    throw NumericalError("spd_inverse: Cholesky factorization failed");
  const Eigen::Index n = llt.matrixLLT().rows();
  Eigen::MatrixXd inv(n, n);
  for (Eigen::Index c = 0; c < n; c += kInverseBlockCols)
    solve_identity_block(llt, inv, c, std::min(kInverseBlockCols, n - c));
  finalize_inverse(inv);
  return inv;
}

SymmetricMatrix spd_inverse_omp(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  if (llt.info() != Eigen::Success)
    throw NumericalError("spd_inverse: Cholesky factorization failed");
  const Eigen::Index n = llt.matrixLLT().rows();
  Eigen::MatrixXd inv(n, n);
  const Eigen::Index nblocks = (n + kInverseBlockCols - 1) / kInverseBlockCols;
#ifdef GSAMP_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (Eigen::Index b = 0; b < nblocks; ++b) {
    const Eigen::Index c = b * kInverseBlockCols;
    solve_identity_block(llt, inv, c, std::min(kInverseBlockCols, n - c));
  }
  finalize_inverse(inv);
  return inv;
}

SymmetricMatrix spd_inverse(const Eigen::LLT<Eigen::MatrixXd>& llt) {
#ifdef GSAMP_HAVE_OPENMP
  if (omp_get_max_threads() > 1 && !omp_in_parallel()) return spd_inverse_omp(llt);
#endif
  return spd_inverse_serial(llt);
}

}  // namespace gsamp

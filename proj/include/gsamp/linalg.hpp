#pragma once

#include <Eigen/Dense>

namespace gsamp {

// Dense symmetric matrix. Producers are required to make the mirror exact
// (entry (i,j) bit-equal to (j,i)); use symmetrize() after any assembly that
// can leave the triangles apart by rounding.
using SymmetricMatrix = Eigen::MatrixXd;

/// Mirror the lower triangle into the upper one, making a(i,j) == a(j,i)
/// hold exactly.
void symmetrize(Eigen::MatrixXd& a);

bool is_exactly_symmetric(const Eigen::MatrixXd& a);

/// log det(A) from a Cholesky factorization of A.
double logdet(const Eigen::LLT<Eigen::MatrixXd>& llt);

// SPD inverse from a Cholesky factor, computed in fixed column blocks.
// The serial and OpenMP variants perform identical per-block arithmetic, so
// their results match bit for bit for any thread count. The OpenMP variant
// is the production kernel; the serial one is the reference used by tests
// and the benchmark.
Eigen::MatrixXd spd_inverse_serial(const Eigen::LLT<Eigen::MatrixXd>& llt);
Eigen::MatrixXd spd_inverse_omp(const Eigen::LLT<Eigen::MatrixXd>& llt);

/// Production entry point: OpenMP kernel when compiled with OpenMP support,
/// serial reference otherwise. Result has an exact symmetric mirror.
Eigen::MatrixXd spd_inverse(const Eigen::LLT<Eigen::MatrixXd>& llt);

}  // namespace gsamp

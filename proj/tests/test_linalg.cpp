#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "gsamp/errors.hpp"
#include "gsamp/linalg.hpp"
#include "gsamp/rng.hpp"

namespace {

Eigen::MatrixXd random_spd(int n, std::uint64_t seed) {
  gsamp::Rng rng(seed);
  Eigen::MatrixXd m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = rng.normal();
  Eigen::MatrixXd a = m * m.transpose();
  a.diagonal().array() += n;  // comfortably positive definite
  gsamp::symmetrize(a);
  return a;
}

bool bitwise_equal(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

}  // namespace

TEST_CASE("symmetrize mirrors the lower triangle exactly") {
  Eigen::MatrixXd m(3, 3);
  m << 1.0, 9.0, 9.0,
       0.3, 2.0, 9.0,
       0.7, 0.11, 3.0;
  gsamp::symmetrize(m);
  CHECK(m(0, 1) == m(1, 0));
  CHECK(m(0, 2) == m(2, 0));
  CHECK(m(1, 2) == m(2, 1));
  CHECK(m(1, 0) == 0.3);  // lower triangle untouched
  CHECK(m(2, 1) == 0.11);
  CHECK(gsamp::is_exactly_symmetric(m));
}

TEST_CASE("is_exactly_symmetric catches a one-ulp mismatch") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 1) = 0.1;
  m(1, 0) = 0.1;
  CHECK(gsamp::is_exactly_symmetric(m));
  m(1, 0) = std::nextafter(0.1, 1.0);
  CHECK(!gsamp::is_exactly_symmetric(m));
  CHECK(!gsamp::is_exactly_symmetric(Eigen::MatrixXd::Zero(2, 3)));
}

TEST_CASE("logdet matches the direct determinant on small matrices") {
  for (int n : {2, 4, 6}) {
    const Eigen::MatrixXd a = random_spd(n, 100 + n);
    const Eigen::LLT<Eigen::MatrixXd> llt(a);
    const double expected = std::log(a.determinant());
    CHECK(std::abs(gsamp::logdet(llt) - expected) < 1e-10 * std::abs(expected) + 1e-12);
  }
}

TEST_CASE("spd_inverse serial and OpenMP kernels are bitwise identical") {
  for (int n : {5, 64, 97, 300}) {  // exercises partial and full column blocks
    const Eigen::MatrixXd a = random_spd(n, 200 + n);
    const Eigen::LLT<Eigen::MatrixXd> llt(a);
    const Eigen::MatrixXd serial = gsamp::spd_inverse_serial(llt);
    const Eigen::MatrixXd parallel = gsamp::spd_inverse_omp(llt);
    const Eigen::MatrixXd production = gsamp::spd_inverse(llt);
    CHECK(bitwise_equal(serial, parallel));
    CHECK(bitwise_equal(serial, production));
  }
}

TEST_CASE("spd_inverse inverts and has an exact symmetric mirror") {
  const int n = 80;
  const Eigen::MatrixXd a = random_spd(n, 321);
  const Eigen::MatrixXd inv = gsamp::spd_inverse(Eigen::LLT<Eigen::MatrixXd>(a));
  CHECK(gsamp::is_exactly_symmetric(inv));
  const double err = (a * inv - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  CHECK(err < 1e-10);
}

TEST_CASE("failed factorizations are reported as numerical errors") {
  Eigen::MatrixXd indefinite(2, 2);
  indefinite << 1.0, 2.0, 2.0, 1.0;  // eigenvalues -1 and 3
  const Eigen::LLT<Eigen::MatrixXd> llt(indefinite);
  REQUIRE(llt.info() != Eigen::Success);
  CHECK_THROWS_AS(gsamp::spd_inverse_serial(llt), gsamp::NumericalError);
  CHECK_THROWS_AS(gsamp::spd_inverse_omp(llt), gsamp::NumericalError);
  CHECK_THROWS_AS(gsamp::logdet(llt), gsamp::NumericalError);
}

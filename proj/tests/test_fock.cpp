#include <cmath>

#include "doctest.h"
#include "ncqo/error.hpp"
#include "ncqo/fock.hpp"
#include "oracles.hpp"

using namespace ncqo;
using doctest::Approx;

TEST_CASE("lowering operator entries") {
  const OperatorMatrix a2 = ladder_lowering(2);
  CHECK(a2(0, 1) == Complex(1.0, 0.0));
  CHECK(a2(0, 0) == Complex{});
  CHECK(a2(1, 0) == Complex{});
  CHECK(a2(1, 1) == Complex{});
  CHECK(ladder_lowering(4)(2, 3).real() == Approx(1.7320508).epsilon(1e-7));
  CHECK_THROWS_AS(ladder_lowering(0), DimensionError);
}

TEST_CASE("number operator from ladder operators") {
  const OperatorMatrix a = ladder_lowering(6);
  const FockVector three = FockVector::basis_state(6, 3);
  const FockVector out = (a.adjoint() * a).apply(three);
  for (int n = 0; n < 6; ++n) CHECK(std::abs(out[n] - (n == 3 ? 3.0 : 0.0)) < 1e-14);
  CHECK(max_abs_diff(a.adjoint() * a, number_operator(6), 6) < 1e-14);
}

TEST_CASE("canonical commutator on the interior block") {
  const int k = 30;
  const OperatorMatrix a = ladder_lowering(k);
  const OperatorMatrix comm = a * a.adjoint() - a.adjoint() * a;
  CHECK(max_abs_diff(comm, OperatorMatrix::identity(k), k - 1) < 1e-13);

  const QuadraturePair q = quadratures(k);
  const OperatorMatrix yz = q.y * q.z - q.z * q.y;
  CHECK(max_abs_diff(yz, kI * OperatorMatrix::identity(k), k - 1) < 1e-13);
  CHECK(std::abs(yz(0, 0) - kI) < 1e-15);
}

TEST_CASE("quadratures at cutoff 2 and vacuum variance") {
  const QuadraturePair q = quadratures(2);
  CHECK(q.y(0, 1).real() == Approx(1.0 / std::sqrt(2.0)));
  CHECK(q.y(1, 0).real() == Approx(1.0 / std::sqrt(2.0)));
  CHECK(q.y.is_hermitian());
  CHECK(q.z.is_hermitian());
  const QuadraturePair big = quadratures(10);
  const FockVector vac = FockVector::basis_state(10, 0);
  CHECK(expectation(big.y * big.y, vac).real() == Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(quadratures(1), DimensionError);
}

TEST_CASE("expectation values") {
  const FockVector two = FockVector::basis_state(5, 2);
  CHECK(expectation(OperatorMatrix::identity(5), two).real() == Approx(1.0));
  CHECK(expectation(number_operator(5), two).real() == Approx(2.0));

  const auto c = oracle::glauber(1.0, 40);
  const FockVector g(Eigen::Map<const CVector>(c.data(), 40));
  const Complex y = expectation(quadratures(40).y, g);
  CHECK(y.real() == Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(std::abs(y.imag()) < 1e-10);

  CHECK_THROWS_AS(expectation(number_operator(4), two), DimensionError);
}

TEST_CASE("matrix elements are conjugate symmetric") {
  CVector u(6), v(6);
  for (int n = 0; n < 6; ++n) {
    u(n) = Complex(0.1 * n, 0.3 - 0.05 * n);
    v(n) = Complex(std::cos(n), std::sin(2.0 * n));
  }
  const FockVector fu(u), fv(v);
  const OperatorMatrix op = ladder_lowering(6) * ladder_lowering(6) + number_operator(6);
  const Complex lhs = matrix_element(fu, op, fv);
  const Complex rhs = std::conj(matrix_element(fv, op.adjoint(), fu));
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("hermitian eigendecomposition") {
  SUBCASE("diagonal input") {
    Eigen::VectorXd d(3);
    d << 3.0, 1.0, 2.0;
    const Eigendecomposition e = hermitian_eigendecomposition(OperatorMatrix::diagonal(d));
    CHECK(e.eigenvalues(0) == Approx(1.0));
    CHECK(e.eigenvalues(1) == Approx(2.0));
    CHECK(e.eigenvalues(2) == Approx(3.0));
  }
  SUBCASE("position quadrature at cutoff 2") {
    const Eigendecomposition e = hermitian_eigendecomposition(quadratures(2).y);
    CHECK(e.eigenvalues(0) == Approx(-1.0 / std::sqrt(2.0)));
    CHECK(e.eigenvalues(1) == Approx(1.0 / std::sqrt(2.0)));
  }
  SUBCASE("number operator") {
    const Eigendecomposition e = hermitian_eigendecomposition(number_operator(5));
    for (int n = 0; n < 5; ++n) CHECK(e.eigenvalues(n) == Approx(n));
  }
  SUBCASE("reconstruction and unitarity") {
    const QuadraturePair q = quadratures(40);
    const OperatorMatrix op = q.y * q.y * q.y + q.z * q.y * q.z + 0.3 * q.z;
    const Eigendecomposition e = hermitian_eigendecomposition(op);
    const CMatrix& v = e.eigenvectors.entries();
    const CMatrix back = v * e.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint();
    CHECK((back - op.entries()).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((v.adjoint() * v - CMatrix::Identity(40, 40)).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("rejects non-hermitian input") {
    CHECK_THROWS_AS(hermitian_eigendecomposition(ladder_lowering(4)), ContractViolation);
  }
  SUBCASE("rejects oversized input") {
    CHECK_THROWS_AS(hermitian_eigendecomposition(OperatorMatrix::identity(kMaxEigenCutoff + 1)),
                    DimensionError);
  }
}

TEST_CASE("inverse square root") {
  CHECK(max_abs_diff(inverse_sqrt(OperatorMatrix::identity(4)), OperatorMatrix::identity(4), 4) <
        1e-14);
  Eigen::VectorXd d(2);
  d << 4.0, 9.0;
  const OperatorMatrix m = inverse_sqrt(OperatorMatrix::diagonal(d));
  CHECK(m(0, 0).real() == Approx(0.5));
  CHECK(m(1, 1).real() == Approx(1.0 / 3.0));

  const int k = 30;
  const OperatorMatrix p2 = quadratures(k).z * quadratures(k).z;
  const OperatorMatrix metric = OperatorMatrix::identity(k) + 0.1 * p2;
  const OperatorMatrix inv = inverse_sqrt(metric);
  const int block = interior_size(k);
  CHECK(block == 24);
  CHECK(max_abs_diff(inv * metric * inv, OperatorMatrix::identity(k), block) < 1e-8);
  CHECK(max_abs_diff(inv * inv * metric, OperatorMatrix::identity(k), block) < 1e-8);

  Eigen::VectorXd bad(2);
  bad << 1.0, -1.0;
  CHECK_THROWS_AS(inverse_sqrt(OperatorMatrix::diagonal(bad)), SingularMetricError);
}

TEST_CASE("normalization flags") {
  CVector v(3);
  v << 1.0, 1.0, 0.0;
  const FockVector f(v);
  CHECK_FALSE(f.is_normalized());
  CHECK(f.normalized().is_normalized());
  CHECK_THROWS_AS(FockVector(CVector::Zero(3)).normalized(), ContractViolation);
}

TEST_CASE("interior margin") {
  CHECK(interior_margin(30) == 6);
  CHECK(interior_margin(31) == 7);
  CHECK(interior_margin(1) == 1);
}

#include <cmath>

#include "doctest.h"
#include "ncqo/deformation.hpp"
#include "ncqo/error.hpp"
#include "oracles.hpp"

using namespace ncqo;
using doctest::Approx;

TEST_CASE("pochhammer") {
  CHECK(pochhammer(5.0, 0) == 1.0);
  CHECK(pochhammer(2.0, 3) == 24.0);
  CHECK(pochhammer(6.0, 1) == 6.0);
  // q = 2 + 2/tau at tau = 0.5 reproduces f^2(1)! = 1 + tau.
  CHECK(0.25 * pochhammer(2.0 + 2.0 / 0.5, 1) == Approx(1.5));
}

TEST_CASE("deformation function and energies") {
  CHECK(f_squared(0, 0.0) == 1.0);
  CHECK(f_squared(1, 0.1) == Approx(1.1));
  CHECK(f_squared(3, 2.0) == Approx(5.0));
  CHECK(energy(0, 0.7) == 0.0);
  CHECK(energy(1, 0.1) == Approx(1.1));
  CHECK(energy(2, 0.1) == Approx(2.3));
}

TEST_CASE("deformed factorials") {
  CHECK(f_factorial_squared(0, 0.3) == 1.0);
  CHECK(f_factorial_squared(5, 0.0) == 1.0);
  CHECK(f_factorial_squared(2, 0.5) == Approx(2.625));
  CHECK(1.0 / f_factorial_squared(2, 0.1) == Approx(0.790513833992).epsilon(1e-10));
  CHECK(inv_f_factorial_first_order(0, 5.0) == 1.0);
  CHECK(inv_f_factorial_first_order(2, 0.1) == Approx(0.75));
  CHECK(inv_f_factorial_first_order(4, 0.01) == Approx(0.93));

  for (double tau : {1e-3, 1e-2, 0.1, 1.0, 2.0}) {
    for (int n = 0; n <= 60; ++n) {
      const double ref = oracle::pochhammer_factorial_squared(n, tau);
      CHECK(std::abs(f_factorial_squared(n, tau) / ref - 1.0) < 1e-12);
      CHECK(log_f_factorial_squared(n, tau) == Approx(std::log(ref)).epsilon(1e-12));
    }
  }
}

TEST_CASE("first-order inverse factorial is second-order accurate") {
  for (int n : {1, 3, 6}) {
    auto defect = [n](double tau) {
      return std::abs(1.0 / f_factorial_squared(n, tau) - inv_f_factorial_first_order(n, tau));
    };
    const double ratio = defect(1e-2) / defect(1e-3);
    CHECK(ratio >= 80.0);
    CHECK(ratio <= 120.0);
  }
}

TEST_CASE("profile memo tables") {
  const DeformationProfile p(0.2, 30);
  CHECK(p.levels() == 30);
  for (int n = 1; n < 30; ++n) {
    CHECK(p.factorial_squared(n) == Approx(p.f_squared(n) * p.factorial_squared(n - 1)));
    CHECK(p.f_squared(n) > 0.0);
  }
  CHECK(p.inv_f_factorial(3, SeriesMode::FirstOrder) == Approx(1.0 - 0.2 * 3 * 6 / 8.0));
  CHECK(p.inv_f_factorial(3, SeriesMode::Exact) ==
        Approx(1.0 / std::sqrt(f_factorial_squared(3, 0.2))));
}

TEST_CASE("perturbed eigenvectors") {
  const FockVector v0 = perturbed_eigenvector(0, 0.16, 8);
  CHECK(v0[0] == Complex(1.0));
  CHECK(v0[4].real() == Approx(0.01 * std::sqrt(24.0)));
  int nonzero = 0;
  for (int n = 0; n < 8; ++n) nonzero += v0[n] != Complex{} ? 1 : 0;
  CHECK(nonzero == 2);

  const FockVector v2 = perturbed_eigenvector(2, 0.0, 10);
  for (int n = 0; n < 10; ++n) CHECK(v2[n] == Complex(n == 2 ? 1.0 : 0.0));

  const FockVector v5 = perturbed_eigenvector(5, 0.16, 12);
  CHECK(v5[1].real() == Approx(-0.01 * std::sqrt(120.0)));
  CHECK(v5[5] == Complex(1.0));
  CHECK(v5[9].real() == Approx(0.01 * std::sqrt(6.0 * 7 * 8 * 9)));

  CHECK_THROWS_AS(perturbed_eigenvector(4, 0.1, 8), DimensionError);
}

TEST_CASE("perturbed eigenvectors are orthogonal to first order") {
  for (double tau : {1e-3, 1e-2}) {
    for (int n = 0; n + 4 <= 20; ++n) {
      const FockVector a = perturbed_eigenvector(n, tau, 30);
      const FockVector b = perturbed_eigenvector(n + 4, tau, 30);
      const double overlap = std::abs(a.coeffs().dot(b.coeffs()));
      CHECK(overlap <= 2.0 * tau * tau * std::pow(std::max(n, 1), 4));
    }
  }
}

TEST_CASE("coefficient C") {
  CHECK(coefficient_C(Complex(0.3, 0.4), 1, 0.0) == Complex(0.3, 0.4));
  CHECK(coefficient_C(1.0, 0, 0.16).real() == Approx(0.99));
  CHECK(coefficient_C(1.0, 4, 0.16).real() == Approx(1.23));
  // C(-alpha, n) = (-1)^n C(alpha, n).
  const Complex a{0.8, -1.1};
  for (int n = 0; n < 20; ++n) {
    for (bool exact : {false, true}) {
      const Complex lhs = coefficient_C(-a, n, 0.3, exact);
      const Complex rhs = (n % 2 ? -1.0 : 1.0) * coefficient_C(a, n, 0.3, exact);
      CHECK(std::abs(lhs - rhs) <= 1e-14 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("spectrum of the hermitian counterpart") {
  const double tau = 1e-3;
  const OperatorMatrix h = hermitian_counterpart(tau, 60);
  CHECK(h.hermiticity_residual() < 1e-12);
  const Eigendecomposition e = hermitian_eigendecomposition(h);
  for (int n = 0; n < 6; ++n) {
    CHECK(std::abs(e.eigenvalues(n) - n * (1.0 + tau * (1.0 + n) / 2.0)) <= 5 * tau * tau + 1e-8);
  }
}

TEST_CASE("Dyson map squares to the inverse metric") {
  const int k = 30;
  const double tau = 0.1;
  const OperatorMatrix eta = dyson_map(tau, k);
  const OperatorMatrix p = quadratures(k).z;
  const OperatorMatrix metric = OperatorMatrix::identity(k) + tau * (p * p);
  CHECK(eta.is_hermitian(1e-12));
  CHECK(max_abs_diff(eta * eta * metric, OperatorMatrix::identity(k), interior_size(k)) < 1e-8);
}

TEST_CASE("generalized lowering operator") {
  const OperatorMatrix a = generalized_lowering(0.2, 10);
  for (int n = 1; n < 10; ++n) {
    CHECK(a(n - 1, n).real() == Approx(std::sqrt(n * f_squared(n, 0.2))));
  }
  CHECK(max_abs_diff(generalized_lowering(0.0, 10), ladder_lowering(10), 10) == 0.0);
}

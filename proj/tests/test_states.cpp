#include <cmath>

#include "doctest.h"
#include "ncqo/error.hpp"
#include "ncqo/states.hpp"
#include "oracles.hpp"

using namespace ncqo;
using doctest::Approx;

TEST_CASE("closed coherent normalization") {
  CHECK(coherent_norm_sq(0.0, 0.7) == 1.0);
  CHECK(coherent_norm_sq(1.0, 0.0) == Approx(std::exp(1.0)));
  CHECK(coherent_norm_sq(1.0, 0.1) == Approx(2.378497).epsilon(1e-6));
  CHECK_THROWS_AS(coherent_norm_sq(2.0, 1.0), BreakdownError);
}

TEST_CASE("closed cat normalization") {
  CHECK(std::abs(cat_norm_sq(6.0, 0.0, Parity::Even) - 2.0) < 1e-10);
  CHECK(std::abs(cat_norm_sq(6.0, 0.0, Parity::Odd) - 2.0) < 1e-10);
  CHECK(cat_norm_sq(1.0, 0.0, Parity::Even) == Approx(2.0 + 2.0 * std::exp(-2.0)));
  // 2 + e^{-1} / (2 N^2) (4 + 0.4 - 0.1) with N^2 = e (1 - 0.1 - 0.025).
  const double n2 = std::exp(1.0) * 0.875;
  CHECK(cat_norm_sq(1.0, 0.1, Parity::Even) == Approx(2.0 + std::exp(-1.0) / (2.0 * n2) * 4.3));
  CHECK(cat_norm_sq(1.0, 0.1, Parity::Even) == Approx(2.332538).epsilon(1e-6));
  CHECK_THROWS_AS(cat_norm_sq(5e-4, 0.0, Parity::Odd), DegenerateStateError);
  const NormalizationPair pair = normalization_pair(1.0, 0.1, Parity::Even);
  CHECK(pair.coherent_norm_sq == Approx(2.378497).epsilon(1e-6));
}

TEST_CASE("Glauber limit") {
  const BuiltState s = build_coherent(1.0, 0.0, 40);
  const auto ref = oracle::glauber(1.0, 40);
  for (int n = 0; n < 40; ++n) CHECK(std::abs(s.vector[n] - ref[n]) < 1e-12);
  CHECK(s.numeric_norm_sq == Approx(std::exp(1.0)).epsilon(1e-12));
  CHECK(s.closed_norm_sq == Approx(std::exp(1.0)).epsilon(1e-12));
}

TEST_CASE("constructed states match the direct series") {
  for (SeriesMode mode : {SeriesMode::Exact, SeriesMode::FirstOrder}) {
    for (Kind kind : {Kind::Coherent, Kind::CatEven, Kind::CatOdd}) {
      for (Complex a : {Complex(1, 0), Complex(1, 1), Complex(0.5, 1.5)}) {
        for (double tau : {0.0, 0.01, 0.3}) {
          const BuiltState s = build_state({kind, a, tau}, 45, mode);
          const Eigen::VectorXcd ref = oracle::direct_state(kind, a, tau, 45, mode);
          CHECK((s.vector.coeffs() - ref).cwiseAbs().maxCoeff() < 1e-12);
          CHECK(s.vector.is_normalized());
        }
      }
    }
  }
}

TEST_CASE("vacuum limit keeps the |4> sideband") {
  const double tau = 0.3;
  const BuiltState s = build_coherent(0.0, tau, 30, SeriesMode::FirstOrder);
  const double expected = 1.5 * tau / std::sqrt(24.0) * (1.0 - tau * 4.0 * 7.0 / 8.0);
  CHECK((s.vector[4] / s.vector[0]).real() == Approx(expected));
  for (int n = 1; n < 30; ++n) {
    if (n != 4) CHECK(s.vector[n] == Complex{});
  }
}

TEST_CASE("first-order coherent coefficient at |4>") {
  const BuiltState s = build_coherent(1.0, 0.16, 40, SeriesMode::FirstOrder);
  const double c4 = 1.23 / std::sqrt(24.0) * (1.0 - 0.16 * 28.0 / 8.0);
  const double c0 = 0.99;
  CHECK((s.vector[4] / s.vector[0]).real() == Approx(c4 / c0));
}

TEST_CASE("cat states") {
  SUBCASE("ordinary even cat") {
    const BuiltState s = build_cat(1.0, 0.0, Parity::Even, 40);
    const double scale = s.vector[0].real();
    for (int n = 0; n < 40; ++n) {
      const double expected = n % 2 ? 0.0 : scale / std::sqrt(oracle::factorial(n));
      CHECK(std::abs(s.vector[n] - expected) < 1e-14);
    }
    CHECK(s.numeric_norm_sq == Approx(2.0 + 2.0 * std::exp(-2.0)).epsilon(1e-12));
  }
  SUBCASE("parity purity for every tau") {
    for (double tau : {0.0, 0.1, 2.0, 10.0}) {
      for (Parity p : {Parity::Even, Parity::Odd}) {
        const BuiltState s = build_cat({1.2, 1.5}, tau, p);
        for (int n = p == Parity::Even ? 1 : 0; n < s.cutoff(); n += 2) {
          CHECK(std::abs(s.vector[n]) <= 1e-14);
        }
      }
    }
  }
  SUBCASE("degenerate odd cat") {
    CHECK_THROWS_AS(build_cat(1e-4, 0.1, Parity::Odd), DegenerateStateError);
    CHECK_NOTHROW(build_cat(1e-4, 0.1, Parity::Even));
  }
  SUBCASE("eigenstates of A^2 at tau = 0") {
    const OperatorMatrix a = generalized_lowering(0.0, 40);
    const OperatorMatrix a2 = a * a;
    for (Parity p : {Parity::Even, Parity::Odd}) {
      const Complex alpha{0.9, 1.1};
      const BuiltState s = build_cat(alpha, 0.0, p, 40);
      const CVector res = a2.entries() * s.vector.coeffs() - alpha * alpha * s.vector.coeffs();
      CHECK(res.head(interior_size(40)).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
}

TEST_CASE("numeric norm approaches the closed norm at second order") {
  for (Complex a : {Complex(1, 0), Complex(1, 1), Complex(0.5, 1.5)}) {
    auto defect = [a](double tau) {
      const BuiltState s = build_coherent(a, tau, 45);
      return std::abs(s.numeric_norm_sq / s.closed_norm_sq - 1.0);
    };
    const double ratio = defect(1e-2) / defect(1e-3);
    CHECK(ratio >= 50.0);
    CHECK(ratio <= 200.0);
  }
}

TEST_CASE("states depend continuously on tau") {
  const Complex a{1.0, 1.0};
  const CVector base = build_coherent(a, 0.0, 45).vector.coeffs();
  auto slope = [&](double tau) {
    return (build_coherent(a, tau, 45).vector.coeffs() - base).norm() / tau;
  };
  const double s1 = slope(1e-3);
  const double s2 = slope(1e-2);
  CHECK(s1 > 0.0);
  CHECK(std::abs(s2 / s1 - 1.0) < 0.2);
}

TEST_CASE("cutoff policy") {
  SUBCASE("explicit cutoff too small") {
    const StateKind kind{Kind::Coherent, {2.0, 2.0}, 0.0};
    try {
      build_state(kind, 20);
      FAIL("expected CutoffError");
    } catch (const CutoffError& e) {
      CHECK(e.suggested_cutoff() > 20);
      CHECK(cutoff_sufficient(kind, e.suggested_cutoff()));
      CHECK_NOTHROW(build_state(kind, e.suggested_cutoff()));
    }
  }
  SUBCASE("automatic cutoff satisfies the tail criterion") {
    const StateKind kind{Kind::CatOdd, {3.0, 4.0}, 0.0};
    const BuiltState s = build_state(kind);
    CHECK(s.cutoff() >= default_cutoff(kind.alpha));
    CHECK(cutoff_sufficient(kind, s.cutoff()));
  }
  CHECK(default_cutoff(0.0) == 30);
  CHECK(default_cutoff(5.0) == 74);
}

TEST_CASE("flags") {
  CHECK_FALSE(perturbative_warning({1.0, 1.0}, 0.0));
  CHECK_FALSE(perturbative_warning(1.0, 1e-3));
  CHECK(perturbative_warning({1.2, 10.5}, 10.0));
  CHECK(in_stated_validity_region({0.9, 1.0}));
  CHECK_FALSE(in_stated_validity_region({1.0, 1.0}));
  const BuiltState s = build_cat({0.9, 1.5}, 0.5, Parity::Even);
  CHECK(s.in_stated_region);
}

TEST_CASE("state kind parsing and validation") {
  for (Kind k : {Kind::Coherent, Kind::CatEven, Kind::CatOdd}) CHECK(parse_kind(to_string(k)) == k);
  CHECK_THROWS_AS(parse_kind("squeezed"), ConfigError);
  CHECK_THROWS_AS((StateKind{Kind::Coherent, 1.0, -0.1}.validate()), ConfigError);
}

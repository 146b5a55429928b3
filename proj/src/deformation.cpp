#include "ncqo/deformation.hpp"

#include <cmath>
#include <string>

#include "ncqo/error.hpp"

namespace ncqo {

namespace {

void require_level(int n, const char* what) {
  if (n < 0) throw DimensionError(std::string(what) + ": negative level " + std::to_string(n));
}

double sqrt_rising4(int first) {
  // sqrt(first (first+1) (first+2) (first+3)); zero when any factor is <= 0.
  if (first <= 0) return 0.0;
  return std::sqrt(pochhammer(first, 4));
}

CMatrix position_momentum_square(int cutoff, CMatrix* x) {
  const QuadraturePair q = quadratures(cutoff);
  *x = q.y.entries();
  return q.z.entries() * q.z.entries();
}

}  // namespace

double pochhammer(double q, int n) {
  double out = 1.0;
  for (int k = 0; k < n; ++k) out *= q + k;
  return out;
}

double f_squared(int n, double tau) { return 1.0 + 0.5 * tau * (1.0 + n); }

double f_factorial_squared(int n, double tau) {
  require_level(n, "f_factorial_squared");
  double out = 1.0;
  for (int k = 1; k <= n; ++k) out *= f_squared(k, tau);
  return out;
}

double log_f_factorial_squared(int n, double tau) {
  require_level(n, "log_f_factorial_squared");
  double out = 0.0;
  for (int k = 1; k <= n; ++k) out += std::log(f_squared(k, tau));
  return out;
}

double inv_f_factorial_first_order(int n, double tau) {
  return 1.0 - 0.25 * tau * n * (3.0 + n);
}

double energy(int n, double tau) { return n * f_squared(n, tau); }

FockVector perturbed_eigenvector(int n, double tau, int cutoff) {
  require_level(n, "perturbed_eigenvector");
  if (n + 4 >= cutoff) {
    throw DimensionError("perturbed_eigenvector: level " + std::to_string(n) +
                         " needs cutoff > " + std::to_string(n + 4));
  }
  CVector v = CVector::Zero(cutoff);
  v(n) = 1.0;
  if (n >= 4) v(n - 4) = -tau / 16.0 * sqrt_rising4(n - 3);
  v(n + 4) = tau / 16.0 * sqrt_rising4(n + 1);
  return FockVector(std::move(v));
}

Complex coefficient_C(Complex alpha, int n, double tau, bool exact_ratios) {
  require_level(n, "coefficient_C");
  auto ratio = [&](int from, int to) {
    if (!exact_ratios) return 1.0;
    return std::exp(0.5 * (log_f_factorial_squared(from, tau) -
                           log_f_factorial_squared(to, tau)));
  };
  Complex c = std::pow(alpha, n) - tau / 16.0 * std::pow(alpha, n + 4) * ratio(n, n + 4);
  if (n >= 4) {
    // n!/(n-4)! = (n-3)^{(4)}
    c += tau / 16.0 * std::pow(alpha, n - 4) * pochhammer(n - 3, 4) * ratio(n, n - 4);
  }
  return c;
}

DeformationProfile::DeformationProfile(double tau, int levels) : tau_(tau) {
  if (!(tau >= 0.0)) throw ConfigError("tau must be >= 0, got " + std::to_string(tau));
  if (levels < 1) throw DimensionError("DeformationProfile needs at least one level");
  f2_.resize(levels);
  log_f2_fact_.resize(levels);
  inv_first_.resize(levels);
  double acc = 0.0;
  for (int n = 0; n < levels; ++n) {
    f2_[n] = ncqo::f_squared(n, tau);
    if (n > 0) acc += std::log(f2_[n]);
    log_f2_fact_[n] = acc;
    inv_first_[n] = inv_f_factorial_first_order(n, tau);
  }
}

double DeformationProfile::factorial_squared(int n) const {
  return std::exp(log_f2_fact_.at(n));
}

double DeformationProfile::inv_f_factorial(int n, SeriesMode mode) const {
  if (mode == SeriesMode::Exact) return std::exp(log_inv_f_factorial(n));
  return 1.0 - 0.125 * tau_ * n * (3.0 + n);
}

OperatorMatrix generalized_lowering(double tau, int cutoff) {
  const DeformationProfile profile(tau, cutoff);
  Eigen::VectorXd f(cutoff);
  for (int n = 0; n < cutoff; ++n) f(n) = std::sqrt(profile.f_squared(n));
  return ladder_lowering(cutoff) * OperatorMatrix::diagonal(f);
}

OperatorMatrix perturbed_basis(double tau, int cutoff) {
  CMatrix u = CMatrix::Identity(cutoff, cutoff);
  for (int n = 0; n < cutoff; ++n) {
    if (n >= 4) u(n - 4, n) = -tau / 16.0 * sqrt_rising4(n - 3);
    if (n + 4 < cutoff) u(n + 4, n) = tau / 16.0 * sqrt_rising4(n + 1);
  }
  return OperatorMatrix(std::move(u));
}

OperatorMatrix dyson_map(double tau, int cutoff) {
  CMatrix x;
  const CMatrix p2 = position_momentum_square(cutoff, &x);
  return inverse_sqrt(OperatorMatrix(CMatrix::Identity(cutoff, cutoff) + tau * p2));
}

OperatorMatrix noncommutative_hamiltonian(double tau, int cutoff) {
  CMatrix x;
  const CMatrix p2 = position_momentum_square(cutoff, &x);
  const CMatrix big_x = (CMatrix::Identity(cutoff, cutoff) + tau * p2) * x;
  CMatrix h = 0.5 * p2 + 0.5 * big_x * big_x;
  h.diagonal().array() -= (2.0 + tau) / 4.0;
  return OperatorMatrix(std::move(h));
}

OperatorMatrix hermitian_counterpart(double tau, int cutoff) {
  CMatrix x;
  const CMatrix p2 = position_momentum_square(cutoff, &x);
  const OperatorMatrix metric(CMatrix::Identity(cutoff, cutoff) + tau * p2);
  const OperatorMatrix eta = inverse_sqrt(metric);
  const OperatorMatrix eta_inv = positive_sqrt(metric);
  const CMatrix h =
      eta.entries() * noncommutative_hamiltonian(tau, cutoff).entries() * eta_inv.entries();
  return OperatorMatrix(0.5 * (h + h.adjoint()));
}

}  // namespace ncqo

#pragma once

// Deformation data of the perturbative minimal-length oscillator
// [X, P] = i(1 + tau P^2), in units hbar = m = omega = 1:
//   f^2(n)   = 1 + tau (1 + n) / 2,      E_n = n f^2(n),
//   f^2(n)!  = prod_{k=1..n} f^2(k)  = (tau/2)^n (2 + 2/tau)^{(n)},
//   |phi_n>  = |n> - (tau/16) sqrt((n-3)^{(4)}) |n-4> + (tau/16) sqrt((n+1)^{(4)}) |n+4>.

#include <vector>

#include "ncqo/fock.hpp"

namespace ncqo {

/// How the deformed factorials enter a state expansion.
enum class SeriesMode {
  /// Exact Pochhammer factorials and exact f-ratios: the expansion
  /// sum_n alpha^n / (sqrt(n!) f(n)!) |phi_n> taken literally.
  Exact,
  /// 1/f(n)! -> 1 - tau n (3 + n) / 8 and every f-ratio inside C(alpha, n)
  /// set to 1.
  FirstOrder,
};

/// Rising factorial q (q+1) ... (q+n-1); 1 for n = 0.
double pochhammer(double q, int n);

double f_squared(int n, double tau);
/// Exact f^2(n)! as a product; 1 for n = 0 and for tau = 0.
double f_factorial_squared(int n, double tau);
/// log f^2(n)!, finite where the product itself would overflow.
double log_f_factorial_squared(int n, double tau);
/// First-order inverse 1 - tau n (3 + n) / 4. Goes negative for large n tau.
double inv_f_factorial_first_order(int n, double tau);
double energy(int n, double tau);

/// Unnormalized |phi_n> on a basis of `cutoff` levels. Needs n + 4 < cutoff.
FockVector perturbed_eigenvector(int n, double tau, int cutoff);

/// C(alpha, n) of the rewritten coherent-state series. With
/// `exact_ratios` false the f(n)!/f(n +- 4)! ratios are taken as 1.
Complex coefficient_C(Complex alpha, int n, double tau, bool exact_ratios = false);

/// tau plus memo tables of f^2(n), log f^2(n)! and the first-order inverse,
/// built eagerly for n < levels.
class DeformationProfile {
 public:
  DeformationProfile(double tau, int levels);

  double tau() const { return tau_; }
  int levels() const { return static_cast<int>(f2_.size()); }

  double f_squared(int n) const { return f2_.at(n); }
  double log_factorial_squared(int n) const { return log_f2_fact_.at(n); }
  double factorial_squared(int n) const;
  double inv_factorial_squared_first_order(int n) const { return inv_first_.at(n); }

  /// 1/f(n)! under `mode`.
  double inv_f_factorial(int n, SeriesMode mode) const;
  /// log(1/f(n)!) for the exact mode.
  double log_inv_f_factorial(int n) const { return -0.5 * log_f2_fact_.at(n); }

 private:
  double tau_;
  std::vector<double> f2_;
  std::vector<double> log_f2_fact_;
  std::vector<double> inv_first_;
};

/// Generalized annihilation operator A = a f(n), f exact.
OperatorMatrix generalized_lowering(double tau, int cutoff);

/// Matrix whose n-th column is |phi_n>. The |n+4> sideband is dropped for
/// the top four columns, where it would leave the basis.
OperatorMatrix perturbed_basis(double tau, int cutoff);

/// Dyson map eta = (1 + tau p^2)^{-1/2}.
OperatorMatrix dyson_map(double tau, int cutoff);

/// Non-hermitian H = P^2/2 + X^2/2 - (2 + tau)/4 with X = (1 + tau p^2) x, P = p.
OperatorMatrix noncommutative_hamiltonian(double tau, int cutoff);

/// h = eta H eta^{-1}, symmetrized. Its spectrum is the spectrum of H.
OperatorMatrix hermitian_counterpart(double tau, int cutoff);

}  // namespace ncqo

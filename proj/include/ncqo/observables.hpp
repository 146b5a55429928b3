#pragma once

// Nonclassicality diagnostics. Every quantity has two routes: the closed
// first-order formulas (`*_closed`) and a truncated-matrix oracle
// (`*_oracle`) evaluated on a state vector. The routes agree up to O(tau^2).

#include <vector>

#include "ncqo/fock.hpp"
#include "ncqo/states.hpp"

namespace ncqo {

/// Quadrature statistics for the metric-weighted quadratures Y, Z.
/// var_Y = R + U and var_Z = R - U_tilde, where R is the right-hand side of
/// the generalized uncertainty relation var_Y var_Z >= R^2.
struct QuadratureMoments {
  double mean_Y = 0.0;
  double mean_Z = 0.0;
  double mean_Y2 = 0.0;
  double mean_Z2 = 0.0;
  double var_Y = 0.0;
  double var_Z = 0.0;
  double R = 0.0;
  double saturation_defect = 0.0;  // var_Y var_Z - R^2
  double U = 0.0;
  double U_tilde = 0.0;
  /// R (U - U_tilde) - U U_tilde. Zero to first order for coherent states.
  double validity = 0.0;

  bool valid() const { return validity >= 0.0; }
};

struct NumberMoments {
  double mean_N = 0.0;
  double mean_N2 = 0.0;
  double var_N = 0.0;
  double mandel_Q = 0.0;
  /// False when Q is undefined (alpha = 0).
  bool defined = true;
  /// False for the closed odd-cat route, which only provides Q.
  bool has_moments = true;
};

struct MetricQuadratures {
  OperatorMatrix y;  // y + tau (z^2 y + y z^2) / 2
  OperatorMatrix z;  // z
};

/// Similarity-transformed quadratures eta Y eta^{-1}, eta Z eta^{-1} at
/// first order. Requires cutoff >= 6.
MetricQuadratures metric_quadratures(double tau, int cutoff);

/// Number operator sum_n n |phi_n><phi_n| on the perturbed eigenbasis.
OperatorMatrix perturbed_number_operator(double tau, int cutoff);

QuadratureMoments quad_moments_closed(const StateKind& kind);
QuadratureMoments quad_moments_oracle(const FockVector& state, double tau);

NumberMoments mandel_closed(const StateKind& kind);
NumberMoments mandel_oracle(const FockVector& state, double tau);

/// P_n = |c_n|^2.
std::vector<double> photon_distribution(const FockVector& state);

/// Harmonic-oscillator (tau = 0) reference forms.
namespace ho {
/// (alpha^2 + alpha*^2 + 2|alpha|^2 tanh|alpha|^2) / 2
double even_cat_U(Complex alpha);
/// (alpha^2 + alpha*^2 - 2|alpha|^2 tanh|alpha|^2) / 2
double even_cat_U_tilde(Complex alpha);
/// +2|alpha|^2 csch(2|alpha|^2) for even, negative of it for odd.
double cat_mandel(Complex alpha, Parity parity);
}  // namespace ho

}  // namespace ncqo

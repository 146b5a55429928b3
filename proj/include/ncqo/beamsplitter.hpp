#pragma once

// Beam splitter with vacuum in the second input port, and the linear
// entropy S = 1 - Tr rho_A^2 of the output as an entanglement witness.

#include <map>
#include <numbers>
#include <optional>
#include <utility>

#include "ncqo/deformation.hpp"
#include "ncqo/fock.hpp"
#include "ncqo/states.hpp"

namespace ncqo {

struct SplitterParams {
  double theta = std::numbers::pi / 2.0;  // [0, pi]
  double phi = 0.0;                       // [0, 2 pi)

  /// Throws ConfigError outside the stated ranges.
  void validate() const;
  /// Transmission cos(theta / 2).
  double t() const;
  /// Reflection -exp(i phi) sin(theta / 2).
  Complex r() const;
};

/// Occupations (q, m) of output modes a and b.
using ModePair = std::pair<int, int>;

struct BipartiteState {
  int cutoff_a = 0;
  int cutoff_b = 0;
  std::map<ModePair, Complex> amplitudes;

  double norm_sq() const;
};

/// Reduced state of mode a.
struct DensityMatrix {
  CMatrix entries;

  int dim() const { return static_cast<int>(entries.rows()); }
  double trace() const { return entries.trace().real(); }
  double purity() const { return entries.cwiseAbs2().sum(); }
};

/// B(|n> x |0>) = sum_q sqrt(C(n, q)) t^q r^(n-q) |q, n-q>.
BipartiteState split_fock(int n, const SplitterParams& params);

/// Linear extension of split_fock to a single-mode input. Both output modes
/// keep the input cutoff.
BipartiteState split_state(const FockVector& input, const SplitterParams& params);

/// Partial trace over mode b.
DensityMatrix reduced_density(const BipartiteState& state);

/// 1 - sum_ij |rho_ij|^2.
double linear_entropy_oracle(const DensityMatrix& rho);

/// Closed linear entropy of the coherent state, normalized by the closed
/// first-order N^2(alpha, f). The series coefficients follow `mode`, as in
/// the state constructor. O(K^3) in the cutoff.
/// Throws BreakdownError when the closed N^2 is not positive and CutoffError
/// when the top level still carries relative weight above 1e-10.
double linear_entropy_closed(Complex alpha, double tau, const SplitterParams& params,
                             int cutoff, SeriesMode mode = SeriesMode::Exact);

/// Builds the state, splits it and returns the linear entropy of mode a.
double entropy_for_kind(const StateKind& kind, const SplitterParams& params = {},
                        std::optional<int> cutoff = std::nullopt,
                        SeriesMode mode = SeriesMode::Exact);

}  // namespace ncqo

#pragma once

// Noncommutative coherent and even/odd cat states as normalized FockVectors.

#include <optional>
#include <string_view>
#include <vector>

#include "ncqo/deformation.hpp"
#include "ncqo/fock.hpp"

namespace ncqo {

enum class Kind { Coherent, CatEven, CatOdd };
enum class Parity { Even, Odd };

std::string_view to_string(Kind kind);
/// Accepts "coherent", "cat-even", "cat-odd".
Kind parse_kind(std::string_view text);

/// Odd cats below this |alpha| are rejected as degenerate.
inline constexpr double kMinOddCatAlpha = 1e-3;

struct StateKind {
  Kind kind = Kind::Coherent;
  Complex alpha{0.0, 0.0};
  double tau = 0.0;

  /// Throws ConfigError for tau < 0, DegenerateStateError for an odd cat
  /// with |alpha| < kMinOddCatAlpha.
  void validate() const;
};

/// Closed first-order N^2(alpha, f). Throws BreakdownError when <= 0.
double coherent_norm_sq(Complex alpha, double tau);
/// Closed first-order N^2(alpha, f)_+-.
double cat_norm_sq(Complex alpha, double tau, Parity parity);

struct NormalizationPair {
  double coherent_norm_sq;
  double cat_norm_sq;
};
NormalizationPair normalization_pair(Complex alpha, double tau, Parity parity);

/// max(30, ceil(|alpha|^2 + 8 sqrt(|alpha|^2 + 1) + 8)).
int default_cutoff(Complex alpha);

/// True when any significantly populated level carries a first-order
/// correction (tau n(3+n)/4 or a tau/16 sideband amplitude) above 0.5.
bool perturbative_warning(Complex alpha, double tau);

/// Im(alpha) - Re(alpha) >= 0.1, with 1e-12 slack for rounding.
bool in_stated_validity_region(Complex alpha);

struct BuiltState {
  FockVector vector;
  StateKind kind;
  SeriesMode mode = SeriesMode::Exact;
  /// Norm squared of the raw series before renormalization: N^2(alpha, f)
  /// for coherent states, N^2(alpha, f)_+- for cats.
  double numeric_norm_sq = 0.0;
  /// Same quantity from the closed first-order forms; NaN where the closed
  /// coherent normalization is not positive.
  double closed_norm_sq = 0.0;
  bool perturbative_warning = false;
  /// Generalized-uncertainty validity R(U - U~) - U U~ >= 0 of the closed forms.
  bool uncertainty_valid = true;
  bool in_stated_region = false;

  int cutoff() const { return vector.cutoff(); }
};

/// Builds a normalized state. Without an explicit cutoff the default is
/// grown until the tail criterion holds; an explicit cutoff that fails it
/// raises CutoffError carrying a suggested cutoff.
BuiltState build_state(const StateKind& kind, std::optional<int> cutoff = std::nullopt,
                       SeriesMode mode = SeriesMode::Exact);
/// True when `cutoff` meets the tail criterion for `kind`.
bool cutoff_sufficient(const StateKind& kind, int cutoff, SeriesMode mode = SeriesMode::Exact);

BuiltState build_coherent(Complex alpha, double tau, std::optional<int> cutoff = std::nullopt,
                          SeriesMode mode = SeriesMode::Exact);
BuiltState build_cat(Complex alpha, double tau, Parity parity,
                     std::optional<int> cutoff = std::nullopt,
                     SeriesMode mode = SeriesMode::Exact);

/// Raw coherent-state series g_n = C(alpha, n) / (sqrt(n!) f(n)!) for
/// n < cutoff, stored as exp(log_scale) * scaled[n] so that large |alpha|
/// cannot overflow.
struct ScaledSeries {
  std::vector<Complex> scaled;
  double log_scale = 0.0;

  /// log sum |g_n|^2.
  double log_norm_sq() const;
};
ScaledSeries coherent_series(Complex alpha, double tau, int cutoff, SeriesMode mode);

}  // namespace ncqo

#include "ncqo/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ncqo/error.hpp"
#include "ncqo/observables.hpp"

namespace ncqo {

namespace {

constexpr double kTailProbability = 1e-12;
constexpr int kTailLevels = 4;
constexpr int kMaxAutoCutoff = 4096;

double sqrt_rising4(int first) {
  if (first <= 0) return 0.0;
  return std::sqrt(pochhammer(first, 4));
}

// Probability carried by the top kTailLevels entries, relative to the total.
double tail_fraction(const std::vector<Complex>& c) {
  double total = 0.0;
  double tail = 0.0;
  const int n = static_cast<int>(c.size());
  for (int k = 0; k < n; ++k) {
    const double p = std::norm(c[k]);
    total += p;
    if (k >= n - kTailLevels) tail += p;
  }
  return total > 0.0 ? tail / total : 0.0;
}

std::vector<Complex> with_parity(const std::vector<Complex>& raw, Kind kind) {
  if (kind == Kind::Coherent) return raw;
  const int keep = kind == Kind::CatEven ? 0 : 1;
  std::vector<Complex> out(raw.size());
  // C(-alpha, n) = (-1)^n C(alpha, n), so |alpha> +- |-alpha> doubles one
  // parity class and cancels the other exactly.
  for (std::size_t n = 0; n < raw.size(); ++n) {
    out[n] = (static_cast<int>(n % 2) == keep) ? 2.0 * raw[n] : Complex{};
  }
  return out;
}

double sum_norm(const std::vector<Complex>& c) {
  double s = 0.0;
  for (const Complex& x : c) s += std::norm(x);
  return s;
}

struct Candidate {
  ScaledSeries series;
  std::vector<Complex> coeffs;
};

Candidate candidate(const StateKind& kind, int cutoff, SeriesMode mode) {
  Candidate c{coherent_series(kind.alpha, kind.tau, cutoff, mode), {}};
  c.coeffs = with_parity(c.series.scaled, kind.kind);
  return c;
}

}  // namespace

std::string_view to_string(Kind kind) {
  switch (kind) {
    case Kind::Coherent:
      return "coherent";
    case Kind::CatEven:
      return "cat-even";
    case Kind::CatOdd:
      return "cat-odd";
  }
  return "?";
}

Kind parse_kind(std::string_view text) {
  if (text == "coherent") return Kind::Coherent;
  if (text == "cat-even") return Kind::CatEven;
  if (text == "cat-odd") return Kind::CatOdd;
  throw ConfigError("unknown state kind '" + std::string(text) + "'");
}

void StateKind::validate() const {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw ConfigError("tau must be finite and >= 0, got " + std::to_string(tau));
  }
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw ConfigError("alpha must be finite");
  }
  if (kind == Kind::CatOdd && std::abs(alpha) < kMinOddCatAlpha) {
    throw DegenerateStateError("odd cat state with |alpha| = " +
                               std::to_string(std::abs(alpha)) + " is degenerate");
  }
}

double coherent_norm_sq(Complex alpha, double tau) {
  const double s = std::norm(alpha);
  const double bracket = 1.0 - tau * s - 0.25 * tau * s * s;
  if (!(bracket > 0.0)) {
    throw BreakdownError("closed coherent normalization is non-positive at |alpha| = " +
                         std::to_string(std::abs(alpha)) + ", tau = " + std::to_string(tau));
  }
  return std::exp(s) * bracket;
}

double cat_norm_sq(Complex alpha, double tau, Parity parity) {
  const double s = std::norm(alpha);
  if (parity == Parity::Odd && std::abs(alpha) < kMinOddCatAlpha) {
    throw DegenerateStateError("odd cat normalization vanishes at |alpha| = " +
                               std::to_string(std::abs(alpha)));
  }
  const double bracket = 1.0 - tau * s - 0.25 * tau * s * s;
  if (!(bracket > 0.0)) {
    throw BreakdownError("closed coherent normalization is non-positive at |alpha| = " +
                         std::to_string(std::abs(alpha)) + ", tau = " + std::to_string(tau));
  }
  // e^{-|a|^2} / (2 N^2) with N^2 = e^{|a|^2} * bracket.
  const double overlap =
      std::exp(-2.0 * s) / (2.0 * bracket) * (4.0 + 4.0 * tau * s - tau * s * s);
  return parity == Parity::Even ? 2.0 + overlap : 2.0 - overlap;
}

NormalizationPair normalization_pair(Complex alpha, double tau, Parity parity) {
  return {coherent_norm_sq(alpha, tau), cat_norm_sq(alpha, tau, parity)};
}

int default_cutoff(Complex alpha) {
  const double s = std::norm(alpha);
  return std::max(30, static_cast<int>(std::ceil(s + 8.0 * std::sqrt(s + 1.0) + 8.0)));
}

bool perturbative_warning(Complex alpha, double tau) {
  if (tau == 0.0) return false;
  const double s = std::norm(alpha);
  const int top = default_cutoff(alpha);
  double log_p = -s;  // log Poisson(0; s)
  for (int n = 0; n < top; ++n) {
    if (n > 0) log_p += (s > 0.0 ? std::log(s) : -std::numeric_limits<double>::infinity()) -
                        std::log(static_cast<double>(n));
    if (log_p < std::log(1e-6)) {
      if (n > s) break;
      continue;
    }
    const double correction = 0.25 * tau * n * (3.0 + n);
    const double sideband = tau / 16.0 * sqrt_rising4(n + 1);
    if (correction > 0.5 || sideband > 0.5) return true;
  }
  return false;
}

bool in_stated_validity_region(Complex alpha) {
  return alpha.imag() - alpha.real() >= 0.1 - 1e-12;
}

double ScaledSeries::log_norm_sq() const {
  const double s = sum_norm(scaled);
  return s > 0.0 ? std::log(s) + 2.0 * log_scale : -std::numeric_limits<double>::infinity();
}

ScaledSeries coherent_series(Complex alpha, double tau, int cutoff, SeriesMode mode) {
  if (cutoff < 1) throw DimensionError("coherent_series needs cutoff >= 1");
  const int span = cutoff + 4;
  const DeformationProfile profile(tau, span);
  const double mod = std::abs(alpha);
  const double phase = std::arg(alpha);

  // log|b_k| with b_k = alpha^k / sqrt(k!) times 1/f(k)! in the exact mode.
  std::vector<double> log_mag(span);
  for (int k = 0; k < span; ++k) {
    if (mod == 0.0) {
      log_mag[k] = k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    } else {
      log_mag[k] = k * std::log(mod) - 0.5 * std::lgamma(k + 1.0);
    }
    if (mode == SeriesMode::Exact) log_mag[k] += profile.log_inv_f_factorial(k);
  }
  ScaledSeries out;
  out.log_scale = *std::max_element(log_mag.begin(), log_mag.end());
  std::vector<Complex> b(span);
  for (int k = 0; k < span; ++k) {
    b[k] = std::isinf(log_mag[k]) ? Complex{} : std::polar(std::exp(log_mag[k] - out.log_scale),
                                                          k * phase);
  }
  out.scaled.resize(cutoff);
  for (int n = 0; n < cutoff; ++n) {
    Complex c = b[n] - tau / 16.0 * sqrt_rising4(n + 1) * b[n + 4];
    if (n >= 4) c += tau / 16.0 * sqrt_rising4(n - 3) * b[n - 4];
    if (mode == SeriesMode::FirstOrder) c *= profile.inv_f_factorial(n, SeriesMode::FirstOrder);
    out.scaled[n] = c;
  }
  return out;
}

BuiltState build_state(const StateKind& kind, std::optional<int> cutoff, SeriesMode mode) {
  kind.validate();
  Candidate cand;
  if (cutoff) {
    if (*cutoff < 1) throw DimensionError("cutoff must be >= 1");
    cand = candidate(kind, *cutoff, mode);
    if (tail_fraction(cand.coeffs) >= kTailProbability) {
      int suggested = *cutoff;
      do {
        suggested = std::max(suggested + 8, suggested * 5 / 4);
      } while (suggested < kMaxAutoCutoff &&
               tail_fraction(candidate(kind, suggested, mode).coeffs) >= kTailProbability);
      throw CutoffError("cutoff " + std::to_string(*cutoff) + " leaves a tail above 1e-12 for " +
                            std::string(to_string(kind.kind)) + " |alpha| = " +
                            std::to_string(std::abs(kind.alpha)) + "; try cutoff " +
                            std::to_string(suggested),
                        suggested);
    }
  } else {
    int k = default_cutoff(kind.alpha);
    cand = candidate(kind, k, mode);
    while (tail_fraction(cand.coeffs) >= kTailProbability) {
      k = std::max(k + 8, k * 5 / 4);
      if (k > kMaxAutoCutoff) {
        throw CutoffError("no cutoff up to " + std::to_string(kMaxAutoCutoff) +
                              " satisfies the tail criterion",
                          kMaxAutoCutoff);
      }
      cand = candidate(kind, k, mode);
    }
  }

  const double series_norm = sum_norm(cand.series.scaled);
  const double vector_norm = sum_norm(cand.coeffs);
  if (!(vector_norm > 0.0)) throw DegenerateStateError("state series vanishes identically");

  CVector v(static_cast<Eigen::Index>(cand.coeffs.size()));
  const double inv = 1.0 / std::sqrt(vector_norm);
  for (std::size_t n = 0; n < cand.coeffs.size(); ++n) v(n) = cand.coeffs[n] * inv;

  BuiltState out{FockVector(std::move(v)), kind, mode};
  const double s = std::norm(kind.alpha);
  const double bracket = 1.0 - kind.tau * s - 0.25 * kind.tau * s * s;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (kind.kind == Kind::Coherent) {
    out.numeric_norm_sq = std::exp(cand.series.log_norm_sq());
    out.closed_norm_sq = bracket > 0.0 ? coherent_norm_sq(kind.alpha, kind.tau) : nan;
  } else {
    const Parity parity = kind.kind == Kind::CatEven ? Parity::Even : Parity::Odd;
    out.numeric_norm_sq = vector_norm / series_norm;
    out.closed_norm_sq = bracket > 0.0 ? cat_norm_sq(kind.alpha, kind.tau, parity) : nan;
  }
  out.perturbative_warning = perturbative_warning(kind.alpha, kind.tau);
  out.uncertainty_valid = quad_moments_closed(kind).valid();
  out.in_stated_region = in_stated_validity_region(kind.alpha);
  return out;
}

bool cutoff_sufficient(const StateKind& kind, int cutoff, SeriesMode mode) {
  kind.validate();
  if (cutoff < 1) return false;
  return tail_fraction(candidate(kind, cutoff, mode).coeffs) < kTailProbability;
}

BuiltState build_coherent(Complex alpha, double tau, std::optional<int> cutoff,
                          SeriesMode mode) {
  return build_state({Kind::Coherent, alpha, tau}, cutoff, mode);
}

BuiltState build_cat(Complex alpha, double tau, Parity parity, std::optional<int> cutoff,
                     SeriesMode mode) {
  return build_state({parity == Parity::Even ? Kind::CatEven : Kind::CatOdd, alpha, tau},
                     cutoff, mode);
}

}  // namespace ncqo

#include "ncqo/beamsplitter.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "ncqo/error.hpp"

namespace ncqo {

namespace {

// log of the binomial coefficient C(n, k).
double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Powers of a complex number, with 0^0 = 1.
std::vector<Complex> powers(Complex x, int count) {
  std::vector<Complex> p(count);
  Complex acc{1.0, 0.0};
  for (int k = 0; k < count; ++k) {
    p[k] = acc;
    acc *= x;
  }
  return p;
}

}  // namespace

void SplitterParams::validate() const {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw ConfigError("theta must lie in [0, pi], got " + std::to_string(theta));
  }
  if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi)) {
    throw ConfigError("phi must lie in [0, 2 pi), got " + std::to_string(phi));
  }
}

double SplitterParams::t() const { return std::cos(0.5 * theta); }

Complex SplitterParams::r() const { return -std::polar(std::sin(0.5 * theta), phi); }

double BipartiteState::norm_sq() const {
  double s = 0.0;
  for (const auto& [key, amp] : amplitudes) s += std::norm(amp);
  return s;
}

BipartiteState split_fock(int n, const SplitterParams& params) {
  if (n < 0) throw DimensionError("split_fock needs n >= 0");
  params.validate();
  const auto tp = powers(params.t(), n + 1);
  const auto rp = powers(params.r(), n + 1);
  BipartiteState out{n + 1, n + 1, {}};
  for (int q = 0; q <= n; ++q) {
    const Complex amp = std::exp(0.5 * log_binomial(n, q)) * tp[q] * rp[n - q];
    if (amp != Complex{}) out.amplitudes[{q, n - q}] = amp;
  }
  return out;
}

BipartiteState split_state(const FockVector& input, const SplitterParams& params) {
  params.validate();
  const int k = input.cutoff();
  const auto tp = powers(params.t(), k);
  const auto rp = powers(params.r(), k);
  BipartiteState out{k, k, {}};
  for (int n = 0; n < k; ++n) {
    const Complex c = input[n];
    if (c == Complex{}) continue;
    for (int q = 0; q <= n; ++q) {
      const Complex amp = c * std::exp(0.5 * log_binomial(n, q)) * tp[q] * rp[n - q];
      if (amp != Complex{}) out.amplitudes[{q, n - q}] += amp;
    }
  }
  return out;
}

DensityMatrix reduced_density(const BipartiteState& state) {
  // Regroup amplitudes by the traced-out occupation m.
  std::map<int, std::vector<std::pair<int, Complex>>> by_b;
  for (const auto& [key, amp] : state.amplitudes) by_b[key.second].emplace_back(key.first, amp);
  CMatrix rho = CMatrix::Zero(state.cutoff_a, state.cutoff_a);
  for (const auto& [m, column] : by_b) {
    for (const auto& [q, aq] : column) {
      for (const auto& [s, as] : column) rho(q, s) += aq * std::conj(as);
    }
  }
  return {std::move(rho)};
}

double linear_entropy_oracle(const DensityMatrix& rho) { return 1.0 - rho.purity(); }

double linear_entropy_closed(Complex alpha, double tau, const SplitterParams& params,
                             int cutoff, SeriesMode mode) {
  params.validate();
  if (cutoff < 1) throw DimensionError("cutoff must be >= 1");
  const double norm_sq = coherent_norm_sq(alpha, tau);
  const ScaledSeries g = coherent_series(alpha, tau, cutoff, mode);

  double total = 0.0;
  for (const Complex& x : g.scaled) total += std::norm(x);
  const double top = std::norm(g.scaled.back());
  if (cutoff > 1 && top > 1e-10 * total) {
    throw CutoffError("entropy sum not converged at cutoff " + std::to_string(cutoff),
                      cutoff + cutoff / 2 + 8);
  }

  const double t2 = params.t() * params.t();
  const double r2 = std::norm(params.r());
  const double log_t2 = std::log(t2);
  const double log_r2 = std::log(r2);
  auto weight = [](double log_base, double base, int k) {
    // base^k with 0^0 = 1.
    return k == 0 ? 1.0 : (base == 0.0 ? 0.0 : std::exp(k * log_base));
  };

  // rho_qs = t^q t^s sum_m |r|^2m sqrt(C(m+q, q) C(m+s, s)) g_{m+q} conj(g_{m+s}),
  // and only |rho_qs| enters the purity.
  double purity = 0.0;
  for (int q = 0; q < cutoff; ++q) {
    const double wq = weight(log_t2, t2, q);
    if (wq == 0.0) continue;
    for (int s = 0; s < cutoff; ++s) {
      const double ws = weight(log_t2, t2, s);
      if (ws == 0.0) continue;
      Complex acc{};
      const int m_end = cutoff - std::max(q, s);
      for (int m = 0; m < m_end; ++m) {
        const double wm = weight(log_r2, r2, m);
        if (wm == 0.0) break;
        const double binom = std::exp(0.5 * (log_binomial(m + q, q) + log_binomial(m + s, s)));
        acc += wm * binom * g.scaled[m + q] * std::conj(g.scaled[m + s]);
      }
      purity += wq * ws * std::norm(acc);
    }
  }
  // Undo the series scaling and divide by N^4.
  return 1.0 - purity * std::exp(4.0 * g.log_scale - 2.0 * std::log(norm_sq));
}

double entropy_for_kind(const StateKind& kind, const SplitterParams& params,
                        std::optional<int> cutoff, SeriesMode mode) {
  const BuiltState state = build_state(kind, cutoff, mode);
  return linear_entropy_oracle(reduced_density(split_state(state.vector, params)));
}

}  // namespace ncqo

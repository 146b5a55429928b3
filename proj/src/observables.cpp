#include "ncqo/observables.hpp"

#include <cmath>
#include <limits>

#include "ncqo/error.hpp"

namespace ncqo {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Overflow-safe hyperbolic helpers. All arguments are >= 0 here.
double csch(double x) { return x > 350.0 ? 0.0 : 1.0 / std::sinh(x); }
double sech(double x) { return x > 350.0 ? 0.0 : 1.0 / std::cosh(x); }
double coth(double x) { return 1.0 / std::tanh(x); }

// x / tanh(x) and x / sinh(x), finite at x -> 0.
double x_coth(double x) { return x < 1e-8 ? 1.0 + x * x / 3.0 : x / std::tanh(x); }
double x_csch(double x) { return x < 1e-8 ? 1.0 - x * x / 6.0 : x * csch(x); }

struct AlphaTerms {
  Complex a;
  Complex ac;
  double s;      // |alpha|^2
  double sum2;   // alpha^2 + alpha*^2
  double diff2;  // (alpha^2 - alpha*^2)^2, real and <= 0
};

AlphaTerms terms(Complex alpha) {
  const Complex ac = std::conj(alpha);
  return {alpha, ac, std::norm(alpha), (alpha * alpha + ac * ac).real(),
          ((alpha * alpha - ac * ac) * (alpha * alpha - ac * ac)).real()};
}

QuadratureMoments finish(QuadratureMoments m) {
  m.saturation_defect = m.var_Y * m.var_Z - m.R * m.R;
  return m;
}

QuadratureMoments coherent_closed(const AlphaTerms& t, double tau) {
  const Complex a = t.a;
  const Complex ac = t.ac;
  const Complex plus = a + ac;
  const Complex minus = a - ac;
  const double r2 = std::sqrt(2.0);
  const Complex quartic = a * a + ac * ac + a * a * a * a + ac * ac * ac * ac;
  QuadratureMoments m;
  m.mean_Y = (plus * (4.0 - tau * minus * minus) / (4.0 * r2)).real();
  m.mean_Z = (kI * minus * (2.0 * tau + tau * plus * plus - 4.0) / (4.0 * r2)).real();
  m.mean_Y2 = (0.25 * (2.0 + 2.0 * plus * plus -
                       tau * (quartic - 4.0 * t.s - 2.0 * t.s * t.s - 2.0)))
                  .real();
  m.mean_Z2 =
      (0.25 * (2.0 - 2.0 * minus * minus + tau * (quartic - 4.0 * t.s - 2.0 * t.s * t.s)))
          .real();
  m.R = (0.25 * (2.0 + tau - tau * minus * minus)).real();
  const double shift = tau * (0.25 + 0.5 * t.s);
  m.var_Y = m.R + shift;
  m.var_Z = m.R - shift;
  m.U = shift;
  m.U_tilde = shift;
  // R(U - U~) vanishes and U U~ is second order: the relation is saturated.
  m.validity = 0.0;
  return finish(m);
}

// <Y^2>, <Z^2> for cats from M1^+-, M2^+- over N^2 N^2_+-. Every term is
// carried with the common factor e^{|alpha|^2} divided out.
void cat_second_moments(const AlphaTerms& t, double tau, int sign, QuadratureMoments* m) {
  const Complex a = t.a;
  const Complex ac = t.ac;
  const double s = t.s;
  auto mu = [&](int pm) { return (2.0 + 2.0 * (a + double(pm) * ac) * (a + double(pm) * ac)).real(); };
  auto lam = [&](int pm) {
    return pm * 4.0 * s * t.sum2 + s * s * (1.0 + t.sum2) + pm * 2.0 * s * s * s;
  };
  // exp(pm s) * exp(-s)
  auto weight = [&](int pm) { return pm > 0 ? 1.0 : std::exp(-2.0 * s); };
  auto m1 = [&](int pm) {
    return weight(pm) / 4.0 *
           (2.0 * mu(pm) + tau * (6.0 - mu(-pm) - 2.0 * t.sum2 * t.sum2 - lam(pm)));
  };
  auto m2 = [&](int pm) {
    return weight(pm) / 4.0 *
           (8.0 - 2.0 * mu(-pm) +
            tau * (mu(-pm) - 2.0 + 2.0 * t.diff2 + lam(pm) - pm * 8.0 * s - 10.0 * s * s -
                   pm * 4.0 * s * s * s));
  };
  const double bracket = 1.0 - tau * s - 0.25 * tau * s * s;
  const double cat_norm =
      2.0 + sign * std::exp(-2.0 * s) / (2.0 * bracket) * (4.0 + 4.0 * tau * s - tau * s * s);
  const double denom = bracket * cat_norm;
  m->mean_Y2 = (m1(+1) + sign * m1(-1)) / denom;
  m->mean_Z2 = (m2(+1) + sign * m2(-1)) / denom;
}

QuadratureMoments even_cat_closed(const AlphaTerms& t, double tau) {
  const double s = t.s;
  const double th = std::tanh(s);
  const double e = 1.0 / (1.0 + std::exp(std::min(2.0 * s, 700.0)));
  const double sq = std::pow(sech(s), 2);
  QuadratureMoments m;
  m.R = 0.5 + tau / 4.0 * (1.0 - t.sum2 + 2.0 * s * th);
  m.U = t.sum2 / 2.0 + s * th + tau / 4.0 * (1.0 - t.diff2 + 2.0 * s * th - 4.0 * s * s * sq);
  const double minus_sq = ((t.a - t.ac) * (t.a - t.ac)).real();
  m.U_tilde = minus_sq * (1.0 - tau) / 2.0 + tau / 4.0 * (1.0 + 2.0 * s - t.diff2) +
              s * (2.0 - 3.0 * tau + 4.0 * tau * s) * e - 4.0 * tau * s * s * e * e;
  cat_second_moments(t, tau, +1, &m);
  return m;
}

QuadratureMoments odd_cat_closed(const AlphaTerms& t, double tau) {
  const double s = t.s;
  const double xc = x_coth(s);         // s coth s
  const double xs = x_csch(s);         // s csch s
  QuadratureMoments m;
  m.R = 0.5 + tau / 4.0 * (1.0 - t.sum2 + 2.0 * xc);
  m.U = t.sum2 / 2.0 + xc + tau / 4.0 * (1.0 - t.diff2 + 2.0 * xc + 4.0 * xs * xs);
  // The alpha^2 + alpha*^2 term inside the tau bracket enters with weight 2;
  // with weight 1 the matrix route disagrees at first order in tau.
  m.U_tilde = t.sum2 / 2.0 - xc +
              tau / 4.0 * (1.0 - 2.0 * t.sum2 - t.diff2 + 6.0 * xc - 4.0 * xs * xs);
  cat_second_moments(t, tau, -1, &m);
  return m;
}

}  // namespace

MetricQuadratures metric_quadratures(double tau, int cutoff) {
  if (cutoff < 6) throw DimensionError("metric_quadratures needs cutoff >= 6");
  const QuadraturePair q = quadratures(cutoff);
  const CMatrix& y = q.y.entries();
  const CMatrix& z = q.z.entries();
  const CMatrix z2 = z * z;
  CMatrix yt = y + 0.5 * tau * (z2 * y + y * z2);
  yt = 0.5 * (yt + yt.adjoint()).eval();
  return {OperatorMatrix(std::move(yt)), q.z};
}

OperatorMatrix perturbed_number_operator(double tau, int cutoff) {
  const OperatorMatrix basis = perturbed_basis(tau, cutoff);
  const CMatrix& u = basis.entries();
  const Eigen::VectorXd n = Eigen::VectorXd::LinSpaced(cutoff, 0.0, cutoff - 1.0);
  CMatrix out = u * n.cast<Complex>().asDiagonal() * u.adjoint();
  return OperatorMatrix(std::move(out));
}

QuadratureMoments quad_moments_closed(const StateKind& kind) {
  const AlphaTerms t = terms(kind.alpha);
  QuadratureMoments m;
  switch (kind.kind) {
    case Kind::Coherent:
      return coherent_closed(t, kind.tau);
    case Kind::CatEven:
      m = even_cat_closed(t, kind.tau);
      break;
    case Kind::CatOdd:
      m = odd_cat_closed(t, kind.tau);
      break;
  }
  m.mean_Y = 0.0;
  m.mean_Z = 0.0;
  m.var_Y = m.R + m.U;
  m.var_Z = m.R - m.U_tilde;
  m.validity = m.R * (m.U - m.U_tilde) - m.U * m.U_tilde;
  return finish(m);
}

QuadratureMoments quad_moments_oracle(const FockVector& state, double tau) {
  const MetricQuadratures q = metric_quadratures(tau, state.cutoff());
  const CVector yv = q.y.entries() * state.coeffs();
  const CVector zv = q.z.entries() * state.coeffs();
  QuadratureMoments m;
  m.mean_Y = state.coeffs().dot(yv).real();
  m.mean_Z = state.coeffs().dot(zv).real();
  m.mean_Y2 = yv.squaredNorm();
  m.mean_Z2 = zv.squaredNorm();
  m.var_Y = m.mean_Y2 - m.mean_Y * m.mean_Y;
  m.var_Z = m.mean_Z2 - m.mean_Z * m.mean_Z;
  m.R = 0.5 * (1.0 + tau * m.mean_Z2);
  m.U = m.var_Y - m.R;
  m.U_tilde = m.R - m.var_Z;
  m.validity = m.R * (m.U - m.U_tilde) - m.U * m.U_tilde;
  return finish(m);
}

NumberMoments mandel_closed(const StateKind& kind) {
  const double s = std::norm(kind.alpha);
  const double tau = kind.tau;
  NumberMoments m;
  if (s == 0.0 && kind.kind != Kind::Coherent) {
    kind.validate();
  }
  switch (kind.kind) {
    case Kind::Coherent:
      m.mean_N = s - 0.5 * tau * s * (2.0 + s);
      m.mean_N2 = s + s * s - tau * s * (1.0 + 3.0 * s + s * s);
      m.mandel_Q = -0.5 * tau * s;
      break;
    case Kind::CatEven: {
      const double th = std::tanh(s);
      m.mean_N = (1.0 - tau) * s * th + tau * s * s * (th * th - 1.5);
      m.mean_N2 = s * s + (1.0 - tau - tau * s * s) * s * th + tau * s * s * (th * th - 4.0);
      const double x = 2.0 * s;
      // |a|^2/(2 sinh x) [4 - 5 tau - tau cosh x] + tau |a|^4 / sinh^2 x [1 + 5 cosh x]
      m.mandel_Q = 0.25 * x_csch(x) * (4.0 - 5.0 * tau) - 0.5 * tau * s * coth(x) +
                   tau * s * s * (csch(x) * csch(x) + 5.0 * csch(x) * coth(x));
      break;
    }
    case Kind::CatOdd: {
      const double th = std::tanh(s);
      const double xs = x_csch(s);
      m.mean_N = kNaN;
      m.mean_N2 = kNaN;
      m.has_moments = false;
      m.mandel_Q = -0.5 * s *
                   (tau * th + 4.0 * (1.0 - tau) * csch(2.0 * s) +
                    tau * xs * csch(s) * (2.0 + 3.0 * th * th));
      break;
    }
  }
  m.var_N = m.mean_N2 - m.mean_N * m.mean_N;
  if (s < 1e-16) {
    m.mandel_Q = 0.0;
    m.defined = false;
  }
  return m;
}

NumberMoments mandel_oracle(const FockVector& state, double tau) {
  const OperatorMatrix n = perturbed_number_operator(tau, state.cutoff());
  const CVector nv = n.entries() * state.coeffs();
  NumberMoments m;
  m.mean_N = state.coeffs().dot(nv).real();
  m.mean_N2 = nv.squaredNorm();
  m.var_N = m.mean_N2 - m.mean_N * m.mean_N;
  if (m.mean_N > 1e-14) {
    m.mandel_Q = m.var_N / m.mean_N - 1.0;
  } else {
    m.mandel_Q = 0.0;
    m.defined = false;
  }
  return m;
}

std::vector<double> photon_distribution(const FockVector& state) {
  std::vector<double> p(state.cutoff());
  for (int n = 0; n < state.cutoff(); ++n) p[n] = std::norm(state[n]);
  return p;
}

namespace ho {

double even_cat_U(Complex alpha) {
  const AlphaTerms t = terms(alpha);
  return 0.5 * (t.sum2 + 2.0 * t.s * std::tanh(t.s));
}

double even_cat_U_tilde(Complex alpha) {
  const AlphaTerms t = terms(alpha);
  return 0.5 * (t.sum2 - 2.0 * t.s * std::tanh(t.s));
}

double cat_mandel(Complex alpha, Parity parity) {
  const double x = 2.0 * std::norm(alpha);
  const double q = x_csch(x);
  return parity == Parity::Even ? q : -q;
}

}  // namespace ho

}  // namespace ncqo

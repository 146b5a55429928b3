#include "ncqo/validate.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>

#include "ncqo/beamsplitter.hpp"
#include "ncqo/deformation.hpp"
#include "ncqo/error.hpp"
#include "ncqo/fock.hpp"
#include "ncqo/observables.hpp"
#include "ncqo/scan.hpp"
#include "ncqo/states.hpp"

namespace ncqo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBandLo = 50.0;
constexpr double kBandHi = 200.0;

std::string alpha_label(Complex a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "alpha=%g%+gi", a.real(), a.imag());
  return buf;
}

std::string tau_label(double tau) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "tau=%g", tau);
  return buf;
}

class Collector {
 public:
  void range(std::string name, double measured, double lo, double hi) {
    const bool ok = measured >= lo && measured <= hi;
    report_.checks.push_back({std::move(name), measured, lo, hi, ok});
  }
  void at_most(std::string name, double measured, double bound) {
    range(std::move(name), measured, -kInf, bound);
  }
  void near(std::string name, double measured, double expected, double tol) {
    range(std::move(name), measured, expected - tol, expected + tol);
  }
  void band(std::string name, const std::function<double(double)>& defect) {
    const double hi = std::abs(defect(1e-2));
    const double lo = std::abs(defect(1e-3));
    range(std::move(name), lo > 0.0 ? hi / lo : kInf, kBandLo, kBandHi);
  }
  ValidationReport take() { return std::move(report_); }

 private:
  ValidationReport report_;
};

void fock_identities(Collector& c) {
  const int k = 40;
  const OperatorMatrix a = ladder_lowering(k);
  const OperatorMatrix comm = a * a.adjoint() - a.adjoint() * a;
  c.at_most("fock: [a, a^dag] = 1 on interior block",
            max_abs_diff(comm, OperatorMatrix::identity(k), k - 1), 1e-13);
}

void gur_saturation(Collector& c) {
  for (Complex alpha : {Complex(1, 0), Complex(1, 1)}) {
    for (double tau : {1e-3, 1e-2}) {
      const QuadratureMoments m = quad_moments_closed({Kind::Coherent, alpha, tau});
      const double d = tau * (0.25 + 0.5 * std::norm(alpha));
      c.near("gur saturation defect, coherent " + alpha_label(alpha) + " " + tau_label(tau),
             m.saturation_defect, -d * d, 1e-12);
    }
  }
}

void ho_limits(Collector& c) {
  double worst_u = 0.0;
  double worst_ut = 0.0;
  double worst_q = 0.0;
  double min_q_even = kInf;
  double max_q_odd = -kInf;
  for (int i = 0; i < 20; ++i) {
    const Complex alpha{0.2 + 0.13 * i, 1.9 - 0.09 * i};
    const QuadratureMoments even = quad_moments_closed({Kind::CatEven, alpha, 0.0});
    worst_u = std::max(worst_u, std::abs(even.U - ho::even_cat_U(alpha)));
    worst_ut = std::max(worst_ut, std::abs(even.U_tilde - ho::even_cat_U_tilde(alpha)));
    const double qe = mandel_closed({Kind::CatEven, alpha, 0.0}).mandel_Q;
    const double qo = mandel_closed({Kind::CatOdd, alpha, 0.0}).mandel_Q;
    worst_q = std::max({worst_q, std::abs(qe - ho::cat_mandel(alpha, Parity::Even)),
                        std::abs(qo - ho::cat_mandel(alpha, Parity::Odd))});
    min_q_even = std::min(min_q_even, qe);
    max_q_odd = std::max(max_q_odd, qo);
  }
  c.at_most("tau=0 limit: even-cat U", worst_u, 1e-12);
  c.at_most("tau=0 limit: even-cat U_tilde", worst_ut, 1e-12);
  c.at_most("tau=0 limit: cat Mandel Q", worst_q, 1e-12);
  c.range("tau=0: even-cat Q > 0 (min over samples)", min_q_even, 1e-300, kInf);
  c.range("tau=0: odd-cat Q < 0 (max over samples)", max_q_odd, -kInf, -1e-300);
}

void glauber_entropy(Collector& c) {
  const SplitterParams half;
  for (Complex alpha : {Complex(0.5, 0), Complex(1, 0), Complex(1, 1), Complex(0, 2)}) {
    const StateKind kind{Kind::Coherent, alpha, 0.0};
    c.at_most("null entropy (oracle), " + alpha_label(alpha),
              std::abs(entropy_for_kind(kind, half, 40)), 1e-8);
    c.at_most("null entropy (closed), " + alpha_label(alpha),
              std::abs(linear_entropy_closed(alpha, 0.0, half, 40)), 1e-8);
  }
  const BipartiteState one = split_fock(1, half);
  c.near("single-photon entropy", linear_entropy_oracle(reduced_density(one)), 0.5, 1e-12);
}

void parity(Collector& c) {
  for (Kind kind : {Kind::CatEven, Kind::CatOdd}) {
    const BuiltState s = build_state({kind, {1.0, 1.0}, 0.1});
    const int wrong = kind == Kind::CatEven ? 1 : 0;
    double off = 0.0;
    for (int n = wrong; n < s.cutoff(); n += 2) off = std::max(off, std::abs(s.vector[n]));
    c.at_most("parity purity, " + std::string(to_string(kind)), off, 1e-14);
  }
  // A^2 |cat> = alpha^2 |cat> at tau = 0.
  const Complex alpha{1.0, 1.0};
  const BuiltState s = build_state({Kind::CatEven, alpha, 0.0}, 40);
  const OperatorMatrix a = generalized_lowering(0.0, 40);
  const CVector res = (a * a).entries() * s.vector.coeffs() - alpha * alpha * s.vector.coeffs();
  c.at_most("cat eigenstate of A^2 (interior block)",
            res.head(interior_size(40)).cwiseAbs().maxCoeff(), 1e-10);
}

void oracle_glauber(Collector& c) {
  const BuiltState s = build_state({Kind::Coherent, {1.0, 0.5}, 0.0}, 40);
  const QuadratureMoments o = quad_moments_oracle(s.vector, 0.0);
  const QuadratureMoments m = quad_moments_closed({Kind::Coherent, {1.0, 0.5}, 0.0});
  const double worst = std::max({std::abs(o.mean_Y - m.mean_Y), std::abs(o.mean_Z - m.mean_Z),
                                 std::abs(o.var_Y - m.var_Y), std::abs(o.var_Z - m.var_Z)});
  c.at_most("tau=0 quadrature oracle vs closed, coherent", worst, 1e-10);
}

void spectrum(Collector& c) {
  const double tau = 1e-3;
  const Eigendecomposition e = hermitian_eigendecomposition(hermitian_counterpart(tau, 60));
  double worst = 0.0;
  for (int n = 0; n < 6; ++n) worst = std::max(worst, std::abs(e.eigenvalues(n) - energy(n, tau)));
  c.at_most("spectrum: lowest 6 levels, tau=1e-3, cutoff 60", worst, 5 * tau * tau + 1e-8);
}

void quadratic_bands(Collector& c) {
  const Complex alphas[] = {{1.0, 0.0}, {1.0, 1.0}, {0.5, 1.5}};
  using Field = double QuadratureMoments::*;
  const std::pair<const char*, Field> fields[] = {
      {"var_Y", &QuadratureMoments::var_Y}, {"var_Z", &QuadratureMoments::var_Z},
      {"R", &QuadratureMoments::R},         {"U", &QuadratureMoments::U},
      {"U_tilde", &QuadratureMoments::U_tilde}};
  for (Kind kind : {Kind::Coherent, Kind::CatEven, Kind::CatOdd}) {
    for (Complex alpha : alphas) {
      for (const auto& [label, field] : fields) {
        c.band(std::string("order band: ") + label + ", " + std::string(to_string(kind)) + " " +
                   alpha_label(alpha),
               [&](double tau) {
                 const StateKind k{kind, alpha, tau};
                 return quad_moments_closed(k).*field -
                        quad_moments_oracle(build_state(k, 40).vector, tau).*field;
               });
      }
      c.band("order band: Mandel Q, " + std::string(to_string(kind)) + " " + alpha_label(alpha),
             [&](double tau) {
               const StateKind k{kind, alpha, tau};
               return mandel_closed(k).mandel_Q - mandel_oracle(build_state(k, 40).vector, tau).mandel_Q;
             });
    }
  }
  c.band("order band: coherent entropy closed vs oracle, alpha=1+1i", [](double tau) {
    const Complex alpha{1.0, 1.0};
    return linear_entropy_closed(alpha, tau, {}, 40) -
           entropy_for_kind({Kind::Coherent, alpha, tau}, {}, 40);
  });
}

void figure_claims(Collector& c) {
  ScanSpec spec;
  spec.quantity = Quantity::UTilde;
  spec.kind = Kind::CatEven;
  spec.re = {0.9, 3.0, 30};
  spec.im = {0.9, 3.0, 30};
  spec.tau_list = {5.0};
  double lo = kInf;
  for (const ScanRow& r : run_scan(spec).rows) lo = std::min(lo, r.value);
  c.range("even-cat U_tilde > 0 at tau=5 (grid minimum)", lo, 1e-300, kInf);

  spec.tau_list = {0.0};
  lo = kInf;
  for (const ScanRow& r : run_scan(spec).rows) lo = std::min(lo, r.value);
  c.range("ordinary even-cat U_tilde < 0 somewhere (grid minimum)", lo, -kInf, -1e-300);

  spec.quantity = Quantity::Mandel;
  spec.kind = Kind::CatOdd;
  spec.re = {0.1, 3.0, 30};
  spec.im = {0.1, 3.0, 30};
  spec.tau_list = {1.0};
  double hi = -kInf;
  for (const ScanRow& r : run_scan(spec).rows) hi = std::max(hi, r.value);
  c.range("odd-cat Q < 0 at tau=1 (grid maximum)", hi, -kInf, -1e-300);

  spec.quantity = Quantity::Entropy;
  spec.kind = Kind::Coherent;
  spec.re = {0.1, 3.0, 30};
  spec.im = {0.0, 0.0, 1};
  spec.tau_list = {0.0, 0.5, 1.0, 1.5, 2.0};
  const std::vector<ScanRow> rows = run_scan(spec).rows;
  double step = kInf;
  for (std::size_t i = 30; i < rows.size(); ++i) step = std::min(step, rows[i].value - rows[i - 30].value);
  c.range("coherent entropy nondecreasing in tau, real axis (smallest step)", step, 0.0, kInf);

  const Complex alpha{1.0, 1.0};
  const double s_coh = entropy_for_kind({Kind::Coherent, alpha, 2.0});
  const double s_even = entropy_for_kind({Kind::CatEven, alpha, 2.0});
  const double s_odd = entropy_for_kind({Kind::CatOdd, alpha, 2.0});
  c.range("entropy ordering: S_even - S_coherent at alpha=1+1i, tau=2", s_even - s_coh, 0.0, kInf);
  c.range("entropy ordering: S_odd - S_even at alpha=1+1i, tau=2", s_odd - s_even, 0.0, kInf);
}

}  // namespace

ValidationLevel parse_level(const std::string& text) {
  if (text == "fast") return ValidationLevel::Fast;
  if (text == "full") return ValidationLevel::Full;
  throw ConfigError("unknown validation level '" + text + "'");
}

bool ValidationReport::passed() const {
  for (const CheckResult& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

std::string ValidationReport::to_text() const {
  std::string out;
  int failures = 0;
  for (const CheckResult& c : checks) {
    char line[512];
    std::snprintf(line, sizeof line, "%s  %-70s measured=% .6e  bound=[% .6e, % .6e]\n",
                  c.passed ? "PASS" : "FAIL", c.name.c_str(), c.measured, c.lo, c.hi);
    out += line;
    failures += c.passed ? 0 : 1;
  }
  out += std::to_string(checks.size()) + " checks, " + std::to_string(failures) + " failed\n";
  return out;
}

ValidationReport validate(ValidationLevel level) {
  Collector c;
  fock_identities(c);
  gur_saturation(c);
  ho_limits(c);
  glauber_entropy(c);
  parity(c);
  oracle_glauber(c);
  if (level == ValidationLevel::Full) {
    spectrum(c);
    quadratic_bands(c);
    figure_claims(c);
  }
  return c.take();
}

}  // namespace ncqo

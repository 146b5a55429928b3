#include "ncqo/fock.hpp"

#include <cmath>
#include <string>

#include "ncqo/error.hpp"

namespace ncqo {

namespace {

void require_cutoff(int cutoff, int minimum, const char* what) {
  if (cutoff < minimum) {
    throw DimensionError(std::string(what) + ": cutoff " + std::to_string(cutoff) +
                         " is below the minimum " + std::to_string(minimum));
  }
}

void require_same(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": cutoff mismatch " + std::to_string(a) +
                         " vs " + std::to_string(b));
  }
}

template <typename Fn>
OperatorMatrix spectral_map(const OperatorMatrix& op, Fn fn) {
  const Eigendecomposition eig = hermitian_eigendecomposition(op);
  if (eig.eigenvalues.minCoeff() <= 0.0) {
    throw SingularMetricError("operator has non-positive eigenvalue " +
                              std::to_string(eig.eigenvalues.minCoeff()));
  }
  const CMatrix& v = eig.eigenvectors.entries();
  const Eigen::VectorXd mapped = eig.eigenvalues.unaryExpr(fn);
  CMatrix out = v * mapped.cast<Complex>().asDiagonal() * v.adjoint();
  // Exactly hermitian by construction.
  out = 0.5 * (out + out.adjoint()).eval();
  return OperatorMatrix(std::move(out));
}

}  // namespace

int interior_margin(int cutoff) { return (cutoff + 4) / 5; }

int interior_size(int cutoff) { return cutoff - interior_margin(cutoff); }

FockVector::FockVector(CVector coeffs) : coeffs_(std::move(coeffs)) {
  require_cutoff(static_cast<int>(coeffs_.size()), 1, "FockVector");
}

FockVector FockVector::basis_state(int cutoff, int n) {
  require_cutoff(cutoff, 1, "basis_state");
  if (n < 0 || n >= cutoff) {
    throw DimensionError("basis_state: level " + std::to_string(n) +
                         " outside cutoff " + std::to_string(cutoff));
  }
  CVector c = CVector::Zero(cutoff);
  c(n) = 1.0;
  return FockVector(std::move(c));
}

bool FockVector::is_normalized(double tol) const {
  return std::abs(norm_sq() - 1.0) <= tol;
}

FockVector FockVector::normalized() const {
  const double n = coeffs_.norm();
  if (!(n > 0.0)) throw ContractViolation("cannot normalize the zero vector");
  return FockVector(coeffs_ / n);
}

OperatorMatrix::OperatorMatrix(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw DimensionError("OperatorMatrix must be square");
  }
  require_cutoff(static_cast<int>(entries_.rows()), 1, "OperatorMatrix");
}

OperatorMatrix OperatorMatrix::identity(int cutoff) {
  require_cutoff(cutoff, 1, "identity");
  return OperatorMatrix(CMatrix::Identity(cutoff, cutoff));
}

OperatorMatrix OperatorMatrix::diagonal(const Eigen::VectorXd& values) {
  return OperatorMatrix(CMatrix(values.cast<Complex>().asDiagonal()));
}

OperatorMatrix OperatorMatrix::adjoint() const {
  return OperatorMatrix(entries_.adjoint());
}

double OperatorMatrix::hermiticity_residual() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

bool OperatorMatrix::is_hermitian(double tol) const {
  return hermiticity_residual() <= tol;
}

FockVector OperatorMatrix::apply(const FockVector& v) const {
  require_same(cutoff(), v.cutoff(), "apply");
  return FockVector(entries_ * v.coeffs());
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same(a.cutoff(), b.cutoff(), "operator product");
  return OperatorMatrix(a.entries_ * b.entries_);
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same(a.cutoff(), b.cutoff(), "operator sum");
  return OperatorMatrix(a.entries_ + b.entries_);
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same(a.cutoff(), b.cutoff(), "operator difference");
  return OperatorMatrix(a.entries_ - b.entries_);
}

OperatorMatrix operator*(Complex s, const OperatorMatrix& a) {
  return OperatorMatrix(s * a.entries_);
}

OperatorMatrix operator*(double s, const OperatorMatrix& a) {
  return Complex(s, 0.0) * a;
}

OperatorMatrix ladder_lowering(int cutoff) {
  require_cutoff(cutoff, 1, "ladder_lowering");
  CMatrix a = CMatrix::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return OperatorMatrix(std::move(a));
}

OperatorMatrix ladder_raising(int cutoff) { return ladder_lowering(cutoff).adjoint(); }

OperatorMatrix number_operator(int cutoff) {
  require_cutoff(cutoff, 1, "number_operator");
  return OperatorMatrix::diagonal(Eigen::VectorXd::LinSpaced(cutoff, 0.0, cutoff - 1.0));
}

QuadraturePair quadratures(int cutoff) {
  require_cutoff(cutoff, 2, "quadratures");
  const CMatrix a = ladder_lowering(cutoff).entries();
  const CMatrix ad = a.adjoint();
  const double s = 1.0 / std::sqrt(2.0);
  return {OperatorMatrix(s * (ad + a)), OperatorMatrix(kI * s * (ad - a))};
}

Complex expectation(const OperatorMatrix& op, const FockVector& state) {
  return matrix_element(state, op, state);
}

Complex matrix_element(const FockVector& bra, const OperatorMatrix& op,
                       const FockVector& ket) {
  require_same(op.cutoff(), bra.cutoff(), "matrix_element");
  require_same(op.cutoff(), ket.cutoff(), "matrix_element");
  return bra.coeffs().dot(op.entries() * ket.coeffs());
}

Eigendecomposition hermitian_eigendecomposition(const OperatorMatrix& op) {
  if (op.cutoff() > kMaxEigenCutoff) {
    throw DimensionError("hermitian_eigendecomposition: cutoff " +
                         std::to_string(op.cutoff()) + " exceeds " +
                         std::to_string(kMaxEigenCutoff));
  }
  const double scale = std::max(1.0, op.entries().cwiseAbs().maxCoeff());
  const double residual = op.hermiticity_residual();
  if (residual > 1e-12 * scale) {
    throw ContractViolation("hermitian_eigendecomposition: hermiticity residual " +
                            std::to_string(residual));
  }
  const CMatrix sym = 0.5 * (op.entries() + op.entries().adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error("hermitian_eigendecomposition: solver did not converge");
  }
  return {solver.eigenvalues(), OperatorMatrix(solver.eigenvectors())};
}

OperatorMatrix inverse_sqrt(const OperatorMatrix& op) {
  return spectral_map(op, [](double x) { return 1.0 / std::sqrt(x); });
}

OperatorMatrix positive_sqrt(const OperatorMatrix& op) {
  return spectral_map(op, [](double x) { return std::sqrt(x); });
}

double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b, int block) {
  require_same(a.cutoff(), b.cutoff(), "max_abs_diff");
  if (block <= 0) return 0.0;
  return (a.entries().topLeftCorner(block, block) - b.entries().topLeftCorner(block, block))
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace ncqo

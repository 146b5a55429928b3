#pragma once

// Truncated Fock-space linear algebra. A basis of `cutoff` number states
// |0>..|cutoff-1> carries every state vector and operator in the library.

#include <complex>

#include <Eigen/Dense>

namespace ncqo {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Largest basis accepted by the dense eigensolver paths.
inline constexpr int kMaxEigenCutoff = 512;

/// Number of top basis indices excluded from operator-identity checks,
/// ceil(cutoff / 5). Truncation corrupts the matrix elements there.
int interior_margin(int cutoff);
/// cutoff - interior_margin(cutoff).
int interior_size(int cutoff);

/// Complex coefficient vector over |0>..|cutoff-1>.
class FockVector {
 public:
  explicit FockVector(CVector coeffs);

  static FockVector basis_state(int cutoff, int n);

  int cutoff() const { return static_cast<int>(coeffs_.size()); }
  const CVector& coeffs() const { return coeffs_; }
  Complex operator[](int n) const { return coeffs_(n); }

  double norm_sq() const { return coeffs_.squaredNorm(); }
  bool is_normalized(double tol = 1e-10) const;
  /// Throws ContractViolation for the zero vector.
  FockVector normalized() const;

 private:
  CVector coeffs_;
};

/// Dense square operator on the truncated basis.
class OperatorMatrix {
 public:
  explicit OperatorMatrix(CMatrix entries);

  static OperatorMatrix identity(int cutoff);
  static OperatorMatrix diagonal(const Eigen::VectorXd& values);

  int cutoff() const { return static_cast<int>(entries_.rows()); }
  const CMatrix& entries() const { return entries_; }
  Complex operator()(int row, int col) const { return entries_(row, col); }

  OperatorMatrix adjoint() const;
  /// max |M_ij - conj(M_ji)|.
  double hermiticity_residual() const;
  bool is_hermitian(double tol = 1e-12) const;

  FockVector apply(const FockVector& v) const;

  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator*(Complex s, const OperatorMatrix& a);

 private:
  CMatrix entries_;
};

OperatorMatrix operator*(double s, const OperatorMatrix& a);

/// Annihilation operator a with <n-1|a|n> = sqrt(n).
OperatorMatrix ladder_lowering(int cutoff);
OperatorMatrix ladder_raising(int cutoff);
OperatorMatrix number_operator(int cutoff);

struct QuadraturePair {
  OperatorMatrix y;  // (a^dag + a)/sqrt(2)
  OperatorMatrix z;  // i(a^dag - a)/sqrt(2)
};

/// Dimensionless position and momentum quadratures. Requires cutoff >= 2.
QuadraturePair quadratures(int cutoff);

/// <state|op|state>. Throws DimensionError on cutoff mismatch.
Complex expectation(const OperatorMatrix& op, const FockVector& state);
/// <bra|op|ket>.
Complex matrix_element(const FockVector& bra, const OperatorMatrix& op,
                       const FockVector& ket);

struct Eigendecomposition {
  Eigen::VectorXd eigenvalues;  // ascending
  OperatorMatrix eigenvectors;  // columns
};

/// op = V diag(lambda) V^dag. Throws ContractViolation when op is not
/// hermitian and DimensionError above kMaxEigenCutoff.
Eigendecomposition hermitian_eigendecomposition(const OperatorMatrix& op);

/// M with M op M = 1 for positive-definite hermitian op.
/// Throws SingularMetricError if any eigenvalue is <= 0.
OperatorMatrix inverse_sqrt(const OperatorMatrix& op);
/// Principal square root of a positive-definite hermitian op.
OperatorMatrix positive_sqrt(const OperatorMatrix& op);

/// max |A_ij - B_ij| over i, j < block.
double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b, int block);

}  // namespace ncqo

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "vbroadcast/errors.hpp"

namespace vbroadcast {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Default tolerance for exact-algebra checks (tensor bookkeeping, traces).
inline constexpr double kTolExact = 1e-12;
/// Default tolerance for eigensolver-mediated checks.
inline constexpr double kTolSpectral = 1e-10;

/// Ordered list of local dimensions of a composite system. Slot 0 is the most
/// significant tensor factor (row-major index convention, as in np.kron).
struct SubsystemShape {
  std::vector<int> dims;

  SubsystemShape() = default;
  explicit SubsystemShape(std::vector<int> d);

  /// Single system of dimension d.
  static SubsystemShape single(int d);
  /// n systems of equal dimension d.
  static SubsystemShape uniform(int d, int n);

  int num_subsystems() const { return static_cast<int>(dims.size()); }
  /// Product of the local dimensions.
  long total_dim() const;

  bool operator==(const SubsystemShape& other) const = default;
};

/// Dense complex square matrix carrying a subsystem shape.
class Operator {
public:
  /// Validates: square, side length equals the shape's total dimension, all
  /// entries finite.
  Operator(SubsystemShape shape, Matrix entries);

  static Operator identity(const SubsystemShape& shape);
  /// Zero operator on the given shape.
  static Operator zero(const SubsystemShape& shape);

  const SubsystemShape& shape() const { return shape_; }
  const Matrix& matrix() const { return mat_; }
  long dim() const { return mat_.rows(); }

  Complex trace() const { return mat_.trace(); }
  Operator adjoint() const { return Operator(shape_, mat_.adjoint()); }

  /// Max entrywise deviation from Hermiticity.
  double hermiticity_defect() const;
  bool is_hermitian(double tol = kTolExact) const { return hermiticity_defect() <= tol; }

  /// Returns a copy with the entries replaced (same shape; re-validated).
  Operator with_matrix(Matrix m) const { return Operator(shape_, std::move(m)); }

private:
  SubsystemShape shape_;
  Matrix mat_;
};

/// Hermitian, unit-trace, positive-semidefinite Operator.
class DensityMatrix {
public:
  /// Validates Hermiticity (entrywise, tol 1e-12), unit trace (1e-12) and
  /// minimum eigenvalue >= -1e-10; throws contract_violation otherwise.
  explicit DensityMatrix(Operator op);

  const Operator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  long dim() const { return op_.dim(); }

private:
  Operator op_;
};

/// Eigendecomposition of a Hermitian operator, eigenvalues ascending.
struct SpectralDecomposition {
  RealVector eigenvalues;
  Matrix eigenvectors;  // columns, unitary

  Matrix reconstruct() const {
    return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
  }
};

/// Hermitian observable with its eigensystem and spectral range
/// c = max eigenvalue - min eigenvalue.
struct Observable {
  Operator op;
  RealVector eigenvalues;
  Matrix eigenvectors;
  double range_c = 0.0;

  /// Builds from a Hermitian operator (throws contract_violation otherwise).
  static Observable from_operator(const Operator& hermitian);
};

// ---- operations ------------------------------------------------------------

/// Kronecker product in list order; output shape is the concatenation of the
/// input shapes. Throws argument_error on an empty list.
Operator tensor(const std::vector<Operator>& ops);

/// Trace over the complement of `keep` (subsystem indices, 0-based). Output
/// keeps the retained dims in their original order.
Operator partial_trace(const Operator& op, const std::vector<int>& keep);

/// Matrix representation of a permutation of n equal-dimension subsystems.
/// `perm` holds 0-based images: perm[i] = pi(i). Convention:
///   V_pi (|x_1> ⊗ ... ⊗ |x_n>) = |x_{pi^-1(1)}> ⊗ ... ⊗ |x_{pi^-1(n)}>,
/// i.e. V_pi moves the content of slot i to slot pi(i); then
/// V_pi V_sigma = V_{pi∘sigma} with (pi∘sigma)(i) = pi(sigma(i)).
Operator permutation_operator(const std::vector<int>& perm, int local_dim);

/// Zeroes all off-diagonal entries (computational product basis).
Operator dephase(const Operator& op);

/// AB + BA. Throws argument_error on dimension mismatch.
Operator anticommutator(const Operator& a, const Operator& b);

/// Eigendecomposition of a Hermitian operator (tol 1e-10 on the input;
/// throws contract_violation beyond it). Eigenvalues ascending.
SpectralDecomposition spectral(const Operator& op);

// ---- small factories -------------------------------------------------------

/// |i><i| on a d-dimensional system.
Operator basis_projector(int d, int i);
/// Matrix unit |i><j| on a d-dimensional system.
Operator matrix_unit(int d, int i, int j);

Operator pauli_x();
Operator pauli_y();
Operator pauli_z();

/// Cyclic shift X|k> = |k+1 mod d>.
Operator shift_matrix(int d);
/// Clock Z|k> = exp(2*pi*i*k/d)|k>.
Operator clock_matrix(int d);
/// Unitary discrete Fourier transform (Hadamard for d = 2).
Operator fourier_matrix(int d);

// ---- helpers ---------------------------------------------------------------

inline double frobenius_norm(const Matrix& m) { return m.norm(); }
inline double frobenius_distance(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

/// Eigenvalues of the Hermitian part of `m`, ascending.
RealVector hermitian_eigenvalues(const Matrix& m);
double min_eigenvalue(const Matrix& hermitian);

}  // namespace vbroadcast

#include "vbroadcast/operator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace vbroadcast {

namespace {

// Row-major strides: stride[s] = product of dims after slot s.
std::vector<long> strides_of(const std::vector<int>& dims) {
  std::vector<long> stride(dims.size(), 1);
  for (int s = static_cast<int>(dims.size()) - 2; s >= 0; --s) {
    stride[s] = stride[s + 1] * dims[s + 1];
  }
  return stride;
}

}  // namespace

SubsystemShape::SubsystemShape(std::vector<int> d) : dims(std::move(d)) {
  if (dims.empty()) throw argument_error("SubsystemShape: empty dimension list");
  for (int x : dims) {
    if (x < 1) throw argument_error("SubsystemShape: local dimension must be >= 1, got " + std::to_string(x));
  }
}

SubsystemShape SubsystemShape::single(int d) { return SubsystemShape(std::vector<int>{d}); }

SubsystemShape SubsystemShape::uniform(int d, int n) {
  if (n < 1) throw argument_error("SubsystemShape::uniform: need at least one subsystem");
  return SubsystemShape(std::vector<int>(static_cast<size_t>(n), d));
}

long SubsystemShape::total_dim() const {
  long t = 1;
  for (int x : dims) {
    t *= x;
    if (t > (1L << 30)) throw capability_error("SubsystemShape: total dimension exceeds 2^30");
  }
  return t;
}

Operator::Operator(SubsystemShape shape, Matrix entries)
    : shape_(std::move(shape)), mat_(std::move(entries)) {
  if (mat_.rows() != mat_.cols()) throw argument_error("Operator: matrix must be square");
  if (mat_.rows() != shape_.total_dim()) {
    throw argument_error("Operator: matrix side " + std::to_string(mat_.rows()) +
                         " does not match shape dimension " + std::to_string(shape_.total_dim()));
  }
  if (!mat_.allFinite()) throw argument_error("Operator: entries must be finite");
}

Operator Operator::identity(const SubsystemShape& shape) {
  const long d = shape.total_dim();
  return Operator(shape, Matrix::Identity(d, d));
}

Operator Operator::zero(const SubsystemShape& shape) {
  const long d = shape.total_dim();
  return Operator(shape, Matrix::Zero(d, d));
}

double Operator::hermiticity_defect() const {
  return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
}

DensityMatrix::DensityMatrix(Operator op) : op_(std::move(op)) {
  if (op_.hermiticity_defect() > kTolExact) {
    throw contract_violation("DensityMatrix: not Hermitian within 1e-12");
  }
  if (std::abs(op_.trace() - Complex(1.0, 0.0)) > kTolExact) {
    throw contract_violation("DensityMatrix: trace differs from 1 beyond 1e-12");
  }
  if (min_eigenvalue(op_.matrix()) < -kTolSpectral) {
    throw contract_violation("DensityMatrix: negative eigenvalue beyond 1e-10");
  }
}

Observable Observable::from_operator(const Operator& hermitian) {
  SpectralDecomposition sd = spectral(hermitian);
  Observable obs{hermitian, sd.eigenvalues, sd.eigenvectors, 0.0};
  obs.range_c = sd.eigenvalues(sd.eigenvalues.size() - 1) - sd.eigenvalues(0);
  return obs;
}

Operator tensor(const std::vector<Operator>& ops) {
  if (ops.empty()) throw argument_error("tensor: empty operator list");
  std::vector<int> dims;
  Matrix acc = ops.front().matrix();
  dims = ops.front().shape().dims;
  for (size_t k = 1; k < ops.size(); ++k) {
    const Matrix& b = ops[k].matrix();
    Matrix next(acc.rows() * b.rows(), acc.cols() * b.cols());
    for (long i = 0; i < acc.rows(); ++i) {
      for (long j = 0; j < acc.cols(); ++j) {
        next.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = acc(i, j) * b;
      }
    }
    acc = std::move(next);
    const auto& bd = ops[k].shape().dims;
    dims.insert(dims.end(), bd.begin(), bd.end());
  }
  return Operator(SubsystemShape(std::move(dims)), std::move(acc));
}

Operator partial_trace(const Operator& op, const std::vector<int>& keep) {
  const auto& dims = op.shape().dims;
  const int n = op.shape().num_subsystems();
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw argument_error("partial_trace: duplicate subsystem index");
  }
  for (int s : kept) {
    if (s < 0 || s >= n) throw argument_error("partial_trace: subsystem index out of range");
  }
  if (kept.empty()) throw argument_error("partial_trace: must keep at least one subsystem");

  std::vector<int> traced;
  for (int s = 0; s < n; ++s) {
    if (!std::binary_search(kept.begin(), kept.end(), s)) traced.push_back(s);
  }
  const auto stride = strides_of(dims);

  std::vector<int> kept_dims;
  long dk = 1;
  for (int s : kept) {
    kept_dims.push_back(dims[s]);
    dk *= dims[s];
  }
  long dt = 1;
  for (int s : traced) dt *= dims[s];

  // base[a]: full-space index contribution of kept multi-index a;
  // off[t]: contribution of traced multi-index t.
  std::vector<long> base(dk, 0);
  for (long a = 0; a < dk; ++a) {
    long rem = a;
    for (int k = static_cast<int>(kept.size()) - 1; k >= 0; --k) {
      base[a] += (rem % dims[kept[k]]) * stride[kept[k]];
      rem /= dims[kept[k]];
    }
  }
  std::vector<long> off(dt, 0);
  for (long t = 0; t < dt; ++t) {
    long rem = t;
    for (int k = static_cast<int>(traced.size()) - 1; k >= 0; --k) {
      off[t] += (rem % dims[traced[k]]) * stride[traced[k]];
      rem /= dims[traced[k]];
    }
  }

  const Matrix& m = op.matrix();
  Matrix out = Matrix::Zero(dk, dk);
  for (long a = 0; a < dk; ++a) {
    for (long b = 0; b < dk; ++b) {
      Complex sum = 0.0;
      for (long t = 0; t < dt; ++t) sum += m(base[a] + off[t], base[b] + off[t]);
      out(a, b) = sum;
    }
  }
  return Operator(SubsystemShape(std::move(kept_dims)), std::move(out));
}

Operator permutation_operator(const std::vector<int>& perm, int local_dim) {
  const int n = static_cast<int>(perm.size());
  if (n < 1) throw argument_error("permutation_operator: empty permutation");
  if (local_dim < 1) throw argument_error("permutation_operator: local dimension must be >= 1");
  std::vector<bool> seen(n, false);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[v]) throw argument_error("permutation_operator: not a permutation of 0..n-1");
    seen[v] = true;
  }
  const SubsystemShape shape = SubsystemShape::uniform(local_dim, n);
  const long dim = shape.total_dim();
  const auto stride = strides_of(shape.dims);

  Matrix m = Matrix::Zero(dim, dim);
  std::vector<int> x(n), y(n);
  for (long col = 0; col < dim; ++col) {
    long rem = col;
    for (int s = n - 1; s >= 0; --s) {
      x[s] = static_cast<int>(rem % local_dim);
      rem /= local_dim;
    }
    // Content of slot s moves to slot perm[s]: y_{perm(s)} = x_s.
    for (int s = 0; s < n; ++s) y[perm[s]] = x[s];
    long row = 0;
    for (int s = 0; s < n; ++s) row += y[s] * stride[s];
    m(row, col) = 1.0;
  }
  return Operator(shape, std::move(m));
}

Operator dephase(const Operator& op) {
  Matrix m = Matrix::Zero(op.dim(), op.dim());
  m.diagonal() = op.matrix().diagonal();
  return Operator(op.shape(), std::move(m));
}

Operator anticommutator(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) throw argument_error("anticommutator: dimension mismatch");
  return Operator(a.shape(), a.matrix() * b.matrix() + b.matrix() * a.matrix());
}

SpectralDecomposition spectral(const Operator& op) {
  if (op.hermiticity_defect() > kTolSpectral) {
    throw contract_violation("spectral: operator not Hermitian within 1e-10");
  }
  Matrix h = 0.5 * (op.matrix() + op.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw contract_violation("spectral: eigensolver failed to converge");
  }
  return SpectralDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

Operator basis_projector(int d, int i) {
  if (d < 1 || i < 0 || i >= d) throw argument_error("basis_projector: index out of range");
  Matrix m = Matrix::Zero(d, d);
  m(i, i) = 1.0;
  return Operator(SubsystemShape::single(d), std::move(m));
}

Operator matrix_unit(int d, int i, int j) {
  if (d < 1 || i < 0 || i >= d || j < 0 || j >= d) throw argument_error("matrix_unit: index out of range");
  Matrix m = Matrix::Zero(d, d);
  m(i, j) = 1.0;
  return Operator(SubsystemShape::single(d), std::move(m));
}

Operator pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return Operator(SubsystemShape::single(2), std::move(m));
}

Operator pauli_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return Operator(SubsystemShape::single(2), std::move(m));
}

Operator pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return Operator(SubsystemShape::single(2), std::move(m));
}

Operator shift_matrix(int d) {
  if (d < 2) throw argument_error("shift_matrix: dimension must be >= 2");
  Matrix m = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) m((k + 1) % d, k) = 1.0;
  return Operator(SubsystemShape::single(d), std::move(m));
}

Operator clock_matrix(int d) {
  if (d < 2) throw argument_error("clock_matrix: dimension must be >= 2");
  Matrix m = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    const double phase = 2.0 * std::numbers::pi * k / d;
    m(k, k) = Complex(std::cos(phase), std::sin(phase));
  }
  return Operator(SubsystemShape::single(d), std::move(m));
}

Operator fourier_matrix(int d) {
  if (d < 2) throw argument_error("fourier_matrix: dimension must be >= 2");
  Matrix m(d, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      const double phase = 2.0 * std::numbers::pi * j * k / d;
      m(j, k) = scale * Complex(std::cos(phase), std::sin(phase));
    }
  }
  return Operator(SubsystemShape::single(d), std::move(m));
}

RealVector hermitian_eigenvalues(const Matrix& m) {
  Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw contract_violation("hermitian_eigenvalues: eigensolver failed to converge");
  }
  return solver.eigenvalues();
}

double min_eigenvalue(const Matrix& hermitian) {
  RealVector ev = hermitian_eigenvalues(hermitian);
  return ev(0);
}

}  // namespace vbroadcast

#include "vbroadcast/broadcast.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vbroadcast {

namespace {

// Dense constructors pay 16 * side^2 bytes, so refuse sides past 2^13 (one
// matrix = 1 GiB) before anything is allocated. total_dim() itself rejects
// products past 2^30 during the multiply.
constexpr long kMaxDenseSide = 1L << 13;

long checked_dense_side(long side, const char* who) {
  if (side > kMaxDenseSide) {
    throw capability_error(std::string(who) + ": dense side " + std::to_string(side) +
                           " exceeds the 2^13 cap");
  }
  return side;
}

}  // namespace

ChoiOperator::ChoiOperator(int d, SubsystemShape out_shape, Operator m)
    : input_dim(d), output_shape(std::move(out_shape)), matrix(std::move(m)) {
  if (input_dim < 1) throw argument_error("ChoiOperator: input dimension must be >= 1");
  if (matrix.dim() != input_dim * output_shape.total_dim()) {
    throw argument_error("ChoiOperator: matrix side does not equal input_dim * output dimension");
  }
  std::vector<int> expected{input_dim};
  expected.insert(expected.end(), output_shape.dims.begin(), output_shape.dims.end());
  if (matrix.shape().dims != expected) {
    throw argument_error("ChoiOperator: stored shape must be [input] + output dims");
  }
}

std::vector<std::vector<int>> all_n_cycles(int N) {
  if (N < 2) throw argument_error("all_n_cycles: N must be >= 2");
  if (N > 10) throw capability_error("all_n_cycles: (N-1)! enumeration limited to N <= 10");
  // A full cycle is the orbit (0, seq...) for each arrangement seq of 1..N-1.
  std::vector<int> tail(N - 1);
  for (int i = 0; i < N - 1; ++i) tail[i] = i + 1;
  std::vector<std::vector<int>> cycles;
  do {
    std::vector<int> orbit{0};
    orbit.insert(orbit.end(), tail.begin(), tail.end());
    std::vector<int> perm(N);
    for (int i = 0; i < N; ++i) perm[orbit[i]] = orbit[(i + 1) % N];
    cycles.push_back(std::move(perm));
  } while (std::next_permutation(tail.begin(), tail.end()));
  return cycles;
}

Operator average_embedding(const Operator& x, int N) {
  if (N < 2) throw argument_error("average_embedding: N must be >= 2");
  if (x.shape().num_subsystems() != 1) {
    throw argument_error("average_embedding: input must be a single-subsystem operator");
  }
  const int d = static_cast<int>(x.dim());
  const long dim =
      checked_dense_side(SubsystemShape::uniform(d, N).total_dim(), "average_embedding");
  const Operator eye = Operator::identity(SubsystemShape::single(d));
  Matrix acc = Matrix::Zero(dim, dim);
  for (int slot = 0; slot < N; ++slot) {
    std::vector<Operator> factors(static_cast<size_t>(N), eye);
    factors[slot] = x;
    acc += tensor(factors).matrix();
  }
  acc /= static_cast<double>(N);
  return Operator(SubsystemShape::uniform(d, N), std::move(acc));
}

Operator average_embedding(const DensityMatrix& rho, int N) {
  return average_embedding(rho.op(), N);
}

Operator cycle_average(int N, int d) {
  if (N < 2) throw argument_error("cycle_average: N must be >= 2");
  if (d < 2) throw argument_error("cycle_average: dimension must be >= 2");
  const long dim = checked_dense_side(SubsystemShape::uniform(d, N).total_dim(), "cycle_average");
  const auto cycles = all_n_cycles(N);
  Matrix acc = Matrix::Zero(dim, dim);
  for (const auto& perm : cycles) acc += permutation_operator(perm, d).matrix();
  acc /= static_cast<double>(cycles.size());
  return Operator(SubsystemShape::uniform(d, N), std::move(acc));
}

Operator apply_canonical(const Operator& x, int N) {
  const int d = static_cast<int>(x.dim());
  const Operator anti = anticommutator(average_embedding(x, N), cycle_average(N, d));
  return anti.with_matrix(0.5 * anti.matrix());
}

Operator apply_canonical(const DensityMatrix& rho, int N) {
  return apply_canonical(rho.op(), N);
}

ChoiOperator choi_canonical(int d, int N) {
  if (d < 2) throw argument_error("choi_canonical: dimension must be >= 2");
  if (N < 2) throw argument_error("choi_canonical: N must be >= 2");
  // Full Choi shape is [d] + N output slots; gate it before touching any matrix.
  checked_dense_side(SubsystemShape::uniform(d, N + 1).total_dim(), "choi_canonical");
  return choi_of([N](const Operator& x) { return apply_canonical(x, N); }, d);
}

Operator classical_broadcast(const Operator& x, int N) {
  if (N < 2) throw argument_error("classical_broadcast: N must be >= 2");
  if (x.shape().num_subsystems() != 1) {
    throw argument_error("classical_broadcast: input must be a single-subsystem operator");
  }
  const int d = static_cast<int>(x.dim());
  const SubsystemShape out_shape = SubsystemShape::uniform(d, N);
  const long dim = checked_dense_side(out_shape.total_dim(), "classical_broadcast");
  Matrix out = Matrix::Zero(dim, dim);
  for (int i = 0; i < d; ++i) {
    long rep = 0;  // index of |i i ... i>
    for (int s = 0; s < N; ++s) rep = rep * d + i;
    out(rep, rep) = x.matrix()(i, i);
  }
  return Operator(out_shape, std::move(out));
}

Operator classical_broadcast(const DensityMatrix& rho, int N) {
  return classical_broadcast(rho.op(), N);
}

ChoiOperator choi_of(const std::function<Operator(const Operator&)>& map, int d) {
  if (d < 1) throw argument_error("choi_of: dimension must be >= 1");
  checked_dense_side(d, "choi_of");
  SubsystemShape out_shape = map(matrix_unit(d, 0, 0)).shape();
  const long out_dim = out_shape.total_dim();
  const long side = checked_dense_side(d * out_dim, "choi_of");
  Matrix j = Matrix::Zero(side, side);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) {
      const Operator block = map(matrix_unit(d, i, k));
      if (!(block.shape() == out_shape)) {
        throw contract_violation("choi_of: map output shape varies across matrix units");
      }
      j.block(i * out_dim, k * out_dim, out_dim, out_dim) = block.matrix();
    }
  }
  std::vector<int> full_dims{d};
  full_dims.insert(full_dims.end(), out_shape.dims.begin(), out_shape.dims.end());
  return ChoiOperator(d, out_shape, Operator(SubsystemShape(std::move(full_dims)), std::move(j)));
}

Operator apply_choi(const ChoiOperator& choi, const Operator& x) {
  if (x.dim() != choi.input_dim) throw argument_error("apply_choi: input dimension mismatch");
  const Operator xt(SubsystemShape::single(choi.input_dim), x.matrix().transpose());
  const Operator lifted = tensor({xt, Operator::identity(choi.output_shape)});
  const Operator product = lifted.with_matrix(lifted.matrix() * choi.matrix.matrix());
  std::vector<int> keep;
  for (int s = 1; s <= choi.num_receivers(); ++s) keep.push_back(s);
  return partial_trace(product, keep);
}

Operator pdo_identity_chain(const DensityMatrix& rho, int k) {
  if (k < 1) throw argument_error("pdo_identity_chain: k must be >= 1");
  const int d = static_cast<int>(rho.dim());
  Operator r = rho.op();
  for (int step = 2; step <= k; ++step) {
    const Operator lifted = tensor({r, Operator::identity(SubsystemShape::single(d))});
    std::vector<int> perm(step);
    for (int s = 0; s < step; ++s) perm[s] = s;
    std::swap(perm[step - 2], perm[step - 1]);
    const Operator swap_last = permutation_operator(perm, d);
    Operator anti = anticommutator(lifted, swap_last);
    r = anti.with_matrix(0.5 * anti.matrix());
  }
  return r;
}

PdoComparison pdo_compare(const DensityMatrix& rho, int N) {
  if (N < 2) throw argument_error("pdo_compare: N must be >= 2");
  const Operator pdo = pdo_identity_chain(rho, N);
  const Operator canonical = apply_canonical(rho, N);
  const Matrix diff = pdo.matrix() - canonical.matrix();
  PdoComparison cmp;
  cmp.n_points = N;
  cmp.frob_distance = diff.norm();
  cmp.trace_distance_surrogate = 0.5 * hermitian_eigenvalues(diff).cwiseAbs().sum();
  return cmp;
}

}  // namespace vbroadcast

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "vbroadcast/operator.hpp"

namespace vbroadcast {

/// Choi operator of a linear map A -> B_1...B_N, stored on A ⊗ B_1...B_N with
/// the input space first: J = Σ_ij |i><j|_A ⊗ E(|i><j|).
struct ChoiOperator {
  int input_dim;
  SubsystemShape output_shape;
  Operator matrix;

  /// Validates side length = input_dim * output dimension and that the stored
  /// shape is the concatenation [input_dim] + output dims.
  ChoiOperator(int d, SubsystemShape out_shape, Operator m);

  int num_receivers() const { return output_shape.num_subsystems(); }
  long output_dim() const { return output_shape.total_dim(); }
};

/// Distances between the k-point identity-channel pseudo-density operator and
/// the canonical broadcast output on the same number of slots.
struct PdoComparison {
  int n_points = 0;
  double frob_distance = 0.0;
  /// Half sum of absolute eigenvalues of the difference.
  double trace_distance_surrogate = 0.0;
  std::uint64_t state_seed = 0;
};

/// All cycles of full length N on {0..N-1}, as image vectors perm[i] = pi(i),
/// in a fixed deterministic order. (N-1)! entries; N > 10 is refused.
std::vector<std::vector<int>> all_n_cycles(int N);

/// (1/N) Σ_i 1^{⊗(i-1)} ⊗ x ⊗ 1^{⊗(N-i)} on N slots. Trace d^{N-1} · tr(x).
Operator average_embedding(const Operator& x, int N);
Operator average_embedding(const DensityMatrix& rho, int N);

/// V_N = (1/(N-1)!) Σ over N-cycles pi of V_pi. Hermitian: the N-cycle set is
/// inverse-closed. N=2 gives the SWAP.
Operator cycle_average(int N, int d);

/// Canonical broadcast output (1/2){x_N, V_N}; linear in x. For density-matrix
/// input: Hermitian, trace 1, every single-slot marginal equals the input.
Operator apply_canonical(const Operator& x, int N);
Operator apply_canonical(const DensityMatrix& rho, int N);

/// Choi operator of the canonical map, built by applying the map to matrix
/// units. Hermitian; Tr over outputs = 1_A. The full [input] + N outputs
/// shape must stay within the dense construction cap (side <= 2^13).
ChoiOperator choi_canonical(int d, int N);

/// Σ_i <i|x|i> |i><i|^{⊗N}: perfect copying of the computational diagonal.
Operator classical_broadcast(const Operator& x, int N);
Operator classical_broadcast(const DensityMatrix& rho, int N);

/// Choi operator of the linear extension of `map` to matrix units; the output
/// shape is taken from the map's output on |0><0|.
ChoiOperator choi_of(const std::function<Operator(const Operator&)>& map, int d);

/// Action of the map encoded by a Choi operator: E(x) = Tr_A[(x^T ⊗ 1_B) J].
Operator apply_choi(const ChoiOperator& choi, const Operator& x);

/// k-point pseudo-density operator of a state evolving through identity
/// channels: R_1 = rho, R_k = (1/2){R_{k-1} ⊗ 1_d, S_{k-1,k}} with S swapping
/// the last two slots. R_2 coincides with the canonical 1-to-2 broadcast.
Operator pdo_identity_chain(const DensityMatrix& rho, int k);

/// Frobenius and half-sum-of-|eigenvalues| distances between
/// pdo_identity_chain(rho, N) and apply_canonical(rho, N).
PdoComparison pdo_compare(const DensityMatrix& rho, int N);

}  // namespace vbroadcast

#pragma once

#include <cstdint>
#include <string>

#include "vbroadcast/broadcast.hpp"

namespace vbroadcast {

/// Sampling sizes, seed, and per-check pass tolerances for verify_all.
struct AxiomCheckConfig {
  std::string map_id = "canonical";
  int n_unitaries = 20;
  int n_states = 20;
  std::uint64_t seed = 0;
  double tol_uc = 1e-10;        // Haar/eigen-free but conjugation-heavy
  double tol_pi = 1e-12;
  double tol_cc = 1e-12;
  double tol_marginal = 1e-11;  // random-state marginals
  double tol_hp = 1e-12;
  double tol_tp = 1e-12;
};

/// Residuals, pass flags at the configured tolerances, and worst-case
/// witnesses for one candidate map.
struct AxiomReport {
  std::string map_id;
  double uc_residual = 0.0;
  double pi_residual = 0.0;
  double cc_residual = 0.0;
  double marginal_residual = 0.0;
  double hp_residual = 0.0;
  double tp_residual = 0.0;
  bool uc_pass = false;
  bool pi_pass = false;
  bool cc_pass = false;
  bool marginal_pass = false;
  bool hp_pass = false;
  bool tp_pass = false;
  bool all_pass = false;
  /// Input achieving the max residual, per check.
  std::string uc_witness;
  std::string pi_witness;
  std::string cc_witness;
  std::string marginal_witness;
  /// Secondary diagnostic: distance from J to its average over the sampled
  /// conjugation set (zero for a covariant map).
  double twirl_residual = 0.0;
  AxiomCheckConfig config;
};

/// Unitary covariance: max over sampled Haar unitaries plus the deterministic
/// shift/clock/Fourier generator set of
///   || (conj(U)_A ⊗ U^{⊗N}) J (conj(U)_A ⊗ U^{⊗N})^dag - J ||_F.
double check_uc(const ChoiOperator& choi, int n_samples, std::uint64_t seed);

/// Permutation invariance: max over all N! output permutations of
/// || (1_A ⊗ V_pi) J (1_A ⊗ V_pi)^T - J ||_F. N > 6 is refused.
double check_pi(const ChoiOperator& choi);

/// Classical consistency: max over basis inputs |i><j| of
/// || dephase(E(dephase(|i><j|))) - delta_ij |i><i|^{⊗N} ||_F.
double check_cc(const ChoiOperator& choi);

/// Broadcasting marginals: max over random states rho and receivers i of
/// || Tr_{all outputs except i}(E(rho)) - rho ||_F.
double check_broadcasting(const ChoiOperator& choi, int n_states, std::uint64_t seed);

/// (|| J - J^dag ||_F, || Tr_outputs(J) - 1_A ||_F).
std::pair<double, double> check_hp_tp(const ChoiOperator& choi);

/// Runs every check; deterministic given the config seed.
AxiomReport verify_all(const ChoiOperator& choi, const AxiomCheckConfig& config);

}  // namespace vbroadcast

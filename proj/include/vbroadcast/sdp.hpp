#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vbroadcast/broadcast.hpp"

namespace vbroadcast {

/// Minimize a + b over decompositions J1 - J2 = J of the target Choi operator
/// with J1, J2 PSD and Tr over outputs equal to a*1 and b*1 respectively.
struct SdpProblem {
  ChoiOperator target_choi;
  int d;
  int N;
};

enum class SdpStatus { converged, max_iter, infeasible };

std::string to_string(SdpStatus status);

struct SdpSolution {
  ChoiOperator J1;
  ChoiOperator J2;
  double a = 0.0;
  double b = 0.0;
  double u = 0.0;
  double primal_residual = 0.0;
  /// Duality gap of the exit certificate (see certify).
  double dual_gap_estimate = 0.0;
  long iterations = 0;
  SdpStatus status = SdpStatus::max_iter;

  // Solver exit state consumed by certify/extract_decomposition.
  Matrix dual_P;  // multiplier block for J1 (negated PSD multiplier)
  Matrix dual_Q;  // multiplier block for J2
  double dual_a = 0.0;
  double dual_b = 0.0;
  /// Hermitized, partial-trace-repaired copy of the target actually solved.
  Matrix target_repaired;
  /// Tr(target)/d: the forced value of a - b.
  double gamma = 0.0;
};

/// Dual-feasibility certificate built from the solver's exit multipliers:
/// value is a rigorous lower bound on the optimum up to floating-point noise.
struct SdpCertificate {
  double gap = 0.0;         // primal u minus dual_value
  double dual_value = 0.0;  // certified lower bound
  /// [aff(J1-J2-J), aff(Tr_B J1 - a), aff(Tr_B J2 - b), psd(J1), psd(J2),
  ///  compl(S1,J1), compl(S2,J2)]
  std::vector<double> kkt_residuals;
  double eta = 0.0;  // size of the dual feasibility repair shift
  bool valid = false;
};

/// Weights and CPTP channel pair with a*E1 - b*E2 equal to the target.
struct QuasiDecomposition {
  double a;
  double b;
  ChoiOperator choi_E1;
  ChoiOperator choi_E2;
};

struct OverheadRow {
  int d = 0;
  int N = 0;
  double u = 0.0;
  double u_squared = 0.0;
  double a = 0.0;
  double b = 0.0;
  double gap = 0.0;
  long iterations = 0;
  std::string status;
};

/// [[Re H, -Im H], [Im H, Re H]]: real symmetric, same eigenvalues as H with
/// doubled multiplicities; H PSD iff the embedding is PSD.
Eigen::MatrixXd real_embed(const Operator& h, bool assert_hermitian);

/// Nearest PSD matrix in Frobenius norm, via eigendecomposition of the real
/// embedding. Hermitizes the input first.
Matrix psd_project(const Matrix& h);

/// Problem for the canonical map. Refuses d^(N+1) > 256.
SdpProblem build_sdp(int d, int N);

/// Over-relaxed ADMM: alternate a closed-form projection onto the affine
/// constraint set with PSD-cone projections, carrying scaled dual variables.
/// The reported iterate satisfies the equality constraints to machine
/// precision; PSD holds within the primal residual.
SdpSolution solve(const SdpProblem& problem, double tol = 1e-7, long max_iter = 200000);

/// Rebuilds a dual-feasible point from the exit multipliers (trace-corrected
/// partial-trace multipliers, spectral-shift repair, rescale) and reports the
/// duality gap. valid requires converged status and gap < 1e-5 * (1 + |u|).
SdpCertificate certify(const SdpSolution& solution, const SdpProblem& problem);

/// Channels E1 = J1/a, E2 = J2/b after a joint spectral shift that restores
/// PSD without breaking J1 - J2 = target. b <= 1e-6 collapses to a single
/// CPTP channel with weights (1, 0).
QuasiDecomposition extract_decomposition(const SdpSolution& solution);

/// One certified solve per (d, N) entry; per-entry failures are recorded in
/// the row status instead of aborting the batch.
std::vector<OverheadRow> overhead_curve(const std::vector<std::pair<int, int>>& entries,
                                        double tol = 1e-7, long max_iter = 200000);

}  // namespace vbroadcast

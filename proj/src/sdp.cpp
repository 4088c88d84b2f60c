#include "vbroadcast/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vbroadcast {

namespace {

// Tr over the trailing DB-dimensional factor of a (d*DB)-dim matrix.
Matrix trace_out_tail(const Matrix& m, int d, long db) {
  Matrix out(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Complex s = 0.0;
      for (long t = 0; t < db; ++t) s += m(i * db + t, j * db + t);
      out(i, j) = s;
    }
  }
  return out;
}

// M ⊗ 1_DB.
Matrix kron_tail_identity(const Matrix& m, long db) {
  const long d = m.rows();
  Matrix out = Matrix::Zero(d * db, d * db);
  for (long i = 0; i < d; ++i) {
    for (long j = 0; j < d; ++j) {
      for (long t = 0; t < db; ++t) out(i * db + t, j * db + t) = m(i, j);
    }
  }
  return out;
}

// <X, Y> = Re Tr(X^dag Y).
double frob_inner(const Matrix& x, const Matrix& y) {
  return x.conjugate().cwiseProduct(y).sum().real();
}

// Iterate (P, Q, a, b) of the splitting method.
struct Tuple {
  Matrix P;
  Matrix Q;
  double a = 0.0;
  double b = 0.0;
};

double tuple_norm(const Tuple& t) {
  return std::sqrt(t.P.squaredNorm() + t.Q.squaredNorm() + t.a * t.a + t.b * t.b);
}

double tuple_dist(const Tuple& x, const Tuple& y) {
  return std::sqrt((x.P - y.P).squaredNorm() + (x.Q - y.Q).squaredNorm() +
                   (x.a - y.a) * (x.a - y.a) + (x.b - y.b) * (x.b - y.b));
}

// Hermitize and cancel the non-identity component of the output partial
// trace, so the equality constraints are jointly consistent in floating
// point. For a trace-preserving target the correction is at rounding scale.
Matrix repair_target(const Matrix& raw, int d, long db, double& gamma_out) {
  Matrix j = 0.5 * (raw + raw.adjoint());
  gamma_out = j.trace().real() / d;
  const Matrix excess =
      (trace_out_tail(j, d, db) - gamma_out * Matrix::Identity(d, d)) / static_cast<double>(db);
  j -= kron_tail_identity(excess, db);
  return j;
}

SdpCertificate build_certificate(const SdpSolution& sol) {
  const int d = sol.J1.input_dim;
  const long db = sol.J1.output_dim();
  const Matrix& jhat = sol.target_repaired;
  const Matrix eye_d = Matrix::Identity(d, d);

  // PSD multipliers: negatives of the consensus duals, PSD by the cone
  // projection's construction (Moreau decomposition).
  const Matrix s1 = -0.5 * (sol.dual_P + sol.dual_P.adjoint());
  const Matrix s2 = -0.5 * (sol.dual_Q + sol.dual_Q.adjoint());
  // Partial-trace multiplier traces; the scalar duals are <= 0, so tau <= 1
  // as weak duality requires.
  const double tau1 = std::min(1.0, 1.0 + sol.dual_a);
  const double tau2 = std::min(1.0, 1.0 + sol.dual_b);

  // Stationarity forces S1 + S2 = (W1 + W2) ⊗ 1 at an optimum; recover the
  // sum and split it with trace corrections, then repair residual
  // infeasibility with a spectral shift and rescale.
  const Matrix t = trace_out_tail(s1 + s2, d, db) / static_cast<double>(db);
  const double half_trace = 0.5 * t.trace().real();
  const Matrix w1 = 0.5 * t + ((tau1 - half_trace) / d) * eye_d;
  const Matrix w2 = 0.5 * t + ((tau2 - half_trace) / d) * eye_d;
  const Matrix y = s1 - kron_tail_identity(w1, db);
  const Matrix c2 = kron_tail_identity(w2, db) - y;

  SdpCertificate cert;
  cert.eta = std::max({0.0, -min_eigenvalue(s1), -min_eigenvalue(c2)});
  const double kappa = 1.0 / (1.0 + cert.eta * d);
  cert.dual_value = -kappa * frob_inner(y, jhat);
  cert.gap = sol.u - cert.dual_value;

  const Matrix& p = sol.J1.matrix.matrix();
  const Matrix& q = sol.J2.matrix.matrix();
  const Matrix eye_full = Matrix::Identity(p.rows(), p.cols());
  cert.kkt_residuals = {
      (p - q - jhat).norm(),
      (trace_out_tail(p, d, db) - sol.a * eye_d).norm(),
      (trace_out_tail(q, d, db) - sol.b * eye_d).norm(),
      std::max(0.0, -min_eigenvalue(p)),
      std::max(0.0, -min_eigenvalue(q)),
      std::abs(kappa * frob_inner(s1 + cert.eta * eye_full, p)),
      std::abs(kappa * frob_inner(c2 + cert.eta * eye_full, q)),
  };

  const double scale = 1.0 + std::abs(sol.u);
  cert.valid = sol.status == SdpStatus::converged && cert.gap < 1e-5 * scale &&
               cert.gap > -1e-6 * scale;
  return cert;
}

}  // namespace

std::string to_string(SdpStatus status) {
  switch (status) {
    case SdpStatus::converged: return "converged";
    case SdpStatus::max_iter: return "max_iter";
    case SdpStatus::infeasible: return "infeasible";
  }
  return "unknown";
}

Eigen::MatrixXd real_embed(const Operator& h, bool assert_hermitian) {
  if (assert_hermitian && h.hermiticity_defect() > kTolSpectral) {
    throw contract_violation("real_embed: operator not Hermitian within 1e-10");
  }
  const long n = h.dim();
  Eigen::MatrixXd out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = h.matrix().real();
  out.topRightCorner(n, n) = -h.matrix().imag();
  out.bottomLeftCorner(n, n) = h.matrix().imag();
  out.bottomRightCorner(n, n) = h.matrix().real();
  return out;
}

Matrix psd_project(const Matrix& h) {
  const long n = h.rows();
  const Matrix herm = 0.5 * (h + h.adjoint());

  // Exactly real input: the embedding is block-diag(H, H), so its
  // eigendecomposition reduces to the single n x n block. Doing it blockwise
  // also avoids the exactly-doubled spectrum, on which the tridiagonal QL
  // iteration can fail to converge.
  if ((herm.imag().array() == 0.0).all()) {
    const Eigen::MatrixXd sym = herm.real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    if (es.info() == Eigen::Success) {
      const Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
      const Eigen::MatrixXd plus =
          es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().transpose();
      Matrix out = plus.cast<Complex>();
      return 0.5 * (out + out.adjoint().eval());
    }
    // fall through to the complex solver
  } else {
    Eigen::MatrixXd embed(2 * n, 2 * n);
    embed.topLeftCorner(n, n) = herm.real();
    embed.topRightCorner(n, n) = -herm.imag();
    embed.bottomLeftCorner(n, n) = herm.imag();
    embed.bottomRightCorner(n, n) = herm.real();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(embed);
    if (es.info() == Eigen::Success) {
      const Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
      const Eigen::MatrixXd plus =
          es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().transpose();
      Matrix out(n, n);
      out.real() = 0.5 * (plus.topLeftCorner(n, n) + plus.bottomRightCorner(n, n));
      out.imag() = 0.5 * (plus.bottomLeftCorner(n, n) - plus.topRightCorner(n, n));
      return 0.5 * (out + out.adjoint().eval());
    }
    // The embedding doubles every eigenvalue; on that degenerate spectrum the
    // QL iteration occasionally reports failure. The complex solver computes
    // the same projection from the undoubled spectrum.
  }

  Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
  if (es.info() != Eigen::Success) throw contract_violation("psd_project: eigensolver failed");
  const Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
  const Matrix plus = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
  return 0.5 * (plus + plus.adjoint().eval());
}

SdpProblem build_sdp(int d, int N) {
  if (d < 2) throw argument_error("build_sdp: dimension must be >= 2");
  if (N < 2) throw argument_error("build_sdp: N must be >= 2");
  long total = 1;
  for (int k = 0; k < N + 1; ++k) {
    total *= d;
    if (total > 256) throw capability_error("build_sdp: d^(N+1) exceeds the 256 cap");
  }
  return SdpProblem{choi_canonical(d, N), d, N};
}

SdpSolution solve(const SdpProblem& problem, double tol, long max_iter) {
  if (tol <= 0.0) throw argument_error("solve: tol must be positive");
  if (max_iter < 1) throw argument_error("solve: max_iter must be >= 1");
  const int d = problem.target_choi.input_dim;
  const long db = problem.target_choi.output_dim();
  const Matrix eye_d = Matrix::Identity(d, d);

  double gamma = 0.0;
  const Matrix jhat = repair_target(problem.target_choi.matrix.matrix(), d, db, gamma);
  const double jnorm = jhat.norm();

  // Warm start: Jordan split of the target is nearly feasible.
  Tuple z;
  z.P = psd_project(jhat);
  z.Q = z.P - jhat;
  z.a = z.P.trace().real() / d;
  z.b = z.a - gamma;
  Tuple u{Matrix::Zero(d * db, d * db), Matrix::Zero(d * db, d * db), 0.0, 0.0};
  Tuple x = z;

  const double alpha = 1.5;  // over-relaxation
  double mu = 1.0;
  double rpri = std::numeric_limits<double>::infinity();
  SdpStatus status = SdpStatus::max_iter;
  long it = 0;

  while (it < max_iter) {
    ++it;
    // x-update: closed-form projection of (z - u - c/mu) onto the affine set
    // parametrized by (P, a) with Q = P - J, b = a - gamma.
    const Matrix pbar = 0.5 * ((z.P - u.P) + (z.Q - u.Q) + jhat);
    const double abar = 0.5 * ((z.a - u.a - 1.0 / mu) + (z.b - u.b - 1.0 / mu) + gamma);
    const Matrix r = trace_out_tail(pbar, d, db) - abar * eye_d;
    const double trm = r.trace().real() / static_cast<double>(db + d);
    const Matrix m = (r - trm * eye_d) / static_cast<double>(db);
    x.P = pbar - kron_tail_identity(m, db);
    x.a = abar + trm;
    x.Q = x.P - jhat;
    x.b = x.a - gamma;

    // Over-relaxed z-update onto the cones, then dual ascent.
    const Tuple zold = z;
    const Matrix xhat_p = alpha * x.P + (1.0 - alpha) * z.P;
    const Matrix xhat_q = alpha * x.Q + (1.0 - alpha) * z.Q;
    const double xhat_a = alpha * x.a + (1.0 - alpha) * z.a;
    const double xhat_b = alpha * x.b + (1.0 - alpha) * z.b;

    z.P = psd_project(xhat_p + u.P);
    z.Q = psd_project(xhat_q + u.Q);
    z.a = std::max(xhat_a + u.a, 0.0);
    z.b = std::max(xhat_b + u.b, 0.0);

    u.P += xhat_p - z.P;
    u.Q += xhat_q - z.Q;
    u.a += xhat_a - z.a;
    u.b += xhat_b - z.b;

    rpri = tuple_dist(x, z);
    const double zchange = tuple_dist(z, zold);
    const double scale = 1.0 + std::max(tuple_norm(x), tuple_norm(z));

    if (rpri <= tol * scale && zchange <= tol * scale) {
      status = SdpStatus::converged;
      break;
    }
    if (!x.P.allFinite() || tuple_norm(x) > 1e10 * (1.0 + jnorm)) {
      status = SdpStatus::infeasible;
      break;
    }
    if (it % 50 == 0) {
      // Residual balancing keeps the two convergence rates comparable.
      const double sdual = mu * zchange;
      if (rpri > 10.0 * sdual) {
        mu *= 2.0;
        u.P *= 0.5;
        u.Q *= 0.5;
        u.a *= 0.5;
        u.b *= 0.5;
      } else if (sdual > 10.0 * rpri) {
        mu *= 0.5;
        u.P *= 2.0;
        u.Q *= 2.0;
        u.a *= 2.0;
        u.b *= 2.0;
      }
    }
  }

  const SubsystemShape full_shape = problem.target_choi.matrix.shape();
  const SubsystemShape out_shape = problem.target_choi.output_shape;
  SdpSolution sol{
      ChoiOperator(d, out_shape, Operator(full_shape, x.P)),
      ChoiOperator(d, out_shape, Operator(full_shape, x.Q)),
      x.a,
      x.b,
      x.a + x.b,
      rpri,
      std::numeric_limits<double>::quiet_NaN(),
      it,
      status,
      mu * u.P,
      mu * u.Q,
      mu * u.a,
      mu * u.b,
      jhat,
      gamma,
  };
  if (status != SdpStatus::infeasible) {
    sol.dual_gap_estimate = build_certificate(sol).gap;
  }
  return sol;
}

SdpCertificate certify(const SdpSolution& solution, const SdpProblem& problem) {
  if (solution.J1.input_dim != problem.target_choi.input_dim ||
      solution.J1.output_dim() != problem.target_choi.output_dim()) {
    throw argument_error("certify: solution and problem dimensions differ");
  }
  double gamma = 0.0;
  const Matrix jhat = repair_target(problem.target_choi.matrix.matrix(),
                                    problem.target_choi.input_dim,
                                    problem.target_choi.output_dim(), gamma);
  if ((jhat - solution.target_repaired).norm() > 1e-10 * (1.0 + jhat.norm())) {
    throw argument_error("certify: solution does not belong to this problem");
  }
  return build_certificate(solution);
}

QuasiDecomposition extract_decomposition(const SdpSolution& solution) {
  if (solution.status != SdpStatus::converged) {
    throw argument_error("extract_decomposition: requires a converged solution");
  }
  if (solution.a <= 0.0) throw argument_error("extract_decomposition: requires a > 0");
  const int d = solution.J1.input_dim;
  const long db = solution.J1.output_dim();
  const SubsystemShape full_shape = solution.J1.matrix.shape();
  const SubsystemShape out_shape = solution.J1.output_shape;

  // Shift both blocks by the worst PSD deficit: J1 - J2 and the partial-trace
  // proportionality are both preserved exactly.
  Matrix p = solution.J1.matrix.matrix();
  Matrix q = solution.J2.matrix.matrix();
  const double eps = std::max({0.0, -min_eigenvalue(p), -min_eigenvalue(q)});
  const Matrix eye_full = Matrix::Identity(p.rows(), p.cols());
  p += eps * eye_full;
  q += eps * eye_full;
  const double a = solution.a + eps * db;
  const double b = solution.b + eps * db;

  const double b_threshold = 1e-6;
  QuasiDecomposition decomp = [&]() -> QuasiDecomposition {
    if (b <= b_threshold) {
      if (q.norm() > 1e-4) {
        throw contract_violation("extract_decomposition: b is numerically zero but J2 is not");
      }
      const ChoiOperator e1(d, out_shape, Operator(full_shape, p / a));
      return QuasiDecomposition{1.0, 0.0, e1, e1};
    }
    return QuasiDecomposition{a, b,
                              ChoiOperator(d, out_shape, Operator(full_shape, p / a)),
                              ChoiOperator(d, out_shape, Operator(full_shape, q / b))};
  }();

  // Enforce the declared invariants before handing the decomposition out.
  const Matrix recon = decomp.a * decomp.choi_E1.matrix.matrix() -
                       decomp.b * decomp.choi_E2.matrix.matrix();
  if ((recon - solution.target_repaired).norm() > 1e-7) {
    throw contract_violation("extract_decomposition: reconstruction exceeds 1e-7");
  }
  for (const ChoiOperator* e : {&decomp.choi_E1, &decomp.choi_E2}) {
    if (min_eigenvalue(e->matrix.matrix()) < -1e-7) {
      throw contract_violation("extract_decomposition: channel Choi is not PSD within 1e-7");
    }
    const Matrix reduced = trace_out_tail(e->matrix.matrix(), d, db);
    if ((reduced - Matrix::Identity(d, d)).norm() > 1e-6) {
      throw contract_violation("extract_decomposition: channel is not trace-preserving within 1e-6");
    }
  }
  return decomp;
}

std::vector<OverheadRow> overhead_curve(const std::vector<std::pair<int, int>>& entries,
                                        double tol, long max_iter) {
  std::vector<OverheadRow> rows;
  rows.reserve(entries.size());
  for (const auto& [d, n] : entries) {
    OverheadRow row;
    row.d = d;
    row.N = n;
    try {
      const SdpProblem problem = build_sdp(d, n);
      const SdpSolution sol = solve(problem, tol, max_iter);
      const SdpCertificate cert = certify(sol, problem);
      row.u = sol.u;
      row.u_squared = sol.u * sol.u;
      row.a = sol.a;
      row.b = sol.b;
      row.gap = cert.gap;
      row.iterations = sol.iterations;
      row.status = sol.status == SdpStatus::converged
                       ? (cert.valid ? "certified" : "uncertified")
                       : to_string(sol.status);
    } catch (const capability_error& e) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row.u = row.u_squared = row.a = row.b = row.gap = nan;
      row.iterations = 0;
      row.status = std::string("capability: ") + e.what();
    } catch (const std::exception& e) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row.u = row.u_squared = row.a = row.b = row.gap = nan;
      row.iterations = 0;
      row.status = std::string("error: ") + e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace vbroadcast

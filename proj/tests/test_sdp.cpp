#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "support/subgradient.hpp"
#include "vbroadcast/axioms.hpp"
#include "vbroadcast/errors.hpp"
#include "vbroadcast/operator.hpp"
#include "vbroadcast/random.hpp"
#include "vbroadcast/sdp.hpp"

using namespace vbroadcast;

namespace {

SdpSolution certified_solve(int d, int n, double tol = 1e-7) {
  const SdpProblem problem = build_sdp(d, n);
  const SdpSolution solution = solve(problem, tol);
  REQUIRE(solution.status == SdpStatus::converged);
  const SdpCertificate cert = certify(solution, problem);
  REQUIRE(cert.valid);
  return solution;
}

}  // namespace

TEST_CASE("real embedding doubles the spectrum and preserves positivity") {
  Matrix y(2, 2);
  y << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  const Eigen::MatrixXd emb = real_embed(Operator(SubsystemShape::single(2), y), true);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(emb);
  REQUIRE(es.info() == Eigen::Success);
  CHECK(es.eigenvalues()(0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(es.eigenvalues()(1) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(es.eigenvalues()(2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(es.eigenvalues()(3) == doctest::Approx(1.0).epsilon(1e-12));

  RngStream rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    Matrix h = complex_gaussian(5, 5, rng);
    h = 0.5 * (h + h.adjoint()).eval();
    const RealVector direct = hermitian_eigenvalues(h);
    const Eigen::MatrixXd e = real_embed(Operator(SubsystemShape::single(5), h), true);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ese(e);
    REQUIRE(ese.info() == Eigen::Success);
    for (int i = 0; i < 5; ++i) {
      CHECK(ese.eigenvalues()(2 * i) == doctest::Approx(direct(i)).epsilon(1e-10));
      CHECK(ese.eigenvalues()(2 * i + 1) == doctest::Approx(direct(i)).epsilon(1e-10));
    }
  }

  CHECK_THROWS_AS(real_embed(Operator(SubsystemShape::single(2), Matrix::Random(2, 2)), true),
                  contract_violation);
}

TEST_CASE("psd projection: fixed points, splitting, and idempotence") {
  RngStream rng(33);
  for (int trial = 0; trial < 8; ++trial) {
    Matrix h = complex_gaussian(6, 6, rng);
    h = 0.5 * (h + h.adjoint()).eval();
    const Matrix plus = psd_project(h);
    const Matrix minus = plus - h;  // negative part, also PSD
    CHECK(min_eigenvalue(plus) > -1e-12);
    CHECK(min_eigenvalue(minus) > -1e-12);
    // The two parts are orthogonal: <plus, minus> = 0.
    CHECK(std::abs((plus.adjoint() * minus).trace()) < 1e-10);
    CHECK(frobenius_distance(psd_project(plus), plus) < 1e-10);
  }
  // Exactly-real input exercises the blockwise path.
  Matrix r(3, 3);
  r << 2, -1, 0, -1, 2, -1, 0, -1, -3;
  const Matrix p = psd_project(r);
  CHECK(p.imag().norm() == 0.0);
  CHECK(min_eigenvalue(p) > -1e-13);
}

TEST_CASE("problem construction caps the total dimension") {
  const SdpProblem p = build_sdp(2, 3);
  CHECK(p.d == 2);
  CHECK(p.N == 3);
  CHECK(p.target_choi.matrix.dim() == 16);
  CHECK_THROWS_AS(build_sdp(7, 3), capability_error);   // 7^4 = 2401
  CHECK_THROWS_AS(build_sdp(2, 8), capability_error);   // 2^9 = 512
  CHECK_THROWS_AS(build_sdp(1, 2), argument_error);
  CHECK_THROWS_AS(build_sdp(2, 1), argument_error);
}

TEST_CASE("two receivers: overhead equals the local dimension") {
  for (const int d : {2, 3, 4, 5}) {
    const SdpSolution s = certified_solve(d, 2);
    INFO("d=", d);
    CHECK(std::abs(s.u - d) < 1e-4);
    CHECK(std::abs(s.a - 0.5 * (d + 1)) < 1e-4);
    CHECK(std::abs(s.b - 0.5 * (d - 1)) < 1e-4);
  }
}

TEST_CASE("weights always differ by the target trace over d") {
  for (const auto& [d, n] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 3}}) {
    const SdpSolution s = certified_solve(d, n);
    CHECK(std::abs(s.a - s.b - s.gamma) < 1e-8);
    CHECK(s.gamma == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s.u == doctest::Approx(s.a + s.b).epsilon(1e-12));
  }
}

TEST_CASE("truncated run is reported unconverged and fails certification") {
  const SdpProblem problem = build_sdp(2, 2);
  const SdpSolution s = solve(problem, 1e-7, 10);
  CHECK(s.status == SdpStatus::max_iter);
  const SdpCertificate cert = certify(s, problem);
  CHECK_FALSE(cert.valid);
}

TEST_CASE("certify rejects a solution paired with the wrong problem") {
  const SdpProblem p2 = build_sdp(2, 2);
  const SdpProblem p3 = build_sdp(3, 2);
  const SdpSolution s = solve(p2);
  CHECK_THROWS_AS(certify(s, p3), argument_error);
}

TEST_CASE("overhead is invariant under covariant conjugation of the target") {
  // (conj(U) ⊗ U^{⊗N}) J (same)^dag re-poses the identical problem; complex
  // targets also push the solver through the full real-embedding path.
  for (const std::uint64_t seed : {400u, 401u}) {
    const SdpProblem base = build_sdp(2, 2);
    const Operator u_op = haar_unitary(2, seed);
    std::vector<Operator> factors{
        u_op.with_matrix(u_op.matrix().conjugate()), u_op, u_op};
    const Matrix w = tensor(factors).matrix();
    const Matrix rotated = w * base.target_choi.matrix.matrix() * w.adjoint();
    SdpProblem conj_problem{
        ChoiOperator(2, base.target_choi.output_shape,
                     base.target_choi.matrix.with_matrix(rotated)),
        2, 2};
    const SdpSolution s = solve(conj_problem);
    REQUIRE(s.status == SdpStatus::converged);
    const SdpCertificate cert = certify(s, conj_problem);
    REQUIRE(cert.valid);
    CHECK(std::abs(s.u - 2.0) < 2e-4);
  }
}

TEST_CASE("decomposition: CPTP channels that reconstruct the target") {
  for (const auto& [d, n] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 3}}) {
    const SdpSolution s = certified_solve(d, n);
    const QuasiDecomposition q = extract_decomposition(s);
    INFO("d=", d, " N=", n);
    // Weights may sit a joint PSD-repair shift of order deficit * d^N above
    // the solve's coefficients.
    CHECK(std::abs(q.a - s.a) < 1e-5);
    CHECK(std::abs(q.b - s.b) < 1e-5);
    CHECK(q.a - q.b == doctest::Approx(s.a - s.b).epsilon(1e-12));

    for (const ChoiOperator* choi : {&q.choi_E1, &q.choi_E2}) {
      CHECK(min_eigenvalue(choi->matrix.matrix()) > -1e-7);
      const Operator traced = partial_trace(choi->matrix, {0});
      CHECK(frobenius_distance(traced.matrix(), Matrix::Identity(d, d)) < 1e-7);
    }
    const Matrix rebuilt =
        q.a * q.choi_E1.matrix.matrix() - q.b * q.choi_E2.matrix.matrix();
    CHECK(frobenius_distance(rebuilt, s.target_repaired) < 1e-7);
  }
}

TEST_CASE("decomposition of a CPTP target collapses to a single channel") {
  // Target: Choi of rho -> rho ⊗ 1/d, already CPTP, so b = 0 and E1 is the
  // map itself.
  const int d = 2;
  const ChoiOperator target = choi_of(
      [d](const Operator& x) {
        const Operator half(SubsystemShape::single(d),
                            Matrix::Identity(d, d) / static_cast<double>(d));
        return tensor({x, half});
      },
      d);
  const SdpProblem problem{target, d, 2};
  const SdpSolution s = solve(problem);
  REQUIRE(s.status == SdpStatus::converged);
  CHECK(std::abs(s.u - 1.0) < 1e-5);
  CHECK(std::abs(s.b) < 1e-5);
  const QuasiDecomposition q = extract_decomposition(s);
  if (q.b == 0.0) {
    CHECK(q.a == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(frobenius_distance(q.choi_E1.matrix.matrix(), s.target_repaired / q.a) < 1e-5);
  }
  CHECK(min_eigenvalue(q.choi_E2.matrix.matrix()) > -1e-7);
}

TEST_CASE("independent subgradient route agrees with the certified solver") {
  for (const int n : {3, 4, 5}) {
    const SdpSolution admm = certified_solve(2, n);
    const testsupport::SubgradientResult sub =
        testsupport::subgradient_overhead(build_sdp(2, n).target_choi);
    INFO("N=", n, " admm=", admm.u, " subgradient=", sub.u);
    CHECK(std::abs(admm.u - sub.u) < 1e-3);
    // The subgradient value is a feasible upper bound, so it may exceed the
    // certified optimum only by its own convergence slack.
    CHECK(sub.u > admm.u - 2e-4);
  }
}

TEST_CASE("pinned overhead values for two to five receivers at d=2") {
  // Regression constants recorded after the ADMM route (certified) and the
  // projected-subgradient route agreed to better than 1e-3.
  const std::vector<std::pair<int, double>> pinned{{2, 2.0}, {3, 3.0}, {4, 4.0}, {5, 5.0}};
  for (const auto& [n, expected] : pinned) {
    const SdpSolution s = certified_solve(2, n);
    INFO("N=", n);
    CHECK(std::abs(s.u - expected) < 2e-4);
    CHECK(s.u * s.u > static_cast<double>(n));
  }
}

TEST_CASE("overhead curve collects per-entry rows and flags failures in place") {
  const std::vector<std::pair<int, int>> entries{{2, 2}, {3, 2}, {7, 3}};
  const std::vector<OverheadRow> rows = overhead_curve(entries, 1e-7, 200000);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].d == 2);
  CHECK(rows[0].status == "certified");
  CHECK(std::abs(rows[0].u - 2.0) < 1e-4);
  CHECK(rows[0].u_squared == doctest::Approx(rows[0].u * rows[0].u));
  CHECK(rows[1].status == "certified");
  CHECK(std::abs(rows[1].u - 3.0) < 1e-4);
  CHECK(rows[2].status.rfind("capability: ", 0) == 0);
  CHECK(std::isnan(rows[2].u));
}

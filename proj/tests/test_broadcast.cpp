#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "vbroadcast/broadcast.hpp"
#include "vbroadcast/errors.hpp"
#include "vbroadcast/operator.hpp"
#include "vbroadcast/random.hpp"

using namespace vbroadcast;

namespace {

DensityMatrix pure_zero(int d) {
  return DensityMatrix(basis_projector(d, 0));
}

DensityMatrix maximally_mixed(int d) {
  return DensityMatrix(
      Operator(SubsystemShape::single(d), Matrix::Identity(d, d) / static_cast<double>(d)));
}

DensityMatrix haar_pure(int d, std::uint64_t seed) {
  const Matrix u = haar_unitary(d, seed).matrix();
  const Eigen::VectorXcd psi = u.col(0);
  return DensityMatrix(Operator(SubsystemShape::single(d), psi * psi.adjoint()));
}

}  // namespace

TEST_CASE("two-receiver broadcast of |0><0| matches the closed form") {
  const Operator out = apply_canonical(pure_zero(2), 2);
  // |00><00| + (|01><10| + |10><01|)/2 in the ordered basis {00,01,10,11}.
  Matrix expect = Matrix::Zero(4, 4);
  expect(0, 0) = 1.0;
  expect(1, 2) = 0.5;
  expect(2, 1) = 0.5;
  CHECK((out.matrix() - expect).cwiseAbs().maxCoeff() < 1e-15);

  const RealVector ev = hermitian_eigenvalues(out.matrix());
  CHECK(ev(0) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(ev(3) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("average embedding: diagonal example and trace scaling") {
  const Operator avg = average_embedding(pure_zero(2), 2);
  Matrix expect = Matrix::Zero(4, 4);
  expect.diagonal() << 1.0, 0.5, 0.5, 0.0;
  CHECK(frobenius_distance(avg.matrix(), expect) < 1e-15);

  RngStream rng(15);
  const Operator x(SubsystemShape::single(3), complex_gaussian(3, 3, rng));
  for (const int n : {2, 3}) {
    const Operator emb = average_embedding(x, n);
    CHECK(std::abs(emb.trace() - std::pow(3.0, n - 1) * x.trace()) < 1e-12);
  }
}

TEST_CASE("cycle enumeration: counts and single-orbit structure") {
  CHECK(all_n_cycles(2).size() == 1);
  CHECK(all_n_cycles(3).size() == 2);
  CHECK(all_n_cycles(4).size() == 6);
  CHECK(all_n_cycles(5).size() == 24);
  for (const auto& perm : all_n_cycles(5)) {
    // Following the permutation from 0 must visit every slot before returning.
    int at = 0;
    for (int step = 1; step < 5; ++step) {
      at = perm[at];
      REQUIRE(at != 0);
    }
    CHECK(perm[at] == 0);
  }
}

TEST_CASE("oversized constructions fail fast with capability errors") {
  // Factorial enumeration cap fires before any permutation is materialized.
  CHECK_THROWS_AS(all_n_cycles(11), capability_error);
  // Dense side caps fire before any matrix allocation.
  CHECK_THROWS_AS(choi_canonical(2, 30), capability_error);
  CHECK_THROWS_AS(cycle_average(2, 200), capability_error);
  CHECK_THROWS_AS(classical_broadcast(maximally_mixed(2), 14), capability_error);
}

TEST_CASE("cycle average: swap at N=2, hermitian two-cycle mean at N=3") {
  const Operator v2 = cycle_average(2, 3);
  CHECK(frobenius_distance(v2.matrix(), permutation_operator({1, 0}, 3).matrix()) == 0.0);

  const Matrix c1 = permutation_operator({1, 2, 0}, 2).matrix();
  const Matrix c2 = permutation_operator({2, 0, 1}, 2).matrix();
  const Operator v3 = cycle_average(3, 2);
  CHECK(frobenius_distance(v3.matrix(), 0.5 * (c1 + c2)) == 0.0);
  CHECK(v3.hermiticity_defect() == 0.0);
}

TEST_CASE("canonical broadcast: trace, hermiticity, and every marginal") {
  for (const int d : {2, 3}) {
    for (const int n : {2, 3}) {
      for (int k = 0; k < 5; ++k) {
        const DensityMatrix rho = ginibre_state(d, 100 * d + 10 * n + k);
        const Operator out = apply_canonical(rho, n);
        CHECK(std::abs(out.trace() - Complex(1.0, 0.0)) < 1e-13);
        CHECK(out.hermiticity_defect() < 1e-14);
        for (int slot = 0; slot < n; ++slot) {
          const Operator marg = partial_trace(out, {slot});
          CHECK(frobenius_distance(marg.matrix(), rho.op().matrix()) < 1e-13);
        }
      }
    }
  }
}

TEST_CASE("canonical broadcast is linear") {
  RngStream rng(44);
  const Operator x(SubsystemShape::single(2), complex_gaussian(2, 2, rng));
  const Operator y(SubsystemShape::single(2), complex_gaussian(2, 2, rng));
  const Complex alpha(0.3, -1.1), beta(-2.0, 0.7);
  const Operator combined(SubsystemShape::single(2),
                          alpha * x.matrix() + beta * y.matrix());
  const Matrix lhs = apply_canonical(combined, 3).matrix();
  const Matrix rhs = alpha * apply_canonical(x, 3).matrix() + beta * apply_canonical(y, 3).matrix();
  CHECK(frobenius_distance(lhs, rhs) < 1e-13);
}

TEST_CASE("three-receiver output equals the explicit six-term expansion") {
  const DensityMatrix rho = ginibre_state(2, 7);
  const Matrix r = rho.op().matrix();
  const Matrix eye = Matrix::Identity(2, 2);

  auto emb = [&](int slot) {
    std::vector<Operator> parts;
    for (int s = 0; s < 3; ++s) {
      parts.push_back(s == slot ? Operator(SubsystemShape::single(2), r)
                                : Operator(SubsystemShape::single(2), eye));
    }
    return tensor(parts).matrix();
  };
  const Matrix ravg = (emb(0) + emb(1) + emb(2)) / 3.0;
  const Matrix c1 = permutation_operator({1, 2, 0}, 2).matrix();
  const Matrix c2 = permutation_operator({2, 0, 1}, 2).matrix();
  // (1/4){ravg, C1} + (1/4){ravg, C2}, written out term by term.
  const Matrix six = 0.25 * (ravg * c1 + c1 * ravg + ravg * c2 + c2 * ravg);
  CHECK(frobenius_distance(apply_canonical(rho, 3).matrix(), six) < 1e-14);
}

TEST_CASE("choi form: hermitian, trace-preserving, reproduces the action") {
  for (const auto& [d, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
    const ChoiOperator choi = choi_canonical(d, n);
    CHECK(choi.matrix.hermiticity_defect() < 1e-14);

    std::vector<int> outputs(n);
    for (int i = 0; i < n; ++i) outputs[i] = i + 1;
    const Operator traced = partial_trace(choi.matrix, {0});
    CHECK(frobenius_distance(traced.matrix(), Matrix::Identity(d, d)) < 1e-13);

    for (int k = 0; k < 17; ++k) {
      const DensityMatrix rho = ginibre_state(d, 900 + 50 * d + 10 * n + k);
      const Operator via_choi = apply_choi(choi, rho.op());
      const Operator direct = apply_canonical(rho, n);
      CHECK(frobenius_distance(via_choi.matrix(), direct.matrix()) < 1e-12);
    }
  }
}

TEST_CASE("choi of the canonical map is not positive semidefinite") {
  const ChoiOperator choi = choi_canonical(2, 2);
  CHECK(min_eigenvalue(choi.matrix.matrix()) < -1e-3);
}

TEST_CASE("choi_of extends a generic linear map consistently") {
  const auto map = [](const Operator& x) {
    // x -> x^T blended with its trace: linear, hermiticity-preserving.
    Matrix out = 0.5 * x.matrix().transpose();
    out += 0.5 * x.trace() * Matrix::Identity(2, 2) / 2.0;
    return Operator(SubsystemShape::single(2), out);
  };
  const ChoiOperator choi = choi_of(map, 2);
  RngStream rng(61);
  for (int k = 0; k < 10; ++k) {
    const Operator x(SubsystemShape::single(2), complex_gaussian(2, 2, rng));
    CHECK(frobenius_distance(apply_choi(choi, x).matrix(), map(x).matrix()) < 1e-13);
  }
}

TEST_CASE("classical broadcast copies the diagonal and kills coherences") {
  const DensityMatrix rho = ginibre_state(2, 5);
  const Operator out = classical_broadcast(rho, 2);
  Matrix expect = Matrix::Zero(4, 4);
  expect(0, 0) = rho.op().matrix()(0, 0);
  expect(3, 3) = rho.op().matrix()(1, 1);
  CHECK(frobenius_distance(out.matrix(), expect) < 1e-15);
}

TEST_CASE("choi operator validates its block structure") {
  const ChoiOperator choi = choi_canonical(2, 2);
  CHECK(choi.input_dim == 2);
  CHECK(choi.output_dim() == 4);
  CHECK(choi.num_receivers() == 2);
  CHECK_THROWS_AS(ChoiOperator(3, SubsystemShape({2, 2}), choi.matrix), argument_error);
}

TEST_CASE("two-point pseudo-density operator coincides with the broadcast") {
  for (const int d : {2, 3}) {
    for (int k = 0; k < 50; ++k) {
      const DensityMatrix rho = ginibre_state(d, 4000 + 100 * d + k);
      const Operator chain = pdo_identity_chain(rho, 2);
      const Operator bcast = apply_canonical(rho, 2);
      CHECK(frobenius_distance(chain.matrix(), bcast.matrix()) < 1e-12);
    }
  }
}

TEST_CASE("pseudo-density chain keeps unit trace and hermiticity") {
  const DensityMatrix rho = ginibre_state(2, 9);
  for (const int k : {2, 3, 4}) {
    const Operator r = pdo_identity_chain(rho, k);
    CHECK(std::abs(r.trace() - Complex(1.0, 0.0)) < 1e-13);
    CHECK(r.hermiticity_defect() < 1e-14);
  }
}

TEST_CASE("three-point divergence: frozen values for basis states") {
  // Brute-force constants for rho = |0><0|: the chain and the broadcast
  // differ by a fixed operator whose norms are dimension-only quantities.
  const PdoComparison q2 = pdo_compare(pure_zero(2), 3);
  CHECK(q2.n_points == 3);
  CHECK(q2.frob_distance == doctest::Approx(0.408248290463863).epsilon(1e-12));
  CHECK(q2.trace_distance_surrogate == doctest::Approx(0.45534180126147955).epsilon(1e-12));

  const PdoComparison q3 = pdo_compare(pure_zero(3), 3);
  CHECK(q3.frob_distance == doctest::Approx(0.7071067811865475).epsilon(1e-12));
  CHECK(q3.trace_distance_surrogate == doctest::Approx(1.3660254037844386).epsilon(1e-12));
}

TEST_CASE("three-point divergence is constant on pure states by covariance") {
  for (int k = 0; k < 10; ++k) {
    const PdoComparison q = pdo_compare(haar_pure(2, 300 + k), 3);
    CHECK(q.frob_distance == doctest::Approx(0.408248290463863).epsilon(1e-10));
  }
}

TEST_CASE("three-point divergence vanishes on the maximally mixed state") {
  for (const int d : {2, 3}) {
    const PdoComparison q = pdo_compare(maximally_mixed(d), 3);
    CHECK(q.frob_distance < 1e-13);
    CHECK(q.trace_distance_surrogate < 1e-13);
  }
}

TEST_CASE("two-point comparison reports zero for any state") {
  const PdoComparison q = pdo_compare(ginibre_state(2, 77), 2);
  CHECK(q.n_points == 2);
  CHECK(q.frob_distance < 1e-12);
}

#include "vbroadcast/axioms.hpp"

#include <algorithm>
#include <sstream>
#include <utility>
#include <vector>

#include "vbroadcast/random.hpp"

namespace vbroadcast {

namespace {

// conj(U)_A ⊗ U^{⊗N} on the full Choi space.
Operator covariance_conjugator(const ChoiOperator& choi, const Operator& u) {
  std::vector<Operator> factors;
  factors.reserve(static_cast<size_t>(choi.num_receivers()) + 1);
  factors.push_back(u.with_matrix(u.matrix().conjugate()));
  for (int s = 0; s < choi.num_receivers(); ++s) factors.push_back(u);
  return tensor(factors);
}

// Deterministic single-qudit coverage: shift/clock words plus the Fourier
// matrix (the latter witnesses non-covariance the shift/clock set can miss).
std::vector<std::pair<std::string, Operator>> generator_set(int d) {
  std::vector<std::pair<std::string, Operator>> gens;
  const Matrix x = shift_matrix(d).matrix();
  const Matrix z = clock_matrix(d).matrix();
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      if (a == 0 && b == 0) continue;
      Matrix w = Matrix::Identity(d, d);
      for (int k = 0; k < a; ++k) w = x * w;
      for (int k = 0; k < b; ++k) w = z * w;
      std::ostringstream name;
      name << "shift^" << a << " clock^" << b;
      gens.emplace_back(name.str(), Operator(SubsystemShape::single(d), std::move(w)));
    }
  }
  gens.emplace_back("fourier", fourier_matrix(d));
  return gens;
}

struct UcDetail {
  double residual = 0.0;
  std::string witness;
  double twirl = 0.0;
};

UcDetail uc_detail(const ChoiOperator& choi, int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw argument_error("check_uc: need at least one sample");
  const Matrix& j = choi.matrix.matrix();
  std::vector<std::pair<std::string, Operator>> unitaries = generator_set(choi.input_dim);
  RngStream rng(seed);
  for (int k = 0; k < n_samples; ++k) {
    std::ostringstream name;
    name << "haar#" << k;
    unitaries.emplace_back(name.str(), haar_unitary(choi.input_dim, rng));
  }

  UcDetail detail;
  Matrix twirl_sum = Matrix::Zero(j.rows(), j.cols());
  for (const auto& [name, u] : unitaries) {
    const Matrix w = covariance_conjugator(choi, u).matrix();
    const Matrix conjugated = w * j * w.adjoint();
    const double r = (conjugated - j).norm();
    twirl_sum += conjugated;
    if (r >= detail.residual) {
      detail.residual = r;
      detail.witness = name;
    }
  }
  twirl_sum /= static_cast<double>(unitaries.size());
  detail.twirl = (twirl_sum - j).norm();
  return detail;
}

struct ResidualDetail {
  double residual = 0.0;
  std::string witness;
};

ResidualDetail pi_detail(const ChoiOperator& choi) {
  const int n = choi.num_receivers();
  if (n > 6) throw capability_error("check_pi: permutation enumeration limited to N <= 6");
  for (int s = 1; s < n; ++s) {
    if (choi.output_shape.dims[s] != choi.output_shape.dims[0]) {
      throw argument_error("check_pi: receiver dimensions must be equal");
    }
  }
  const Matrix& j = choi.matrix.matrix();
  const Operator eye_a = Operator::identity(SubsystemShape::single(choi.input_dim));

  std::vector<int> perm(n);
  for (int s = 0; s < n; ++s) perm[s] = s;
  ResidualDetail detail;
  do {
    const Operator v = permutation_operator(perm, choi.output_shape.dims[0]);
    const Matrix w = tensor({eye_a, v}).matrix();
    const double r = (w * j * w.transpose() - j).norm();
    if (r >= detail.residual) {
      detail.residual = r;
      std::ostringstream name;
      name << "pi = [";
      for (int s = 0; s < n; ++s) name << (s ? " " : "") << perm[s];
      name << "]";
      detail.witness = name.str();
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return detail;
}

ResidualDetail cc_detail(const ChoiOperator& choi) {
  const int d = choi.input_dim;
  const int n = choi.num_receivers();
  ResidualDetail detail;
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) {
      const Operator in = dephase(matrix_unit(d, i, k));
      const Operator out = dephase(apply_choi(choi, in));
      Matrix target = Matrix::Zero(out.dim(), out.dim());
      if (i == k) {
        std::vector<Operator> copies(static_cast<size_t>(n), basis_projector(d, i));
        target = (n > 1 ? tensor(copies) : copies.front()).matrix();
      }
      const double r = (out.matrix() - target).norm();
      if (r >= detail.residual) {
        detail.residual = r;
        std::ostringstream name;
        name << "|" << i << "><" << k << "|";
        detail.witness = name.str();
      }
    }
  }
  return detail;
}

ResidualDetail broadcasting_detail(const ChoiOperator& choi, int n_states, std::uint64_t seed) {
  if (n_states < 1) throw argument_error("check_broadcasting: need at least one state");
  ResidualDetail detail;
  for (int k = 0; k < n_states; ++k) {
    const DensityMatrix rho = ginibre_state(choi.input_dim, derive_seed(seed, k));
    const Operator out = apply_choi(choi, rho.op());
    for (int r = 0; r < choi.num_receivers(); ++r) {
      const Operator marginal = partial_trace(out, {r});
      const double res = (marginal.matrix() - rho.matrix()).norm();
      if (res >= detail.residual) {
        detail.residual = res;
        std::ostringstream name;
        name << "state#" << k << " receiver#" << r;
        detail.witness = name.str();
      }
    }
  }
  return detail;
}

}  // namespace

double check_uc(const ChoiOperator& choi, int n_samples, std::uint64_t seed) {
  return uc_detail(choi, n_samples, seed).residual;
}

double check_pi(const ChoiOperator& choi) { return pi_detail(choi).residual; }

double check_cc(const ChoiOperator& choi) { return cc_detail(choi).residual; }

double check_broadcasting(const ChoiOperator& choi, int n_states, std::uint64_t seed) {
  return broadcasting_detail(choi, n_states, seed).residual;
}

std::pair<double, double> check_hp_tp(const ChoiOperator& choi) {
  const Matrix& j = choi.matrix.matrix();
  const double hp = (j - j.adjoint()).norm();
  const Matrix reduced = partial_trace(choi.matrix, {0}).matrix();
  const double tp = (reduced - Matrix::Identity(choi.input_dim, choi.input_dim)).norm();
  return {hp, tp};
}

AxiomReport verify_all(const ChoiOperator& choi, const AxiomCheckConfig& config) {
  AxiomReport report;
  report.map_id = config.map_id;
  report.config = config;

  const UcDetail uc = uc_detail(choi, config.n_unitaries, config.seed);
  report.uc_residual = uc.residual;
  report.uc_witness = uc.witness;
  report.twirl_residual = uc.twirl;

  const ResidualDetail pi = pi_detail(choi);
  report.pi_residual = pi.residual;
  report.pi_witness = pi.witness;

  const ResidualDetail cc = cc_detail(choi);
  report.cc_residual = cc.residual;
  report.cc_witness = cc.witness;

  const ResidualDetail marg = broadcasting_detail(choi, config.n_states, derive_seed(config.seed, 0x6d61));
  report.marginal_residual = marg.residual;
  report.marginal_witness = marg.witness;

  const auto [hp, tp] = check_hp_tp(choi);
  report.hp_residual = hp;
  report.tp_residual = tp;

  report.uc_pass = report.uc_residual <= config.tol_uc;
  report.pi_pass = report.pi_residual <= config.tol_pi;
  report.cc_pass = report.cc_residual <= config.tol_cc;
  report.marginal_pass = report.marginal_residual <= config.tol_marginal;
  report.hp_pass = report.hp_residual <= config.tol_hp;
  report.tp_pass = report.tp_residual <= config.tol_tp;
  report.all_pass = report.uc_pass && report.pi_pass && report.cc_pass &&
                    report.marginal_pass && report.hp_pass && report.tp_pass;
  return report;
}

}  // namespace vbroadcast

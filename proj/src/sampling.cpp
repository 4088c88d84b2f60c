#include "vbroadcast/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "vbroadcast/broadcast.hpp"

namespace vbroadcast {

namespace {

// Outcome probabilities of measuring `state` in the columns of `eigvecs`.
Eigen::VectorXd outcome_probabilities(const Matrix& state, const Matrix& eigvecs) {
  Eigen::VectorXd probs = (eigvecs.adjoint() * state * eigvecs).diagonal().real();
  probs = probs.cwiseMax(0.0);
  const double total = probs.sum();
  if (std::abs(total - 1.0) > 1e-6) {
    throw contract_violation("measurement probabilities do not sum to 1");
  }
  return probs / total;
}

std::vector<long> sample_indices(const Eigen::VectorXd& probs, long count, RngStream& rng) {
  Eigen::VectorXd cdf(probs.size());
  double acc = 0.0;
  for (long k = 0; k < probs.size(); ++k) {
    acc += probs(k);
    cdf(k) = acc;
  }
  cdf(probs.size() - 1) = 1.0;
  std::vector<long> out(static_cast<size_t>(count));
  for (long s = 0; s < count; ++s) {
    const double x = rng.uniform();  // (0, 1]
    long lo = 0;
    long hi = probs.size() - 1;
    while (lo < hi) {
      const long mid = (lo + hi) / 2;
      if (cdf(mid) >= x) hi = mid;
      else lo = mid + 1;
    }
    out[static_cast<size_t>(s)] = lo;
  }
  return out;
}

// Clips eigenvalue dust and renormalizes a physical-channel output so it
// satisfies the DensityMatrix contract.
DensityMatrix sanitize_state(const Operator& out, double tol) {
  if (out.hermiticity_defect() > tol) {
    throw contract_violation("channel output is not Hermitian");
  }
  const Operator herm = out.with_matrix(0.5 * (out.matrix() + out.matrix().adjoint()));
  SpectralDecomposition sd = spectral(herm);
  if (sd.eigenvalues(0) < -tol) {
    throw contract_violation("channel output has a negative eigenvalue beyond tolerance");
  }
  const double trace = herm.trace().real();
  if (std::abs(trace - 1.0) > tol) {
    throw contract_violation("channel output trace is not 1 within tolerance");
  }
  Eigen::VectorXd clipped = sd.eigenvalues.cwiseMax(0.0);
  clipped /= clipped.sum();
  Matrix m = sd.eigenvectors * clipped.asDiagonal() * sd.eigenvectors.adjoint();
  m = 0.5 * (m + m.adjoint().eval());
  return DensityMatrix(Operator(out.shape(), std::move(m)));
}

// Streaming mean/variance accumulator.
struct Welford {
  long count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }
  double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
};

void validate_plan(const SamplingPlan& plan) {
  if (plan.receivers.empty()) throw argument_error("sampling plan has no receivers");
  if (plan.n_i.size() != plan.receivers.size()) {
    throw argument_error("sampling plan per-receiver counts are inconsistent");
  }
}

// Folds per-repetition estimates into the report row for one receiver.
ReceiverResult finalize_receiver(const ReceiverSpec& spec, long n, double true_value,
                                 const std::vector<double>& rep_estimates,
                                 const Welford& shots) {
  ReceiverResult res;
  res.n = n;
  res.true_value = true_value;
  const long reps = static_cast<long>(rep_estimates.size());
  double mean = 0.0;
  for (double e : rep_estimates) mean += e;
  mean /= static_cast<double>(reps);
  res.estimate = mean;
  double var = 0.0;
  for (double e : rep_estimates) var += (e - mean) * (e - mean);
  res.estimate_std = reps > 1 ? std::sqrt(var / static_cast<double>(reps - 1)) : 0.0;
  res.abs_error = std::abs(res.estimate - true_value);
  res.within_epsilon = res.abs_error <= spec.epsilon;
  for (double e : rep_estimates) {
    if (std::abs(e - true_value) > spec.epsilon) ++res.failures;
  }
  res.empirical_failure_rate = static_cast<double>(res.failures) / static_cast<double>(reps);
  res.shot_variance = shots.variance();
  return res;
}

}  // namespace

long hoeffding_copies(double epsilon, double delta, double c) {
  if (epsilon <= 0.0) throw argument_error("hoeffding_copies: epsilon must be positive");
  if (delta <= 0.0 || delta >= 1.0) throw argument_error("hoeffding_copies: delta must be in (0,1)");
  if (c <= 0.0) throw argument_error("hoeffding_copies: c must be positive");
  const double bound = (c * c) / (2.0 * epsilon * epsilon) * std::log(2.0 / delta);
  return static_cast<long>(std::ceil(bound));
}

SamplingPlan make_plan(const std::vector<ReceiverSpec>& receivers, double u) {
  if (receivers.empty()) throw argument_error("make_plan: receivers must be non-empty");
  if (u < 1.0) throw argument_error("make_plan: overhead u must be >= 1");
  SamplingPlan plan;
  plan.receivers = receivers;
  plan.u = u;
  for (const ReceiverSpec& spec : receivers) {
    plan.n_i.push_back(hoeffding_copies(spec.epsilon, spec.delta, spec.observable.range_c));
  }
  plan.n_naive = 0;
  plan.n_q = 0;
  for (long n : plan.n_i) {
    plan.n_naive += n;
    plan.n_q = std::max(plan.n_q, n);
  }
  plan.n_v = static_cast<long>(std::ceil(u * u * static_cast<double>(plan.n_q)));
  return plan;
}

Eigen::MatrixXd measure_samples(const DensityMatrix& state,
                                const std::vector<Observable>& observables, long shots,
                                std::uint64_t seed) {
  const auto& dims = state.op().shape().dims;
  const int n = state.op().shape().num_subsystems();
  if (static_cast<int>(observables.size()) != n) {
    throw argument_error("measure_samples: one observable per subsystem required");
  }
  for (int s = 0; s < n; ++s) {
    if (observables[static_cast<size_t>(s)].op.dim() != dims[static_cast<size_t>(s)]) {
      throw argument_error("measure_samples: observable dimension mismatch on slot " +
                           std::to_string(s));
    }
  }
  if (shots < 0) throw argument_error("measure_samples: shots must be >= 0");

  // Joint eigenbasis of the product observable.
  Matrix joint = observables[0].eigenvectors;
  for (int s = 1; s < n; ++s) {
    const Matrix& next = observables[static_cast<size_t>(s)].eigenvectors;
    Matrix grown(joint.rows() * next.rows(), joint.cols() * next.cols());
    for (long i = 0; i < joint.rows(); ++i) {
      for (long j = 0; j < joint.cols(); ++j) {
        grown.block(i * next.rows(), j * next.cols(), next.rows(), next.cols()) =
            joint(i, j) * next;
      }
    }
    joint = std::move(grown);
  }

  const Eigen::VectorXd probs = outcome_probabilities(state.matrix(), joint);
  RngStream rng(seed);
  const std::vector<long> picks = sample_indices(probs, shots, rng);

  Eigen::MatrixXd outcomes(shots, n);
  for (long s = 0; s < shots; ++s) {
    long rem = picks[static_cast<size_t>(s)];
    for (int slot = n - 1; slot >= 0; --slot) {
      const int dim = dims[static_cast<size_t>(slot)];
      const long k = rem % dim;
      rem /= dim;
      outcomes(s, slot) = observables[static_cast<size_t>(slot)].eigenvalues(k);
    }
  }
  return outcomes;
}

ExperimentReport run_naive(const DensityMatrix& rho, const SamplingPlan& plan,
                           std::uint64_t seed, int repetitions) {
  validate_plan(plan);
  if (repetitions < 1) throw argument_error("run_naive: repetitions must be >= 1");
  const size_t n_recv = plan.receivers.size();
  for (const ReceiverSpec& spec : plan.receivers) {
    if (spec.observable.op.dim() != rho.dim()) {
      throw argument_error("run_naive: observable dimension does not match the state");
    }
  }

  std::vector<std::vector<double>> rep_estimates(n_recv);
  std::vector<Welford> shot_stats(n_recv);
  for (int rep = 0; rep < repetitions; ++rep) {
    const std::uint64_t rep_seed = derive_seed(seed, static_cast<std::uint64_t>(rep));
    for (size_t i = 0; i < n_recv; ++i) {
      const Observable& obs = plan.receivers[i].observable;
      RngStream rng(derive_seed(rep_seed, i));
      const Eigen::VectorXd probs = outcome_probabilities(rho.matrix(), obs.eigenvectors);
      const std::vector<long> picks = sample_indices(probs, plan.n_i[i], rng);
      double mean = 0.0;
      for (long k : picks) {
        const double lambda = obs.eigenvalues(k);
        shot_stats[i].add(lambda);
        mean += lambda;
      }
      mean /= static_cast<double>(plan.n_i[i]);
      rep_estimates[i].push_back(mean);
    }
  }

  ExperimentReport report;
  report.protocol = "naive";
  report.shots_used = plan.n_naive;
  report.seed = seed;
  report.repetitions = repetitions;
  for (size_t i = 0; i < n_recv; ++i) {
    const double true_value =
        (plan.receivers[i].observable.op.matrix() * rho.matrix()).trace().real();
    report.receivers.push_back(finalize_receiver(plan.receivers[i], plan.n_i[i], true_value,
                                                 rep_estimates[i], shot_stats[i]));
  }
  return report;
}

ExperimentReport run_virtual(const DensityMatrix& rho, const QuasiDecomposition& decomp,
                             const SamplingPlan& plan, std::uint64_t seed, int repetitions) {
  validate_plan(plan);
  if (repetitions < 1) throw argument_error("run_virtual: repetitions must be >= 1");
  const size_t n_recv = plan.receivers.size();
  if (decomp.choi_E1.input_dim != rho.dim()) {
    throw argument_error("run_virtual: decomposition input dimension does not match the state");
  }
  if (decomp.choi_E1.num_receivers() != static_cast<int>(n_recv)) {
    throw argument_error("run_virtual: decomposition receiver count does not match the plan");
  }
  if (decomp.a < 0.0 || decomp.b < 0.0) {
    throw contract_violation("run_virtual: decomposition weights must be nonnegative");
  }
  for (const ChoiOperator* e : {&decomp.choi_E1, &decomp.choi_E2}) {
    if (min_eigenvalue(e->matrix.matrix()) < -1e-6) {
      throw contract_violation("run_virtual: channel Choi is not PSD within 1e-6");
    }
    const Operator reduced = partial_trace(e->matrix, {0});
    if ((reduced.matrix() - Matrix::Identity(rho.dim(), rho.dim())).norm() > 1e-5) {
      throw contract_violation("run_virtual: channel is not trace-preserving within 1e-5");
    }
  }

  const DensityMatrix sigma1 = sanitize_state(apply_choi(decomp.choi_E1, rho.op()), 1e-6);
  const DensityMatrix sigma2 = sanitize_state(apply_choi(decomp.choi_E2, rho.op()), 1e-6);
  std::vector<Observable> observables;
  for (const ReceiverSpec& spec : plan.receivers) observables.push_back(spec.observable);

  const double weight = decomp.a + decomp.b;
  const double p1 = decomp.a / weight;

  std::vector<std::vector<double>> rep_estimates(n_recv);
  std::vector<Welford> shot_stats(n_recv);
  for (int rep = 0; rep < repetitions; ++rep) {
    const std::uint64_t rep_seed = derive_seed(seed, static_cast<std::uint64_t>(rep));
    RngStream choice_rng(derive_seed(rep_seed, 0));
    long shots_e1 = 0;
    for (long s = 0; s < plan.n_v; ++s) {
      if (choice_rng.sign_with_probability(p1) > 0) ++shots_e1;
    }
    const long shots_e2 = plan.n_v - shots_e1;
    const Eigen::MatrixXd out1 =
        measure_samples(sigma1, observables, shots_e1, derive_seed(rep_seed, 1));
    const Eigen::MatrixXd out2 =
        measure_samples(sigma2, observables, shots_e2, derive_seed(rep_seed, 2));

    for (size_t i = 0; i < n_recv; ++i) {
      double sum = 0.0;
      for (long s = 0; s < shots_e1; ++s) {
        const double value = weight * out1(s, static_cast<long>(i));
        shot_stats[i].add(value);
        sum += value;
      }
      for (long s = 0; s < shots_e2; ++s) {
        const double value = -weight * out2(s, static_cast<long>(i));
        shot_stats[i].add(value);
        sum += value;
      }
      rep_estimates[i].push_back(sum / static_cast<double>(plan.n_v));
    }
  }

  ExperimentReport report;
  report.protocol = "virtual";
  report.shots_used = plan.n_v;
  report.seed = seed;
  report.repetitions = repetitions;
  for (size_t i = 0; i < n_recv; ++i) {
    const double true_value =
        (plan.receivers[i].observable.op.matrix() * rho.matrix()).trace().real();
    report.receivers.push_back(finalize_receiver(plan.receivers[i], plan.n_v, true_value,
                                                 rep_estimates[i], shot_stats[i]));
  }
  return report;
}

ProtocolComparison compare_protocols(const DensityMatrix& rho, const QuasiDecomposition& decomp,
                                     const SamplingPlan& plan, std::uint64_t seed,
                                     int repetitions) {
  ProtocolComparison cmp;
  cmp.naive_report = run_naive(rho, plan, derive_seed(seed, 1), repetitions);
  cmp.virtual_report = run_virtual(rho, decomp, plan, derive_seed(seed, 2), repetitions);
  cmp.cost_ratio = static_cast<double>(plan.n_v) / static_cast<double>(plan.n_naive);
  return cmp;
}

}  // namespace vbroadcast

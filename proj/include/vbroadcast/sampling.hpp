#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vbroadcast/operator.hpp"
#include "vbroadcast/random.hpp"
#include "vbroadcast/sdp.hpp"

namespace vbroadcast {

/// One receiver's estimation task: observable plus (epsilon, delta) accuracy
/// and failure-probability targets.
struct ReceiverSpec {
  Observable observable;
  double epsilon;
  double delta;
};

/// Per-receiver copy counts and the derived naive/virtual totals.
struct SamplingPlan {
  std::vector<ReceiverSpec> receivers;
  std::vector<long> n_i;  // ceil((c_i^2 / 2 eps_i^2) ln(2/delta_i))
  long n_naive = 0;       // sum of n_i
  long n_q = 0;           // max of n_i
  double u = 1.0;         // sampling overhead of the decomposition
  long n_v = 0;           // ceil(u^2 * n_q)
};

struct ReceiverResult {
  long n = 0;                 // copies consumed per repetition for this receiver
  double estimate = 0.0;      // grand mean over repetitions
  double estimate_std = 0.0;  // std of per-repetition estimates
  double true_value = 0.0;
  double abs_error = 0.0;     // |estimate - true_value|
  bool within_epsilon = false;
  long failures = 0;  // repetitions with |per-rep estimate - true| > epsilon
  double empirical_failure_rate = 0.0;
  double shot_variance = 0.0;  // pooled variance of the per-shot estimator
};

struct ExperimentReport {
  std::string protocol;  // "naive" or "virtual"
  std::vector<ReceiverResult> receivers;
  long shots_used = 0;  // copies consumed per repetition
  std::uint64_t seed = 0;
  int repetitions = 1;
};

struct ProtocolComparison {
  ExperimentReport naive_report;
  ExperimentReport virtual_report;
  double cost_ratio = 0.0;  // n_v / n_naive
};

/// ceil((c^2 / 2 epsilon^2) ln(2/delta)).
long hoeffding_copies(double epsilon, double delta, double c);

/// Per-receiver Hoeffding counts with c = the observable's spectral range,
/// plus the naive total, the shared physical count, and n_v = ceil(u^2 n_q).
SamplingPlan make_plan(const std::vector<ReceiverSpec>& receivers, double u);

/// Joint product-basis measurement: each row is one shot of per-receiver
/// eigenvalues sampled from the composite state. Deterministic given seed.
Eigen::MatrixXd measure_samples(const DensityMatrix& state,
                                const std::vector<Observable>& observables, long shots,
                                std::uint64_t seed);

/// Direct protocol: receiver i measures its observable on n_i fresh copies.
ExperimentReport run_naive(const DensityMatrix& rho, const SamplingPlan& plan,
                           std::uint64_t seed, int repetitions = 1);

/// Quasi-probability protocol: each of the n_v shots samples a channel
/// (probabilities a and b over a+b), measures all receivers on its output,
/// and contributes (a+b) * sign * eigenvalue to every receiver's mean.
ExperimentReport run_virtual(const DensityMatrix& rho, const QuasiDecomposition& decomp,
                             const SamplingPlan& plan, std::uint64_t seed,
                             int repetitions = 1);

/// Runs both protocols on derived seeds and reports them with the copy-cost
/// ratio n_v / n_naive.
ProtocolComparison compare_protocols(const DensityMatrix& rho, const QuasiDecomposition& decomp,
                                     const SamplingPlan& plan, std::uint64_t seed,
                                     int repetitions = 1);

}  // namespace vbroadcast

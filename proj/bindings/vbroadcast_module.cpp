// Python bindings for the main operations: canonical broadcasts, axiom
// verification, overhead solves with decomposition, pseudo-density chains,
// and the two estimation protocols. Matrices cross the boundary as plain
// complex arrays; validation happens in the library types.
#include <cstdint>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vbroadcast/axioms.hpp"
#include "vbroadcast/broadcast.hpp"
#include "vbroadcast/errors.hpp"
#include "vbroadcast/operator.hpp"
#include "vbroadcast/random.hpp"
#include "vbroadcast/sampling.hpp"
#include "vbroadcast/sdp.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace vbroadcast;

namespace {

DensityMatrix density_from(const Matrix& rho) {
  if (rho.rows() != rho.cols()) throw argument_error("density matrix must be square");
  return DensityMatrix(Operator(SubsystemShape::single(static_cast<int>(rho.rows())), rho));
}

py::dict receiver_dict(const ReceiverResult& r) {
  return py::dict("n"_a = r.n, "estimate"_a = r.estimate, "estimate_std"_a = r.estimate_std,
                  "true_value"_a = r.true_value, "abs_error"_a = r.abs_error,
                  "within_epsilon"_a = r.within_epsilon, "failures"_a = r.failures,
                  "empirical_failure_rate"_a = r.empirical_failure_rate,
                  "shot_variance"_a = r.shot_variance);
}

py::dict report_dict(const ExperimentReport& r) {
  py::list rows;
  for (const ReceiverResult& rec : r.receivers) rows.append(receiver_dict(rec));
  return py::dict("protocol"_a = r.protocol, "shots_used"_a = r.shots_used, "seed"_a = r.seed,
                  "repetitions"_a = r.repetitions, "receivers"_a = rows);
}

SdpSolution certified_solve(int d, int n, double tol, long max_iter) {
  const SdpProblem problem = build_sdp(d, n);
  const SdpSolution solution = solve(problem, tol, max_iter);
  const SdpCertificate cert = certify(solution, problem);
  if (solution.status != SdpStatus::converged || !cert.valid) {
    throw convergence_error("overhead solve for d=" + std::to_string(d) +
                            " N=" + std::to_string(n) + " did not certify");
  }
  return solution;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "canonical virtual broadcasting: maps, axioms, overheads, simulations";

  m.def(
      "cycle_average", [](int n, int d) { return cycle_average(n, d).matrix(); }, "N"_a, "d"_a,
      "Average of all full-length-cycle permutation operators on N slots of dimension d.");

  m.def(
      "apply_canonical",
      [](const Matrix& rho, int n) { return apply_canonical(density_from(rho), n).matrix(); },
      "rho"_a, "N"_a,
      "Canonical 1-to-N broadcast of a density matrix: (1/2){rho_N, V_N}.");

  m.def(
      "classical_broadcast",
      [](const Matrix& rho, int n) { return classical_broadcast(density_from(rho), n).matrix(); },
      "rho"_a, "N"_a, "Perfect copying of the computational diagonal onto N slots.");

  m.def(
      "choi_canonical", [](int d, int n) { return choi_canonical(d, n).matrix.matrix(); }, "d"_a,
      "N"_a, "Choi matrix of the canonical map on input ⊗ outputs, input space first.");

  m.def(
      "pdo_identity_chain",
      [](const Matrix& rho, int k) { return pdo_identity_chain(density_from(rho), k).matrix(); },
      "rho"_a, "k"_a, "k-point pseudo-density operator of a state under identity dynamics.");

  m.def(
      "pdo_compare",
      [](const Matrix& rho, int n) {
        const PdoComparison c = pdo_compare(density_from(rho), n);
        return py::dict("n_points"_a = c.n_points, "frob_distance"_a = c.frob_distance,
                        "trace_distance_surrogate"_a = c.trace_distance_surrogate);
      },
      "rho"_a, "N"_a,
      "Distances between the N-point pseudo-density operator and the canonical broadcast.");

  m.def(
      "ginibre_state", [](int d, std::uint64_t seed) { return ginibre_state(d, seed).matrix(); },
      "d"_a, "seed"_a, "Random density matrix GG†/Tr(GG†) with complex Gaussian G.");

  m.def(
      "haar_unitary", [](int d, std::uint64_t seed) { return haar_unitary(d, seed).matrix(); },
      "d"_a, "seed"_a, "Haar-distributed unitary from a QR-decomposed Gaussian matrix.");

  m.def(
      "verify_axioms",
      [](int d, int n, int n_unitaries, int n_states, std::uint64_t seed) {
        AxiomCheckConfig config;
        config.n_unitaries = n_unitaries;
        config.n_states = n_states;
        config.seed = seed;
        const AxiomReport r = verify_all(choi_canonical(d, n), config);
        return py::dict(
            "map_id"_a = r.map_id, "all_pass"_a = r.all_pass,
            "residuals"_a = py::dict("uc"_a = r.uc_residual, "pi"_a = r.pi_residual,
                                     "cc"_a = r.cc_residual, "marginal"_a = r.marginal_residual,
                                     "hp"_a = r.hp_residual, "tp"_a = r.tp_residual),
            "passes"_a = py::dict("uc"_a = r.uc_pass, "pi"_a = r.pi_pass, "cc"_a = r.cc_pass,
                                  "marginal"_a = r.marginal_pass, "hp"_a = r.hp_pass,
                                  "tp"_a = r.tp_pass),
            "witnesses"_a = py::dict("uc"_a = r.uc_witness, "pi"_a = r.pi_witness,
                                     "cc"_a = r.cc_witness, "marginal"_a = r.marginal_witness),
            "twirl_residual"_a = r.twirl_residual);
      },
      "d"_a, "N"_a, "n_unitaries"_a = 20, "n_states"_a = 20, "seed"_a = 0,
      "Run all six map-axiom checks on the canonical Choi operator.");

  m.def(
      "solve_overhead",
      [](int d, int n, double tol, long max_iter) {
        const SdpProblem problem = build_sdp(d, n);
        const SdpSolution s = solve(problem, tol, max_iter);
        const SdpCertificate cert = certify(s, problem);
        return py::dict("u"_a = s.u, "a"_a = s.a, "b"_a = s.b, "gap"_a = cert.gap,
                        "iterations"_a = s.iterations, "status"_a = to_string(s.status),
                        "certified"_a = (s.status == SdpStatus::converged && cert.valid));
      },
      "d"_a, "N"_a, "tol"_a = 1e-7, "max_iter"_a = 200000,
      "Minimal total weight a + b over two-channel decompositions of the canonical map.");

  m.def(
      "decompose_overhead",
      [](int d, int n, double tol, long max_iter) {
        const QuasiDecomposition q =
            extract_decomposition(certified_solve(d, n, tol, max_iter));
        return py::dict("a"_a = q.a, "b"_a = q.b, "choi_e1"_a = q.choi_E1.matrix.matrix(),
                        "choi_e2"_a = q.choi_E2.matrix.matrix());
      },
      "d"_a, "N"_a, "tol"_a = 1e-7, "max_iter"_a = 200000,
      "Certified quasi-probability decomposition a·E1 - b·E2 as Choi matrices.");

  m.def("hoeffding_copies", &hoeffding_copies, "epsilon"_a, "delta"_a, "c"_a = 2.0,
        "Copies needed for an epsilon-accurate mean of a range-c observable, w.p. 1 - delta.");

  m.def(
      "simulate_protocols",
      [](const Matrix& rho, const std::vector<Matrix>& observables, double epsilon, double delta,
         std::uint64_t seed, int repetitions, double tol) {
        if (observables.empty()) throw argument_error("at least one observable is required");
        const DensityMatrix state = density_from(rho);
        const int d = static_cast<int>(rho.rows());
        const int n = static_cast<int>(observables.size());
        std::vector<ReceiverSpec> receivers;
        receivers.reserve(observables.size());
        for (const Matrix& obs : observables) {
          if (obs.rows() != d || obs.cols() != d) {
            throw argument_error("observables must match the state dimension");
          }
          receivers.push_back(ReceiverSpec{
              Observable::from_operator(Operator(SubsystemShape::single(d), obs)), epsilon,
              delta});
        }
        const SdpSolution solution = certified_solve(d, n, tol, 200000);
        const QuasiDecomposition decomp = extract_decomposition(solution);
        const SamplingPlan plan = make_plan(receivers, solution.u);
        const ProtocolComparison cmp = compare_protocols(state, decomp, plan, seed, repetitions);
        return py::dict("u"_a = solution.u, "a"_a = decomp.a, "b"_a = decomp.b,
                        "plan"_a = py::dict("n_i"_a = plan.n_i, "n_naive"_a = plan.n_naive,
                                            "n_q"_a = plan.n_q, "n_v"_a = plan.n_v,
                                            "u"_a = plan.u),
                        "naive"_a = report_dict(cmp.naive_report),
                        "virtual"_a = report_dict(cmp.virtual_report),
                        "cost_ratio"_a = cmp.cost_ratio);
      },
      "rho"_a, "observables"_a, "epsilon"_a = 0.1, "delta"_a = 0.05, "seed"_a = 0,
      "repetitions"_a = 1, "tol"_a = 1e-7,
      "Run the naive and virtual estimation protocols side by side on one state: one "
      "observable per receiver, equal accuracy targets, Hoeffding-planned shot counts.");
}

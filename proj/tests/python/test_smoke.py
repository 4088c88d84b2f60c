"""Smoke checks for the python bindings: each main operation runs end to end
and reproduces a known value. Runnable directly or under pytest."""

import math

import numpy as np

import vbroadcast as vb


def _marginal(block, keep):
    # Two-slot 4x4 operator -> single-slot 2x2 marginal.
    t = block.reshape(2, 2, 2, 2)
    if keep == 0:
        return np.einsum("ikjk->ij", t)
    return np.einsum("kikj->ij", t)


def test_broadcast_marginals():
    rho = vb.ginibre_state(2, seed=7)
    out = vb.apply_canonical(rho, 2)
    assert abs(np.trace(out) - 1.0) < 1e-12
    assert np.linalg.norm(out - out.conj().T) < 1e-12
    for keep in (0, 1):
        assert np.linalg.norm(_marginal(out, keep) - rho) < 1e-12


def test_choi_is_hermitian_but_not_positive():
    j = vb.choi_canonical(2, 2)
    assert j.shape == (8, 8)
    assert np.linalg.norm(j - j.conj().T) < 1e-12
    assert np.linalg.eigvalsh(j).min() < -1e-3


def test_cycle_average_two_slots_is_swap():
    swap = np.zeros((4, 4))
    swap[0, 0] = swap[1, 2] = swap[2, 1] = swap[3, 3] = 1.0
    assert np.linalg.norm(vb.cycle_average(2, 2) - swap) == 0.0


def test_classical_broadcast_copies_the_diagonal():
    rho = np.array([[0.25, 0.1], [0.1, 0.75]], dtype=complex)
    out = vb.classical_broadcast(rho, 2)
    assert abs(out[0, 0] - 0.25) < 1e-15
    assert abs(out[3, 3] - 0.75) < 1e-15
    assert abs(np.abs(out).sum() - 1.0) < 1e-12


def test_axiom_suite_passes():
    report = vb.verify_axioms(2, 2, seed=3)
    assert report["all_pass"]
    assert report["residuals"]["uc"] < 1e-10
    assert report["residuals"]["pi"] < 1e-12
    assert report["twirl_residual"] < 1e-11
    assert set(report["witnesses"]) == {"uc", "pi", "cc", "marginal"}


def test_overhead_equals_dimension():
    sol = vb.solve_overhead(2, 2)
    assert sol["certified"]
    assert sol["status"] == "converged"
    assert abs(sol["u"] - 2.0) < 1e-4
    assert abs(sol["a"] - 1.5) < 1e-4
    assert abs(sol["b"] - 0.5) < 1e-4


def test_decomposition_reconstructs_the_choi():
    q = vb.decompose_overhead(2, 2)
    target = vb.choi_canonical(2, 2)
    recon = q["a"] * q["choi_e1"] - q["b"] * q["choi_e2"]
    assert np.linalg.norm(recon - target) < 1e-6
    assert np.linalg.eigvalsh(q["choi_e1"]).min() > -1e-6
    assert np.linalg.eigvalsh(q["choi_e2"]).min() > -1e-6


def test_hoeffding_counts():
    assert vb.hoeffding_copies(0.1, 0.05) == 738
    assert vb.hoeffding_copies(0.05, 0.05, c=1.0) == 738
    try:
        vb.hoeffding_copies(0.1, 1.0)
    except ValueError:
        pass
    else:
        raise AssertionError("delta = 1 must be rejected")


def test_pdo_divergence_constants():
    pure = np.zeros((2, 2), dtype=complex)
    pure[0, 0] = 1.0
    assert vb.pdo_compare(pure, 2)["frob_distance"] < 1e-13
    cmp3 = vb.pdo_compare(pure, 3)
    assert math.isclose(cmp3["frob_distance"], 0.408248290463863, rel_tol=0, abs_tol=1e-12)
    chain = vb.pdo_identity_chain(pure, 3)
    assert abs(np.trace(chain) - 1.0) < 1e-12


def test_simulate_protocols_on_the_mixed_qubit():
    mixed = np.eye(2, dtype=complex) / 2.0
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    z = np.diag([1.0, -1.0]).astype(complex)
    run = vb.simulate_protocols(mixed, [x, z], epsilon=0.2, delta=0.1, seed=5, repetitions=2)
    assert abs(run["u"] - 2.0) < 1e-4
    assert run["plan"]["n_v"] == run["cost_ratio"] * run["plan"]["n_naive"]
    assert run["naive"]["protocol"] == "naive"
    assert run["virtual"]["protocol"] == "virtual"
    assert len(run["naive"]["receivers"]) == 2
    for protocol in ("naive", "virtual"):
        for receiver in run[protocol]["receivers"]:
            assert abs(receiver["true_value"]) < 1e-12
            assert abs(receiver["estimate"]) < 0.5
    try:
        vb.simulate_protocols(mixed, [np.eye(3, dtype=complex)])
    except ValueError:
        pass
    else:
        raise AssertionError("mismatched observable dimension must be rejected")


if __name__ == "__main__":
    checks = [(name, fn) for name, fn in sorted(globals().items())
              if name.startswith("test_") and callable(fn)]
    for name, fn in checks:
        fn()
        print("ok", name)
    print(f"smoke: {len(checks)} checks passed")

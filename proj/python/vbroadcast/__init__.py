"""Canonical 1-to-N virtual broadcasting: maps, axiom checks, sampling overheads,
pseudo-density comparisons, and protocol simulations."""

from vbroadcast._core import (
    apply_canonical,
    choi_canonical,
    classical_broadcast,
    cycle_average,
    decompose_overhead,
    ginibre_state,
    haar_unitary,
    hoeffding_copies,
    pdo_compare,
    pdo_identity_chain,
    simulate_protocols,
    solve_overhead,
    verify_axioms,
)

__all__ = [
    "apply_canonical",
    "choi_canonical",
    "classical_broadcast",
    "cycle_average",
    "decompose_overhead",
    "ginibre_state",
    "haar_unitary",
    "hoeffding_copies",
    "pdo_compare",
    "pdo_identity_chain",
    "simulate_protocols",
    "solve_overhead",
    "verify_axioms",
]

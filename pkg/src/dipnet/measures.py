"""Correlation quantifiers: negativity, pi-tangle, l1 coherence, NAQC.

Conventions, fixed by test against independent oracles:
 - Two-qubit negativity follows the standard reading of the doubled-sum
   formula: 2 * sum of |negative eigenvalues| of the partial transpose on
   qubit 1, equal to max(0, trace_norm - 1); singlet -> 1, separable -> 0.
 - Global and pairwise negativities entering the pi-tangle both use the
   trace-norm convention ||rho^T|| - 1 (identical to 2*sum|neg| for unit
   trace inputs, so the doubled/undoubled distinction is vacuous there).
"""

import math
from dataclasses import dataclass

import numpy as np

from .qmat import (BadSubsystem, DensityMatrix, partial_trace,
                   partial_transpose, trace_norm)
from .netmodel import SIGMA_X, SIGMA_Y, SIGMA_Z

NAQC_CRITICAL = math.sqrt(6.0)
NAQC_MAX = 3.0

_AXIS_MATRIX = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}
AXES = ("x", "y", "z")


class ZeroProbability(ValueError):
    """Measurement branch has (numerically) zero probability."""


@dataclass(frozen=True)
class MeasurementOutcome:
    axis: str
    outcome: int
    probability: float
    conditional: DensityMatrix


@dataclass(frozen=True)
class TangleBreakdown:
    """One-vs-rest and pairwise negativities with the three residuals."""

    n_a_bc: float
    n_b_ac: float
    n_c_ab: float
    n_ab: float
    n_ac: float
    n_bc: float
    pi_a: float
    pi_b: float
    pi_c: float
    pi: float


def _negative_eigen_sum(pt) -> float:
    w = np.linalg.eigvalsh(0.5 * (pt + pt.conj().T))
    return float(-w[w < 0].sum())


def negativity(rho: DensityMatrix) -> float:
    """Two-qubit negativity: 2 * sum |negative eigenvalues| of the partial
    transpose on qubit 1. Singlet -> 1, product states -> 0."""
    if rho.nqubits != 2:
        raise BadSubsystem(f"negativity needs a 2-qubit state, got {rho.nqubits}")
    return 2.0 * _negative_eigen_sum(partial_transpose(rho, (1,)))


def global_negativity(rho: DensityMatrix, focus: int) -> float:
    """One-vs-rest negativity ||rho^{T_focus}|| - 1, clipped at zero."""
    if rho.nqubits != 3:
        raise BadSubsystem(f"global_negativity needs 3 qubits, got {rho.nqubits}")
    if not 0 <= focus < 3:
        raise BadSubsystem(f"focus {focus} out of range")
    val = trace_norm(partial_transpose(rho, (focus,))) - 1.0
    return 0.0 if val < 0 and val > -1e-12 else max(val, 0.0)


def pairwise_negativity(rho3: DensityMatrix, pair: tuple[int, int]) -> float:
    """Negativity of the two-qubit marginal, trace-norm convention with the
    transpose on the pair's second qubit."""
    i, j = pair
    if not 0 <= i < j < 3:
        raise BadSubsystem(f"need 0 <= i < j < 3, got {pair}")
    m = partial_trace(rho3, (i, j))
    val = trace_norm(partial_transpose(m, (1,))) - 1.0
    return max(val, 0.0)


def pi_tangle(rho3: DensityMatrix) -> TangleBreakdown:
    """Residual tripartite entanglement from squared negativities."""
    n_a = global_negativity(rho3, 0)
    n_b = global_negativity(rho3, 1)
    n_c = global_negativity(rho3, 2)
    n_ab = pairwise_negativity(rho3, (0, 1))
    n_ac = pairwise_negativity(rho3, (0, 2))
    n_bc = pairwise_negativity(rho3, (1, 2))
    pi_a = n_a ** 2 - n_ab ** 2 - n_ac ** 2
    pi_b = n_b ** 2 - n_ab ** 2 - n_bc ** 2
    pi_c = n_c ** 2 - n_ac ** 2 - n_bc ** 2
    return TangleBreakdown(
        n_a_bc=n_a, n_b_ac=n_b, n_c_ab=n_c,
        n_ab=n_ab, n_ac=n_ac, n_bc=n_bc,
        pi_a=pi_a, pi_b=pi_b, pi_c=pi_c,
        pi=(pi_a + pi_b + pi_c) / 3.0)


def _axis_basis(axis: str) -> np.ndarray:
    try:
        sigma = _AXIS_MATRIX[axis]
    except KeyError:
        raise ValueError(f"axis must be one of {AXES}, got {axis!r}") from None
    _, v = np.linalg.eigh(sigma)
    return v


def l1_coherence(rho: DensityMatrix, axis: str) -> float:
    """Sum of |off-diagonal| entries in the eigenbasis of the named Pauli."""
    if rho.nqubits != 1:
        raise BadSubsystem(f"l1_coherence needs 1 qubit, got {rho.nqubits}")
    v = _axis_basis(axis)
    m = v.conj().T @ rho.mat @ v
    return float(abs(m[0, 1]) + abs(m[1, 0]))


def conditional_states(rho2: DensityMatrix, axis: str,
                       outcome: int) -> MeasurementOutcome:
    """Measure the named Pauli on qubit 0; return the branch probability and
    the conditional state of qubit 1."""
    if rho2.nqubits != 2:
        raise BadSubsystem(f"conditional_states needs 2 qubits, got {rho2.nqubits}")
    if outcome not in (+1, -1):
        raise ValueError(f"outcome must be +1 or -1, got {outcome}")
    v = _axis_basis(axis)
    # eigh returns ascending eigenvalues, so column 0 is the -1 eigenstate
    vec = v[:, 1] if outcome == +1 else v[:, 0]
    proj = np.outer(vec, vec.conj())
    op = np.kron(proj, np.eye(2, dtype=complex)) @ rho2.mat
    p = float(op.trace().real)
    if p < 1e-14:
        raise ZeroProbability(f"axis {axis} outcome {outcome:+d} has p={p:.2e}")
    t = op.reshape(2, 2, 2, 2)
    cond = np.trace(t, axis1=0, axis2=2) / p
    cond = 0.5 * (cond + cond.conj().T)
    return MeasurementOutcome(axis=axis, outcome=outcome, probability=p,
                              conditional=DensityMatrix(cond, 1))


def naqc_average(rho2: DensityMatrix) -> float:
    """Probability-weighted steered coherence, halved: for each measured
    axis i and outcome, the conditional's l1 coherence summed over the two
    axes j != i. Bell states give 3, the maximally mixed state 0."""
    total = 0.0
    for i_axis in AXES:
        for outcome in (+1, -1):
            try:
                mo = conditional_states(rho2, i_axis, outcome)
            except ZeroProbability:
                continue
            for j_axis in AXES:
                if j_axis == i_axis:
                    continue
                total += mo.probability * l1_coherence(mo.conditional, j_axis)
    return 0.5 * total


def naqc_degree(rho2: DensityMatrix) -> float:
    """Normalized degree max(0, (avg - sqrt(6)) / (3 - sqrt(6))) in [0, 1]."""
    avg = naqc_average(rho2)
    return max(0.0, (avg - NAQC_CRITICAL) / (NAQC_MAX - NAQC_CRITICAL))

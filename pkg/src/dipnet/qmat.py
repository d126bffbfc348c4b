"""Dense complex linear algebra for multi-qubit density matrices.

Everything here operates on small (dim <= 256) square complex numpy arrays.
Qubit 0 is the leftmost tensor factor, i.e. the most significant bit of the
computational-basis index.
"""

from dataclasses import dataclass

import numpy as np

# Centralized tolerances.
HERM_TOL = 1e-12
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
ORACLE_TOL = 1e-10

ComplexMatrix = np.ndarray


class NotHermitian(ValueError):
    """Matrix fails the Hermitian symmetry check."""


class NotPositive(ValueError):
    """Matrix has an eigenvalue below the PSD tolerance."""


class NotUnitary(ValueError):
    """Matrix fails the unitarity check."""


class BadSubsystem(ValueError):
    """Qubit indices are out of range, duplicated or otherwise malformed."""


def as_complex_matrix(a) -> ComplexMatrix:
    """Coerce to a square complex array and check basic shape invariants."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def _herm_deviation(m: ComplexMatrix) -> float:
    return float(np.abs(m - m.conj().T).max())


def require_hermitian(m: ComplexMatrix, tol: float = TRACE_TOL) -> ComplexMatrix:
    m = as_complex_matrix(m)
    dev = _herm_deviation(m)
    if dev > tol:
        raise NotHermitian(f"Hermitian deviation {dev:.3e} exceeds {tol:.1e}")
    return m


@dataclass(frozen=True)
class DensityMatrix:
    """A validated multi-qubit density matrix.

    Invariants checked on construction: dim = 2**nqubits, Hermiticity within
    HERM_TOL, unit trace within TRACE_TOL, eigenvalues >= -PSD_TOL.
    """

    mat: ComplexMatrix
    nqubits: int

    def __post_init__(self):
        m = as_complex_matrix(self.mat)
        if self.nqubits < 1 or m.shape[0] != 2 ** self.nqubits:
            raise ValueError(
                f"dim {m.shape[0]} does not match 2**{self.nqubits} qubits")
        dev = _herm_deviation(m)
        if dev > HERM_TOL:
            raise NotHermitian(f"Hermitian deviation {dev:.3e} exceeds {HERM_TOL:.1e}")
        tr = m.trace()
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace {tr} deviates from 1 by more than {TRACE_TOL:.1e}")
        lo = float(np.linalg.eigvalsh(0.5 * (m + m.conj().T)).min())
        if lo < -PSD_TOL:
            raise NotPositive(f"minimum eigenvalue {lo:.3e} below -{PSD_TOL:.1e}")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "mat", m)

    @property
    def dim(self) -> int:
        return 2 ** self.nqubits


def density_matrix(mat, nqubits: int | None = None) -> DensityMatrix:
    """Build a DensityMatrix, inferring the qubit count from the dimension."""
    m = as_complex_matrix(mat)
    if nqubits is None:
        n = int(round(np.log2(m.shape[0])))
        if 2 ** n != m.shape[0]:
            raise ValueError(f"dim {m.shape[0]} is not a power of two")
        nqubits = n
    return DensityMatrix(m, nqubits)


def kron(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Kronecker product; output dim is a.dim * b.dim."""
    return np.kron(as_complex_matrix(a), as_complex_matrix(b))


def hermitian_eigenvalues(a: ComplexMatrix, check_tol: float = TRACE_TOL,
                          verify: bool = False) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix.

    With verify=True an explicit backward-error pass checks every
    eigenpair residual ||a v - w v|| against 1e-10 * ||a||.
    """
    a = require_hermitian(a, check_tol)
    if not verify:
        return np.linalg.eigvalsh(a)
    w, v = np.linalg.eigh(a)
    scale = max(float(np.abs(a).max()), 1.0)
    resid = np.abs(a @ v - v * w).max()
    if resid > 1e-10 * scale:
        raise ArithmeticError(f"eigenpair backward error {resid:.3e} too large")
    return w


def trace_norm(a: ComplexMatrix, check_tol: float = TRACE_TOL) -> float:
    """Sum of |eigenvalues| of a Hermitian matrix (its trace norm)."""
    return float(np.abs(hermitian_eigenvalues(a, check_tol)).sum())


def _check_keep(indices, nqubits: int, require_sorted: bool) -> tuple:
    try:
        idx = tuple(int(q) for q in indices)
    except (TypeError, ValueError) as exc:
        raise BadSubsystem(f"bad qubit indices {indices!r}") from exc
    if not idx:
        raise BadSubsystem("empty qubit selection")
    if len(set(idx)) != len(idx):
        raise BadSubsystem(f"duplicate qubit indices in {idx}")
    if any(q < 0 or q >= nqubits for q in idx):
        raise BadSubsystem(f"qubit indices {idx} out of range for {nqubits} qubits")
    if require_sorted and list(idx) != sorted(idx):
        raise BadSubsystem(f"qubit indices {idx} must be strictly increasing")
    return idx


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Trace out all qubits not in `keep` (strictly increasing indices)."""
    n = rho.nqubits
    keep = _check_keep(keep, n, require_sorted=True)
    t = rho.mat.reshape([2] * (2 * n))
    for q in sorted((q for q in range(n) if q not in keep), reverse=True):
        half = t.ndim // 2
        t = np.trace(t, axis1=q, axis2=q + half)
    k = len(keep)
    return DensityMatrix(t.reshape(2 ** k, 2 ** k), k)


def partial_transpose(rho: DensityMatrix, subsystem) -> ComplexMatrix:
    """Transpose the named qubits' indices; returns a plain matrix (the
    result is Hermitian but usually not positive)."""
    n = rho.nqubits
    subsystem = _check_keep(subsystem, n, require_sorted=False)
    t = rho.mat.reshape([2] * (2 * n))
    perm = list(range(2 * n))
    for q in subsystem:
        perm[q], perm[q + n] = perm[q + n], perm[q]
    return t.transpose(perm).reshape(rho.dim, rho.dim)


def matrix_exp_hermitian(h: ComplexMatrix, t: float,
                         check_tol: float = TRACE_TOL) -> ComplexMatrix:
    """exp(-i h t) for Hermitian h via spectral decomposition; unitary."""
    h = require_hermitian(h, check_tol)
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w * t)) @ v.conj().T


def require_unitary(u: ComplexMatrix, tol: float = HERM_TOL) -> ComplexMatrix:
    u = as_complex_matrix(u)
    dev = float(np.abs(u @ u.conj().T - np.eye(u.shape[0])).max())
    if dev > tol:
        raise NotUnitary(f"unitarity deviation {dev:.3e} exceeds {tol:.1e}")
    return u

"""Network construction and dipolar evolution.

A four-node network is two entangled pairs on qubits (0,1) and (2,3); the
dipolar coupling acts on qubits (1,2). Channel names follow the node
numbering used throughout the result set, where the second pair's nodes are
numbered far-member-first (node 3 is qubit 3, node 4 is qubit 2):

    "12" -> (0, 1)   "34" -> (2, 3)      initially entangled pairs
    "14" -> (0, 2)   "23" -> (1, 3)      generated by the coupling
    "13" -> (0, 3)   "24" -> (1, 2)      never correlated
    "123" -> (0, 1, 3)  "234" -> (1, 2, 3)  "124" -> (0, 1, 2)
    "18"  -> terminal channel of the eight-node extension

The propagator is parameterized by the dimensionless (tau, eps_tilde); it
equals exp(-i H t) for the Hamiltonian of dipolar_hamiltonian() at
t = -12 tau / delta (see tau_to_time).
"""

from dataclasses import dataclass

import numpy as np

from .qmat import (BadSubsystem, ComplexMatrix, DensityMatrix, HERM_TOL,
                   NotPositive, as_complex_matrix, kron, partial_trace,
                   require_unitary)

IDENTITY_2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (IDENTITY_2, SIGMA_X, SIGMA_Y, SIGMA_Z)

XSTATE_PSD_TOL = 1e-12

CHANNEL_QUBITS = {
    "12": (0, 1),
    "34": (2, 3),
    "14": (0, 2),
    "23": (1, 3),
    "13": (0, 3),
    "24": (1, 2),
    "123": (0, 1, 3),
    "234": (1, 2, 3),
    "124": (0, 1, 2),
}

TWO_NODE_CHANNELS = ("12", "34", "14", "23", "13", "24")
THREE_NODE_CHANNELS = ("123", "234", "124")
ALL_CHANNELS = TWO_NODE_CHANNELS + THREE_NODE_CHANNELS + ("18",)


@dataclass(frozen=True)
class XStateParams:
    """Correlation coefficients (a, b, c) of the Pauli-diagonal pair state."""

    a: float
    b: float
    c: float

    def bell_weights(self) -> tuple[float, float, float, float]:
        a, b, c = self.a, self.b, self.c
        return ((1 + a - b + c) / 4, (1 - a + b + c) / 4,
                (1 + a + b - c) / 4, (1 - a - b - c) / 4)

    def validate(self) -> "XStateParams":
        if min(self.bell_weights()) < -XSTATE_PSD_TOL:
            raise NotPositive(
                f"X-state params {(self.a, self.b, self.c)} give negative "
                f"Bell weights {self.bell_weights()}")
        return self


SINGLET_PARAMS = XStateParams(-1.0, -1.0, -1.0)


def werner_params(x: float) -> XStateParams:
    """Werner mixture x * singlet + (1 - x) * I/4."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"werner parameter {x} outside [0, 1]")
    return XStateParams(-x, -x, -x)


@dataclass(frozen=True)
class DipolarParams:
    """Dimensionless coupling parameters; kappas are always derived."""

    eps_tilde: float
    tau: float
    delta: float | None = None
    eps: float | None = None

    def __post_init__(self):
        if self.tau < 0:
            raise ValueError(f"tau must be >= 0, got {self.tau}")

    @property
    def kappas(self) -> tuple[float, float, float]:
        return (1 - 3 * self.eps_tilde, 1 + 3 * self.eps_tilde, -2.0)


@dataclass(frozen=True)
class PropagatorCoeffs:
    r1: complex
    r2: complex
    r3: complex
    r4: complex
    c1: float
    c2: float
    c3: float
    s1: float
    s2: float
    s3: float

    def __post_init__(self):
        norm = sum(abs(r) ** 2 for r in (self.r1, self.r2, self.r3, self.r4))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"sum |r_k|^2 = {norm} deviates from 1")

    def gammas(self) -> tuple[complex, complex, complex, complex]:
        """(r2 - r3, r2 + r3, r1 - r4, r1 + r4): the propagator's entries."""
        return (self.r2 - self.r3, self.r2 + self.r3,
                self.r1 - self.r4, self.r1 + self.r4)


@dataclass(frozen=True)
class NetworkConfig:
    """Initial network kind: MM, WW or MW with per-pair Werner parameters."""

    kind: str
    werner_x1: float = 0.7
    werner_x2: float = 0.7

    def __post_init__(self):
        if self.kind not in ("MM", "WW", "MW"):
            raise ValueError(f"unknown network kind {self.kind!r}")
        for x in (self.werner_x1, self.werner_x2):
            if not 0.0 <= x <= 1.0:
                raise ValueError(f"werner parameter {x} outside [0, 1]")

    def pair_params(self) -> tuple[XStateParams, XStateParams]:
        if self.kind == "MM":
            return SINGLET_PARAMS, SINGLET_PARAMS
        if self.kind == "WW":
            return werner_params(self.werner_x1), werner_params(self.werner_x2)
        return SINGLET_PARAMS, werner_params(self.werner_x2)


def dipolar_hamiltonian(delta: float, eps: float) -> ComplexMatrix:
    """Two-spin dipolar Hamiltonian in the {00,01,10,11} basis."""
    d6, e2 = delta / 6.0, eps / 2.0
    return np.array([[d6, 0, 0, e2],
                     [0, -d6, -d6, 0],
                     [0, -d6, -d6, 0],
                     [e2, 0, 0, d6]], dtype=complex)


def tau_to_time(tau: float, delta: float) -> float:
    """Physical time t such that exp(-i H(delta, eps) t) reproduces the
    (tau, eps_tilde = eps/delta) propagator: t = -12 tau / delta."""
    return -12.0 * tau / delta


def propagator_coeffs(p: DipolarParams) -> PropagatorCoeffs:
    kx, ky, kz = p.kappas
    c1, c2, c3 = np.cos(kx * p.tau), np.cos(ky * p.tau), np.cos(kz * p.tau)
    s1, s2, s3 = np.sin(kx * p.tau), np.sin(ky * p.tau), np.sin(kz * p.tau)
    return PropagatorCoeffs(
        r1=complex(c1 * c2 * c3, -s1 * s2 * s3),
        r2=complex(c1 * s2 * s3, -c2 * c3 * s1),
        r3=complex(c2 * s1 * s3, -c1 * c3 * s2),
        r4=complex(c3 * s1 * s2, -c1 * c2 * s3),
        c1=float(c1), c2=float(c2), c3=float(c3),
        s1=float(s1), s2=float(s2), s3=float(s3))


def propagator_matrix(p: DipolarParams) -> ComplexMatrix:
    """The two-qubit dipolar propagator.

    Outer diagonal r1+r4, inner diagonal r1-r4, corners r2-r3, inner
    off-diagonals r2+r3. This corner/inner placement is the unitary one and
    equals the matrix exponential of the Hamiltonian; swapping the two (as
    one reading of the source equations suggests) breaks unitarity.
    """
    g1, g2, g3, g4 = propagator_coeffs(p).gammas()
    return np.array([[g4, 0, 0, g1],
                     [0, g3, g2, 0],
                     [0, g2, g3, 0],
                     [g1, 0, 0, g4]])


def x_state(params: XStateParams) -> DensityMatrix:
    """Two-qubit Pauli-diagonal state 1/4 (I + a XX + b YY + c ZZ)."""
    params.validate()
    m = 0.25 * (np.eye(4, dtype=complex)
                + params.a * kron(SIGMA_X, SIGMA_X)
                + params.b * kron(SIGMA_Y, SIGMA_Y)
                + params.c * kron(SIGMA_Z, SIGMA_Z))
    return DensityMatrix(m, 2)


def initial_network(cfg: NetworkConfig) -> DensityMatrix:
    p1, p2 = cfg.pair_params()
    return DensityMatrix(kron(x_state(p1).mat, x_state(p2).mat), 4)


def _embed_two_qubit(u: ComplexMatrix, i: int, j: int, n: int) -> ComplexMatrix:
    """Embed a 4x4 operator on qubits (i, j) of an n-qubit register."""
    t = u.reshape(2, 2, 2, 2)
    op = np.eye(2 ** (n - 2), dtype=complex).reshape([2] * (2 * (n - 2)))
    full = np.tensordot(t, op, axes=0)
    # axes of `full`: (out_i, out_j, in_i, in_j, out_rest..., in_rest...)
    rest = [q for q in range(n) if q not in (i, j)]
    out_axes = [0] * n
    in_axes = [0] * n
    out_axes[i], out_axes[j] = 0, 1
    in_axes[i], in_axes[j] = 2, 3
    for k, q in enumerate(rest):
        out_axes[q] = 4 + k
        in_axes[q] = 4 + (n - 2) + k
    return full.transpose(out_axes + in_axes).reshape(2 ** n, 2 ** n)


def evolve_pair(rho: DensityMatrix, u: ComplexMatrix, qubits: tuple[int, int],
                check: bool = True) -> DensityMatrix:
    """Conjugate rho by u acting on the ordered qubit pair (i, j)."""
    i, j = qubits
    if not (0 <= i < j < rho.nqubits):
        raise BadSubsystem(f"need 0 <= i < j < {rho.nqubits}, got {(i, j)}")
    u = as_complex_matrix(u)
    if u.shape != (4, 4):
        raise BadSubsystem(f"expected a 4x4 unitary, got shape {u.shape}")
    if check:
        require_unitary(u, HERM_TOL)
    uf = _embed_two_qubit(u, i, j, rho.nqubits)
    return DensityMatrix(uf @ rho.mat @ uf.conj().T, rho.nqubits)


def evolved_network(cfg: NetworkConfig, p: DipolarParams) -> DensityMatrix:
    """Initial network evolved by the dipolar coupling on qubits (1, 2)."""
    return evolve_pair(initial_network(cfg), propagator_matrix(p), (1, 2),
                       check=False)


def extend_to_eight(cfg: NetworkConfig, p_inner: DipolarParams,
                    p_bridge: DipolarParams) -> DensityMatrix:
    """Terminal two-node channel of the eight-node network.

    Two identical four-node hops (qubits 0-3 and 4-7, each evolved on its
    (1,2) pair) are joined by a bridge coupling between hop 1's terminal
    node (qubit 2) and hop 2's first node (qubit 4); the 256x256 state is
    then traced to the terminal channel qubits (0, 4). Applying the bridge
    on (3, 4) and keeping (0, 7) instead provably returns I/4 for every
    parameter value, so this layout is the one that carries the extension's
    entanglement.
    """
    hop = evolved_network(cfg, p_inner)
    rho8 = kron(hop.mat, hop.mat)
    uf = _embed_two_qubit(propagator_matrix(p_bridge), 2, 4, 8)
    rho8 = uf @ rho8 @ uf.conj().T
    t = rho8.reshape([2] * 16)
    for q in (7, 6, 5, 3, 2, 1):
        t = np.trace(t, axis1=q, axis2=q + t.ndim // 2)
    return DensityMatrix(t.reshape(4, 4), 2)


def channel_qubits(channel: str) -> tuple[int, ...]:
    if channel == "18":
        raise BadSubsystem("channel 18 lives on the extended network; "
                           "use extend_to_eight")
    try:
        return CHANNEL_QUBITS[channel]
    except KeyError:
        raise BadSubsystem(f"unknown channel {channel!r}") from None


def network_channel_state(cfg: NetworkConfig, p: DipolarParams, channel: str,
                          p_bridge: DipolarParams | None = None) -> DensityMatrix:
    """Dense-path reduced state of a named channel."""
    if channel == "18":
        return extend_to_eight(cfg, p, p_bridge if p_bridge is not None else p)
    return partial_trace(evolved_network(cfg, p), channel_qubits(channel))

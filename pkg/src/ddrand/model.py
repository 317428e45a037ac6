"""Pauli-word algebra, Hamiltonian models, and seeded random states.

Randomness is always drawn from ``numpy.random.Generator`` seeded with
PCG64, so every model and state is a pure function of its structure
parameters and an integer seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .linalg import check_hermitian, kron, operator_norm

PAULI_LABELS = ("I", "X", "Y", "Z")

PAULI_MATRICES = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}

_PHASES = (1 + 0j, -1 + 0j, 1j, -1j)

# single-qubit products: (a, b) -> (label of a*b, phase factor)
_MUL_TABLE = {
    ("I", "I"): ("I", 1), ("I", "X"): ("X", 1), ("I", "Y"): ("Y", 1), ("I", "Z"): ("Z", 1),
    ("X", "I"): ("X", 1), ("X", "X"): ("I", 1), ("X", "Y"): ("Z", 1j), ("X", "Z"): ("Y", -1j),
    ("Y", "I"): ("Y", 1), ("Y", "X"): ("Z", -1j), ("Y", "Y"): ("I", 1), ("Y", "Z"): ("X", 1j),
    ("Z", "I"): ("Z", 1), ("Z", "X"): ("Y", 1j), ("Z", "Y"): ("X", -1j), ("Z", "Z"): ("I", 1),
}


@dataclass(frozen=True)
class PauliWord:
    """An n-qubit Pauli operator with a tracked unit phase."""

    labels: tuple[str, ...]
    phase: complex = 1 + 0j

    def __post_init__(self):
        if not self.labels:
            raise ValueError("a PauliWord needs at least one qubit")
        bad = [l for l in self.labels if l not in PAULI_LABELS]
        if bad:
            raise ValueError(f"invalid Pauli labels: {bad}")
        if self.phase not in _PHASES:
            raise ValueError(f"phase must be a fourth root of unity, got {self.phase}")

    @classmethod
    def from_label(cls, label: str, phase: complex = 1 + 0j) -> "PauliWord":
        return cls(tuple(label), phase)

    @classmethod
    def identity(cls, n: int) -> "PauliWord":
        return cls(("I",) * n)

    @classmethod
    def uniform(cls, label: str, n: int) -> "PauliWord":
        """The same single-qubit Pauli applied to every one of n qubits."""
        return cls((label,) * n)

    @property
    def n_qubits(self) -> int:
        return len(self.labels)

    def is_identity(self) -> bool:
        """True when the word acts trivially (phase disregarded)."""
        return all(l == "I" for l in self.labels)

    def dagger(self) -> "PauliWord":
        return PauliWord(self.labels, self.phase.conjugate())

    def __str__(self) -> str:
        sign = {1 + 0j: "", -1 + 0j: "-", 1j: "i", -1j: "-i"}[self.phase]
        return sign + "".join(self.labels)


def pauli_mul(a: PauliWord, b: PauliWord) -> PauliWord:
    """Product of two Pauli words with exactly composed phase."""
    if a.n_qubits != b.n_qubits:
        raise ValueError(f"length mismatch: {a.n_qubits} vs {b.n_qubits}")
    phase = a.phase * b.phase
    labels = []
    for la, lb in zip(a.labels, b.labels):
        lab, ph = _MUL_TABLE[(la, lb)]
        labels.append(lab)
        phase *= ph
    return PauliWord(tuple(labels), phase)


def pauli_matrix(w: PauliWord) -> np.ndarray:
    """Dense matrix realization of a Pauli word, phase included."""
    mats = [PAULI_MATRICES[l] for l in w.labels]
    return w.phase * reduce(np.kron, mats)


def site_operator(label: str, site: int, n: int) -> PauliWord:
    """Single-site Pauli embedded into an n-qubit register."""
    labels = ["I"] * n
    labels[site] = label
    return PauliWord(tuple(labels))


@dataclass(frozen=True)
class HamiltonianModel:
    """System + bath + interaction Hamiltonians on a qubit register pair.

    ``coupling_j`` echoes the explicit prefactor of ``h_sb``; ``beta`` is the
    spectral norm of the uncoupled part ``h_sys (x) I + I (x) h_bath``.
    ``bath_ops`` optionally keeps the raw bath operators used to assemble
    ``h_sb`` (needed when evaluating interaction-strength norm sums).
    """

    h_sys: np.ndarray
    h_bath: np.ndarray
    h_sb: np.ndarray
    n_sys: int
    n_bath: int
    coupling_j: float
    beta: float
    bath_ops: dict | None = field(default=None, compare=False)

    def __post_init__(self):
        for name, m, dim in (
            ("h_sys", self.h_sys, self.dim_sys),
            ("h_bath", self.h_bath, self.dim_bath),
            ("h_sb", self.h_sb, self.dim_sys * self.dim_bath),
        ):
            if m.shape != (dim, dim):
                raise ValueError(f"{name} has shape {m.shape}, expected {(dim, dim)}")
            check_hermitian(m)
        if abs(operator_norm(self.h_free) - self.beta) > 1e-9:
            raise ValueError("beta does not match the norm of the uncoupled Hamiltonian")

    @property
    def dim_sys(self) -> int:
        return 2 ** self.n_sys

    @property
    def dim_bath(self) -> int:
        return 2 ** self.n_bath

    @property
    def h_free(self) -> np.ndarray:
        """Uncoupled joint Hamiltonian h_sys (x) I + I (x) h_bath."""
        return kron(self.h_sys, np.eye(self.dim_bath)) + kron(np.eye(self.dim_sys), self.h_bath)

    @property
    def h_total(self) -> np.ndarray:
        return self.h_free + self.h_sb


def _draw_gammas(rng: np.random.Generator, shape) -> np.ndarray:
    """Uniform [0, 1] coefficient table. Kept separate as a test hook."""
    return rng.uniform(0.0, 1.0, size=shape)


def build_heisenberg(n: int) -> np.ndarray:
    """Open-chain isotropic Heisenberg Hamiltonian on n qubits.

    Sum of XX + YY + ZZ on nearest neighbors; commutes with the global
    X, Y and Z rotations used as decoupling pulses.
    """
    if n < 2:
        raise ValueError("the chain needs at least 2 qubits")
    dim = 2 ** n
    h = np.zeros((dim, dim), dtype=np.complex128)
    for site in range(n - 1):
        for label in ("X", "Y", "Z"):
            labels = ["I"] * n
            labels[site] = label
            labels[site + 1] = label
            h += pauli_matrix(PauliWord(tuple(labels)))
    return h


def _one_local_sum(n: int, coeffs: np.ndarray) -> np.ndarray:
    """sum_{site, beta} coeffs[site, beta] * sigma_beta,site on n qubits."""
    dim = 2 ** n
    out = np.zeros((dim, dim), dtype=np.complex128)
    for site in range(n):
        for bi, label in enumerate(("X", "Y", "Z")):
            out += coeffs[site, bi] * pauli_matrix(site_operator(label, site, n))
    return out


def build_local_bath_model(n_sys: int, n_bath: int, j: float, seed: int) -> HamiltonianModel:
    """Heisenberg chain with general 1-local noise from a qubit bath.

    Each system site couples through X, Y and Z to a shared bath operator
    B_alpha (a random 1-local sum over the bath register), with the explicit
    prefactor ``j``. A fourth random operator of the same form, not scaled
    by ``j``, serves as the bath Hamiltonian.
    """
    if n_sys < 1 or n_bath < 1:
        raise ValueError("n_sys and n_bath must be at least 1")
    rng = np.random.default_rng(seed)
    # draw order: B_X, B_Y, B_Z coefficient tables, then the bath Hamiltonian
    gammas = _draw_gammas(rng, (3, n_bath, 3))
    gamma_bath = _draw_gammas(rng, (n_bath, 3))

    bath_ops = {label: _one_local_sum(n_bath, gammas[ai]) for ai, label in enumerate(("X", "Y", "Z"))}
    h_bath = _one_local_sum(n_bath, gamma_bath)
    h_sys = build_heisenberg(n_sys)

    dim_joint = 2 ** (n_sys + n_bath)
    h_sb = np.zeros((dim_joint, dim_joint), dtype=np.complex128)
    for site in range(n_sys):
        for label in ("X", "Y", "Z"):
            sys_op = pauli_matrix(site_operator(label, site, n_sys))
            h_sb += kron(sys_op, bath_ops[label])
    h_sb *= j

    beta = operator_norm(
        kron(h_sys, np.eye(2 ** n_bath)) + kron(np.eye(2 ** n_sys), h_bath)
    )
    return HamiltonianModel(
        h_sys=h_sys, h_bath=h_bath, h_sb=h_sb,
        n_sys=n_sys, n_bath=n_bath, coupling_j=float(j), beta=beta,
        bath_ops=bath_ops,
    )


def _two_qubit_sum(coeffs: np.ndarray) -> np.ndarray:
    """sum_{alpha,beta} coeffs[alpha, beta] * sigma_alpha (x) sigma_beta (4x4)."""
    out = np.zeros((4, 4), dtype=np.complex128)
    for ai, la in enumerate(PAULI_LABELS):
        for bi, lb in enumerate(PAULI_LABELS):
            out += coeffs[ai, bi] * kron(PAULI_MATRICES[la], PAULI_MATRICES[lb])
    return out


def build_dephasing_model(j: float, seed: int) -> HamiltonianModel:
    """Single qubit dephasing through Z against a two-qubit bath.

    H = I (x) B_I + j * (Z (x) B_Z) where B_I and B_Z contain all 1- and
    2-body bath terms with uniform [0, 1] coefficients. The system
    Hamiltonian is zero, so the ideal evolution acts only on the bath.
    """
    rng = np.random.default_rng(seed)
    # draw order: B_I table then B_Z table
    gamma_i = _draw_gammas(rng, (4, 4))
    gamma_z = _draw_gammas(rng, (4, 4))
    b_i = _two_qubit_sum(gamma_i)
    b_z = _two_qubit_sum(gamma_z)

    h_sys = np.zeros((2, 2), dtype=np.complex128)
    h_bath = b_i
    h_sb = j * kron(PAULI_MATRICES["Z"], b_z)
    beta = operator_norm(kron(h_sys, np.eye(4)) + kron(np.eye(2), h_bath))
    return HamiltonianModel(
        h_sys=h_sys, h_bath=h_bath, h_sb=h_sb,
        n_sys=1, n_bath=2, coupling_j=float(j), beta=beta,
        bath_ops={"I": b_i, "Z": b_z},
    )


def build_hahn_model(n_sys: int, n_bath: int, j: float, seed: int) -> HamiltonianModel:
    """Heisenberg chain with local dephasing noise, one bath operator per site.

    H_SB = j * sum_site Z_site (x) B_site with each B_site a random 1-local
    sum over the bath register; a further random operator of the same form
    is the bath Hamiltonian. Global X pulses anticommute with every
    coupling term while preserving the chain.
    """
    if n_sys < 1 or n_bath < 1:
        raise ValueError("n_sys and n_bath must be at least 1")
    rng = np.random.default_rng(seed)
    gammas = _draw_gammas(rng, (n_sys, n_bath, 3))
    gamma_bath = _draw_gammas(rng, (n_bath, 3))

    bath_ops = {f"Z{site}": _one_local_sum(n_bath, gammas[site]) for site in range(n_sys)}
    h_bath = _one_local_sum(n_bath, gamma_bath)
    h_sys = build_heisenberg(n_sys) if n_sys >= 2 else np.zeros((2, 2), dtype=np.complex128)

    dim_joint = 2 ** (n_sys + n_bath)
    h_sb = np.zeros((dim_joint, dim_joint), dtype=np.complex128)
    for site in range(n_sys):
        sys_op = pauli_matrix(site_operator("Z", site, n_sys))
        h_sb += kron(sys_op, bath_ops[f"Z{site}"])
    h_sb *= j

    beta = operator_norm(
        kron(h_sys, np.eye(2 ** n_bath)) + kron(np.eye(2 ** n_sys), h_bath)
    )
    return HamiltonianModel(
        h_sys=h_sys, h_bath=h_bath, h_sb=h_sb,
        n_sys=n_sys, n_bath=n_bath, coupling_j=float(j), beta=beta,
        bath_ops=bath_ops,
    )


def interaction_norm_sum(model: HamiltonianModel) -> float:
    """Interaction strength as the sum of coupling-term norms.

    For the local-bath model this is j * sum over system sites and axes of
    ||B_alpha||, the convention under which the concatenated-sequence error
    bound is stated. Requires the model to carry its bath operators.
    """
    if model.bath_ops is None:
        raise ValueError("model does not expose its bath operators")
    per_site = sum(operator_norm(b) for name, b in model.bath_ops.items() if name != "I")
    if set(model.bath_ops) >= {"X", "Y", "Z"}:
        # shared bath operators: every system site couples to the same three
        return model.coupling_j * model.n_sys * per_site
    return model.coupling_j * per_site


def random_product_state(dim_sys: int, dim_bath: int, seed: int) -> np.ndarray:
    """Haar-random pure product state |s><s| (x) |b><b|.

    Each factor is a normalized complex-Gaussian vector; the system factor
    is drawn first.
    """
    if dim_sys < 2 or dim_bath < 2:
        raise ValueError("both factors need dimension at least 2")
    rng = np.random.default_rng(seed)
    rho = None
    for dim in (dim_sys, dim_bath):
        v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        v /= np.linalg.norm(v)
        proj = np.outer(v, v.conj())
        rho = proj if rho is None else np.kron(rho, proj)
    return rho

"""Exact evolution: sequence compilation, deterministic and randomized
channels, error metrics, and the Pauli (x) bath-block decomposition.

Everything here is dense linear algebra on the joint system + bath space;
the largest problems are 256-dimensional, so exactness beats cleverness.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .linalg import (
    ATOL_TRACE,
    NumericalContractError,
    as_complex_matrix,
    check_hermitian,
    check_unitary,
    expm_hermitian,
    hermiticity_defect,
    kron,
    operator_norm,
    partial_trace,
    trace_distance,
)
from .model import PAULI_LABELS, HamiltonianModel, PauliWord, pauli_matrix
from .sequences import DecouplingGroup, PulseSequence


@dataclass(frozen=True, eq=False)
class MixedUnitaryChannel:
    """Probabilistic mixture of unitary conjugations."""

    branches: tuple[tuple[float, np.ndarray], ...]

    def __post_init__(self):
        if not self.branches:
            raise ValueError("a channel needs at least one branch")
        weights = [w for w, _ in self.branches]
        if any(w <= 0 for w in weights):
            raise ValueError("branch weights must be positive")
        if abs(sum(weights) - 1.0) > ATOL_TRACE:
            raise ValueError(f"branch weights sum to {sum(weights)}, not 1")
        dims = {u.shape for _, u in self.branches}
        if len(dims) != 1:
            raise ValueError("branch unitaries must share one dimension")
        for _, u in self.branches:
            check_unitary(u)

    @property
    def dim(self) -> int:
        return self.branches[0][1].shape[0]


@dataclass(frozen=True, eq=False)
class BathBlockMap:
    """Expansion D = sum_P P (x) E_P over the system Pauli basis."""

    entries: dict[PauliWord, np.ndarray]
    n_sys: int

    def reconstruct(self) -> np.ndarray:
        total = None
        for p, block in self.entries.items():
            term = kron(pauli_matrix(p), block)
            total = term if total is None else total + term
        return total

    def block_norm(self, labels: tuple[str, ...]) -> float:
        """Spectral norm of the E_P block for the given (phase-1) word."""
        return operator_norm(self.entries[PauliWord(labels)])


def _embed_pulse(pulse: PauliWord, dim_bath: int) -> np.ndarray:
    m = pauli_matrix(pulse)
    if dim_bath == 1:
        return m
    return kron(m, np.eye(dim_bath))


def compile_unitary(seq: PulseSequence, h_total: np.ndarray) -> np.ndarray:
    """Time-ordered product of the sequence against a joint Hamiltonian.

    Each segment applies its pulse (as P (x) I on the bath) and then free
    evolution exp(-i h_total duration). Exponentials are cached per distinct
    duration, and the (exponential @ pulse) product per distinct segment
    kind, so equal-interval sequences cost one eigendecomposition plus one
    matmul per segment.
    """
    h_total = check_hermitian(h_total)
    dim = h_total.shape[0]
    dim_sys = 2 ** seq.n_qubits
    if dim % dim_sys != 0:
        raise ValueError(f"pulse dimension {dim_sys} does not divide joint dimension {dim}")
    dim_bath = dim // dim_sys

    w, v = np.linalg.eigh(h_total)
    vdag = v.conj().T
    exps: dict[float, np.ndarray] = {}
    steps: dict[tuple, np.ndarray] = {}

    u = np.eye(dim, dtype=np.complex128)
    for seg in seq.segments:
        key = (seg.duration, seg.pulse.labels, seg.pulse.phase)
        step = steps.get(key)
        if step is None:
            e = exps.get(seg.duration)
            if e is None:
                e = (v * np.exp(-1j * w * seg.duration)) @ vdag
                exps[seg.duration] = e
            step = e if seg.pulse.is_identity() and seg.pulse.phase == 1 else e @ _embed_pulse(seg.pulse, dim_bath)
            steps[key] = step
        u = step @ u
    if not (seq.final_pulse.is_identity() and seq.final_pulse.phase == 1):
        u = _embed_pulse(seq.final_pulse, dim_bath) @ u
    return check_unitary(u)


def ideal_unitary(model: HamiltonianModel, total_t: float) -> np.ndarray:
    """exp(-i H_0 t) for the uncoupled Hamiltonian; t = 0 gives the identity."""
    if total_t < 0:
        raise ValueError("total_t must be nonnegative")
    return expm_hermitian(model.h_free, total_t)


def deterministic_channel(seq: PulseSequence, model: HamiltonianModel) -> MixedUnitaryChannel:
    return MixedUnitaryChannel(((1.0, compile_unitary(seq, model.h_total)),))


def randomized_channel(
    seq: PulseSequence,
    group: DecouplingGroup,
    model: HamiltonianModel,
    rng: np.random.Generator | None = None,
) -> MixedUnitaryChannel:
    """Uniform mixture over the conjugated propagators g D g^dag.

    Conjugating the compiled unitary is exactly equivalent to compiling the
    first/last-pulse-modified branch sequences. When ``rng`` is given the
    channel is instead a single branch sampled uniformly (one realization
    per trial rather than the exact mixture).
    """
    if group.n_qubits != seq.n_qubits:
        raise ValueError("group and sequence qubit counts differ")
    d = compile_unitary(seq, model.h_total)
    dim_bath = d.shape[0] // (2 ** seq.n_qubits)
    elements = list(group)
    if rng is not None:
        elements = [elements[rng.integers(len(elements))]]
    weight = 1.0 / len(elements)
    branches = []
    for g in elements:
        gm = _embed_pulse(g, dim_bath)
        branches.append((weight, gm @ d @ gm.conj().T))
    return MixedUnitaryChannel(tuple(branches))


def apply_channel(ch: MixedUnitaryChannel, rho: np.ndarray) -> np.ndarray:
    """sum_i w_i U_i rho U_i^dag with trace/Hermiticity preservation checks."""
    rho = as_complex_matrix(rho)
    if rho.shape != (ch.dim, ch.dim):
        raise ValueError(f"state shape {rho.shape} does not match channel dimension {ch.dim}")
    if hermiticity_defect(rho) > 1e-10:
        raise NumericalContractError("input state is not Hermitian")
    out = np.zeros_like(rho)
    for w_i, u in ch.branches:
        out += w_i * (u @ rho @ u.conj().T)
    if abs(np.trace(out).real - np.trace(rho).real) > ATOL_TRACE:
        raise NumericalContractError("channel application changed the trace")
    if hermiticity_defect(out) > ATOL_TRACE:
        raise NumericalContractError("channel application broke Hermiticity")
    return out


def state_error(
    ch: MixedUnitaryChannel,
    model: HamiltonianModel,
    rho: np.ndarray,
    total_t: float,
    u0: np.ndarray | None = None,
) -> float:
    """Trace distance between the channel output and the ideal evolution.

    ``u0`` accepts a precomputed ideal_unitary(model, total_t) so sweeps do
    not rediagonalize H_0 per state.
    """
    if u0 is None:
        u0 = ideal_unitary(model, total_t)
    ideal = u0 @ rho @ u0.conj().T
    return trace_distance(apply_channel(ch, rho), ideal)


def subsystem_error(ch: MixedUnitaryChannel, rho0: np.ndarray, dim_sys: int, dim_bath: int) -> float:
    """Trace distance between the output reduced system state and the
    initial one: (1/2) || rho_S(T) - rho_S(0) ||_1."""
    out = apply_channel(ch, rho0)
    return trace_distance(
        partial_trace(out, dim_sys, dim_bath),
        partial_trace(rho0, dim_sys, dim_bath),
    )


def bath_block_decompose(d: np.ndarray, n_sys: int) -> BathBlockMap:
    """Expand d = sum_P P (x) E_P with E_P = tr_sys[(P^dag (x) I) d] / 2^n."""
    d = as_complex_matrix(d)
    dim_sys = 2 ** n_sys
    if d.shape[0] != d.shape[1] or d.shape[0] % dim_sys != 0:
        raise ValueError(f"matrix of shape {d.shape} is not a joint operator over {n_sys} system qubits")
    dim_bath = d.shape[0] // dim_sys
    d4 = d.reshape(dim_sys, dim_bath, dim_sys, dim_bath)
    entries = {}
    for labels in product(PAULI_LABELS, repeat=n_sys):
        p = PauliWord(labels)
        pm = pauli_matrix(p)
        entries[p] = np.einsum("mi,mbic->bc", pm.conj(), d4) / dim_sys
    return BathBlockMap(entries=entries, n_sys=n_sys)


def decoupling_residual(group: DecouplingGroup, h_sb: np.ndarray, n_sys: int) -> float:
    """Norm of the group-averaged coupling, (1/|G|) sum_g (g(x)I) H_SB (g(x)I)^dag."""
    h_sb = as_complex_matrix(h_sb)
    if group.n_qubits != n_sys:
        raise ValueError("group and system qubit counts differ")
    dim_sys = 2 ** n_sys
    if h_sb.shape[0] % dim_sys != 0:
        raise ValueError("coupling dimension is not a multiple of the system dimension")
    dim_bath = h_sb.shape[0] // dim_sys
    acc = np.zeros_like(h_sb)
    for g in group:
        gm = _embed_pulse(g, dim_bath)
        acc += gm @ h_sb @ gm.conj().T
    return operator_norm(acc / len(group))


def cdd_bound_rhs(j: float, beta: float, tau: float, k: int, total_t: float) -> tuple[float, float]:
    """Concatenation error bound for CDD_K.

    Returns (deterministic_bound, randomized_extra):
      deterministic_bound = T (2 beta)^K J 2^(K(K-1)+1) tau^K
                            + J^2 T [2 + T (2 beta + J)] tau
      randomized_extra    = J^2 T [2 + T (2 beta + J)] tau
    where the randomized protocol's bound is the measured ||D - U_0||^2
    plus randomized_extra.
    """
    if j < 0 or beta < 0 or tau < 0 or total_t < 0:
        raise ValueError("bound inputs must be nonnegative")
    if k < 1:
        raise ValueError("CDD order must be at least 1")
    extra = j * j * total_t * (2.0 + total_t * (2.0 * beta + j)) * tau
    deterministic = total_t * (2.0 * beta) ** k * j * 2.0 ** (k * (k - 1) + 1) * tau ** k + extra
    return deterministic, extra


def phase_aligned(m: np.ndarray) -> np.ndarray:
    """Divide out the phase of the largest-magnitude entry."""
    m = as_complex_matrix(m)
    idx = np.argmax(np.abs(m))
    pivot = m.flat[idx]
    if abs(pivot) == 0:
        return m.copy()
    return m / (pivot / abs(pivot))


def phase_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Max-entry distance between a and b after aligning global phases.

    Both matrices are referenced to the same pivot position (the largest
    entry of ``a``) so that equality up to a global phase maps to zero.
    """
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    idx = np.argmax(np.abs(a))
    pa, pb = a.flat[idx], b.flat[idx]
    if abs(pa) == 0 or abs(pb) == 0:
        return float(np.max(np.abs(a - b)))
    return float(np.max(np.abs(a / (pa / abs(pa)) - b / (pb / abs(pb)))))

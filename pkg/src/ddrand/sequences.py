"""Pulse sequences: the data model, the deterministic builders (Hahn, XY4,
XY8, CDD_K, UDD_K), and the first/last-pulse randomization transform.

A sequence is a list of free-evolution segments, each preceded by an
instantaneous Pauli pulse, plus one final pulse. Frame-based builders
derive the physical pulses as frame transitions, so merged boundary
pulses (CDD) come out exactly, phases included.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import PauliWord, pauli_mul

MAX_CDD_ORDER = 6


@dataclass(frozen=True)
class Segment:
    """One free-evolution interval with the pulse applied at its start."""

    pulse: PauliWord
    duration: float

    def __post_init__(self):
        if not self.duration > 0:
            raise ValueError(f"segment duration must be positive, got {self.duration}")


@dataclass(frozen=True)
class PulseSequence:
    segments: tuple[Segment, ...]
    final_pulse: PauliWord

    def __post_init__(self):
        if not self.segments:
            raise ValueError("a sequence needs at least one segment")
        n = self.final_pulse.n_qubits
        if any(s.pulse.n_qubits != n for s in self.segments):
            raise ValueError("all pulses must act on the same qubit count")

    @property
    def n_qubits(self) -> int:
        return self.final_pulse.n_qubits

    @property
    def durations(self) -> tuple[float, ...]:
        return tuple(s.duration for s in self.segments)

    @property
    def total_time(self) -> float:
        return math.fsum(self.durations)

    @property
    def pulse_count(self) -> int:
        """Number of physically applied (non-identity) pulses."""
        count = sum(1 for s in self.segments if not s.pulse.is_identity())
        if not self.final_pulse.is_identity():
            count += 1
        return count


@dataclass(frozen=True)
class DecouplingGroup:
    """A set of Pauli words containing the identity and closed under
    multiplication up to phase."""

    elements: tuple[PauliWord, ...]

    def __post_init__(self):
        if not self.elements:
            raise ValueError("a group needs at least one element")
        n = self.elements[0].n_qubits
        if any(e.n_qubits != n for e in self.elements):
            raise ValueError("group elements must share a qubit count")
        labels = {e.labels for e in self.elements}
        if len(labels) != len(self.elements):
            raise ValueError("group elements must be distinct up to phase")
        if ("I",) * n not in labels:
            raise ValueError("group must contain the identity")
        for a in self.elements:
            for b in self.elements:
                if pauli_mul(a, b).labels not in labels:
                    raise ValueError(f"group not closed: {a} * {b} escapes")

    @property
    def n_qubits(self) -> int:
        return self.elements[0].n_qubits

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def xy4_group(n: int) -> DecouplingGroup:
    """G = {I, X, Y, Z} applied to every qubit in parallel."""
    return DecouplingGroup(tuple(PauliWord.uniform(l, n) for l in ("I", "X", "Y", "Z")))


def global_x_group(n: int) -> DecouplingGroup:
    """G = {I, X^(x)n}, the Hahn-echo group."""
    return DecouplingGroup((PauliWord.identity(n), PauliWord.uniform("X", n)))


def from_frames(frames: list[PauliWord], durations) -> PulseSequence:
    """Sequence whose compiled action is prod_l f_l^dag exp(-iH d_l) f_l.

    The physical pulses are the frame transitions: segment 0 carries f_0,
    segment l carries f_l * f_{l-1}^dag, and the final pulse is
    f_{L-1}^dag, all composed exactly by pauli_mul.
    """
    if len(frames) != len(durations):
        raise ValueError("need one duration per frame")
    pulses = [frames[0]]
    for prev, cur in zip(frames, frames[1:]):
        pulses.append(pauli_mul(cur, prev.dagger()))
    segments = tuple(Segment(p, float(d)) for p, d in zip(pulses, durations))
    return PulseSequence(segments, frames[-1].dagger())


def seq_hahn(n: int, tau: float) -> PulseSequence:
    """Hahn echo: X pulses at t = 0 and t = tau, total time 2 tau."""
    if not tau > 0:
        raise ValueError("tau must be positive")
    x = PauliWord.uniform("X", n)
    return PulseSequence((Segment(x, tau), Segment(x, tau)), PauliWord.identity(n))


def seq_hahn_reversed(n: int, tau: float) -> PulseSequence:
    """Hahn echo with both pulses shifted late: pulses at t = tau and 2 tau."""
    if not tau > 0:
        raise ValueError("tau must be positive")
    x = PauliWord.uniform("X", n)
    return PulseSequence(
        (Segment(PauliWord.identity(n), tau), Segment(x, tau)), x
    )


_XY4_FRAME_LABELS = ("I", "X", "Y", "Z")


def _xy4_frames(n: int) -> list[PauliWord]:
    return [PauliWord.uniform(l, n) for l in _XY4_FRAME_LABELS]


def seq_xy4(n: int, tau: float) -> PulseSequence:
    """Universal decoupling: the four frames (I, X, Y, Z) on every qubit."""
    if not tau > 0:
        raise ValueError("tau must be positive")
    return from_frames(_xy4_frames(n), [tau] * 4)


def seq_xy8(n: int, tau: float) -> PulseSequence:
    """Symmetrized XY4: the four frames followed by their time-reverse."""
    if not tau > 0:
        raise ValueError("tau must be positive")
    frames = _xy4_frames(n)
    return from_frames(frames + frames[::-1], [tau] * 8)


def _cdd_frames(n: int, k: int) -> list[PauliWord]:
    # frame for block (outer a, inner b) is f_b^{K-1} * f_a^{XY4}, so the
    # inner conjugation nests inside the outer one
    if k == 1:
        return _xy4_frames(n)
    inner = _cdd_frames(n, k - 1)
    return [pauli_mul(b, a) for a in _xy4_frames(n) for b in inner]


def seq_cdd(n: int, k: int, tau: float) -> PulseSequence:
    """Concatenated DD: XY4 with each interval replaced by CDD_{K-1}.

    Boundary pulses merge through the frame representation, leaving exactly
    4^K segments of duration tau.
    """
    if k < 1:
        raise ValueError("CDD order must be at least 1")
    if k > MAX_CDD_ORDER:
        raise ValueError(f"CDD order {k} exceeds the segment-count guard (K <= {MAX_CDD_ORDER})")
    if not tau > 0:
        raise ValueError("tau must be positive")
    frames = _cdd_frames(n, k)
    return from_frames(frames, [tau] * len(frames))


def udd_pulse_times(k: int, total_t: float) -> list[float]:
    """Uhrig pulse times t_j = T sin^2(j pi / (2K + 2)), j = 1..K."""
    if k < 1:
        raise ValueError("UDD order must be at least 1")
    if not total_t > 0:
        raise ValueError("total_t must be positive")
    return [total_t * math.sin(j * math.pi / (2 * k + 2)) ** 2 for j in range(1, k + 1)]


def seq_udd(k: int, total_t: float) -> PulseSequence:
    """Single-qubit Uhrig sequence: K X-pulses at the Uhrig times.

    Odd orders leave a net X frame after the interior pulses, so they end
    with a compensating X at t = T; without it the sequence maps the
    system to X rho X instead of rho and no decoupling order is visible.
    """
    times = udd_pulse_times(k, total_t)
    boundaries = [0.0] + times + [total_t]
    x = PauliWord.from_label("X")
    segments = [Segment(PauliWord.identity(1), boundaries[1] - boundaries[0])]
    for j in range(1, k + 1):
        segments.append(Segment(x, boundaries[j + 1] - boundaries[j]))
    final = x if k % 2 else PauliWord.identity(1)
    return PulseSequence(tuple(segments), final)


def randomize(seq: PulseSequence, group: DecouplingGroup) -> list[tuple[float, PulseSequence]]:
    """The |G| equally weighted branch sequences of the randomized protocol.

    The branch for g applies the original sequence conjugated by g, which
    only requires right-multiplying the first pulse by g^dag and
    left-multiplying the final pulse by g; every interior pulse and all
    timings are untouched, so each branch adds at most two pulses.
    """
    if group.n_qubits != seq.n_qubits:
        raise ValueError("group and sequence qubit counts differ")
    weight = 1.0 / len(group)
    branches = []
    for g in group:
        first = seq.segments[0]
        segments = (Segment(pauli_mul(first.pulse, g.dagger()), first.duration),) + seq.segments[1:]
        branches.append((weight, PulseSequence(segments, pauli_mul(g, seq.final_pulse))))
    return branches


def sample_branch(branches: list[tuple[float, PulseSequence]], rng: np.random.Generator) -> PulseSequence:
    """Draw one branch according to the branch weights."""
    weights = np.array([w for w, _ in branches])
    idx = rng.choice(len(branches), p=weights / weights.sum())
    return branches[idx][1]

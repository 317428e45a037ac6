"""Dense complex linear algebra used throughout the simulator.

Matrices are plain ``numpy.ndarray`` objects with dtype complex128. All
generators handled here are Hermitian, so matrix exponentials are computed
by eigendecomposition, which keeps the results unitary to roundoff.
"""

from __future__ import annotations

import numpy as np

# Shared tolerances: structural checks (Hermiticity, unitarity, PSD) use
# ATOL_STRUCT, trace bookkeeping uses the tighter ATOL_TRACE.
ATOL_STRUCT = 1e-10
ATOL_TRACE = 1e-12


class NumericalContractError(RuntimeError):
    """A matrix failed a numerical contract (Hermiticity, unitarity, PSD...)."""


def as_complex_matrix(a) -> np.ndarray:
    """Coerce to a 2-D complex128 array, rejecting non-finite entries."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise NumericalContractError("matrix contains NaN or Inf entries")
    return m


def hermiticity_defect(a: np.ndarray) -> float:
    """Max-entry deviation from Hermiticity, ``max |a - a^dag|``."""
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def check_hermitian(a: np.ndarray, atol: float = ATOL_STRUCT) -> np.ndarray:
    a = as_complex_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    defect = hermiticity_defect(a)
    if defect > atol:
        raise NumericalContractError(
            f"matrix is not Hermitian: max |a - a^dag| = {defect:.3e} > {atol:.1e}"
        )
    return a


def unitarity_defect(u: np.ndarray) -> float:
    """Max-entry deviation of ``u u^dag`` from the identity."""
    d = u.shape[0]
    return float(np.max(np.abs(u @ u.conj().T - np.eye(d))))


def check_unitary(u: np.ndarray, atol: float = ATOL_STRUCT) -> np.ndarray:
    u = as_complex_matrix(u)
    defect = unitarity_defect(u)
    if defect > atol:
        raise NumericalContractError(
            f"matrix is not unitary: max |u u^dag - I| = {defect:.3e} > {atol:.1e}"
        )
    return u


def kron(a, b) -> np.ndarray:
    """Kronecker product with the standard (row-major block) convention."""
    return np.kron(as_complex_matrix(a), as_complex_matrix(b))


def expm_hermitian(h, t: float) -> np.ndarray:
    """exp(-i h t) for Hermitian ``h``, via eigendecomposition.

    Diagonalizing the generator and exponentiating its (real) eigenvalues is
    exact for the matrix sizes used here and keeps the result unitary to
    roundoff, unlike scaling-and-squaring.
    """
    h = check_hermitian(h)
    w, v = np.linalg.eigh(h)
    u = (v * np.exp(-1j * w * t)) @ v.conj().T
    defect = unitarity_defect(u)
    if defect > ATOL_STRUCT:
        raise NumericalContractError(f"exponential lost unitarity: {defect:.3e}")
    return u


def partial_trace(rho, dim_sys: int, dim_bath: int, keep_sys: bool = True) -> np.ndarray:
    """Reduced state of one tensor factor of a bipartite density matrix.

    ``rho`` lives on a (dim_sys * dim_bath)-dimensional space with the system
    as the first factor; the kept factor's reduced state is returned.
    """
    rho = as_complex_matrix(rho)
    d = dim_sys * dim_bath
    if rho.shape != (d, d):
        raise ValueError(f"expected a {d}x{d} matrix, got shape {rho.shape}")
    _check_density(rho)
    r = rho.reshape(dim_sys, dim_bath, dim_sys, dim_bath)
    if keep_sys:
        return np.trace(r, axis1=1, axis2=3)
    return np.trace(r, axis1=0, axis2=2)


def trace_distance(rho, sigma) -> float:
    """Trace distance (1/2)||rho - sigma||_1 between two density matrices.

    The difference of two density matrices is Hermitian, so the trace norm
    is the sum of absolute eigenvalues.
    """
    rho = as_complex_matrix(rho)
    sigma = as_complex_matrix(sigma)
    if rho.shape != sigma.shape:
        raise ValueError(f"shape mismatch: {rho.shape} vs {sigma.shape}")
    for m in (rho, sigma):
        if hermiticity_defect(m) > ATOL_STRUCT:
            raise NumericalContractError("trace_distance input is not Hermitian")
        if abs(np.trace(m).real - 1.0) > 1e-9:
            raise NumericalContractError("trace_distance input does not have trace 1")
    eigs = np.linalg.eigvalsh(rho - sigma)
    td = 0.5 * float(np.sum(np.abs(eigs)))
    # roundoff can overshoot the [0, 1] range by ~1e-15
    return min(max(td, 0.0), 1.0)


def operator_norm(a) -> float:
    """Largest singular value (spectral norm)."""
    a = as_complex_matrix(a)
    return float(np.linalg.norm(a, ord=2))


def _check_density(rho: np.ndarray, atol: float = ATOL_STRUCT) -> None:
    if hermiticity_defect(rho) > atol:
        raise NumericalContractError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > 1e-9:
        raise NumericalContractError("density matrix does not have trace 1")
    w = np.linalg.eigvalsh(rho)
    if w.min() < -atol:
        raise NumericalContractError(f"density matrix has eigenvalue {w.min():.3e} < -{atol:.1e}")

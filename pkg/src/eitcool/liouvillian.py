"""Dense Lindblad superoperator, exact steady states, and an RK4 oracle.

The vectorization convention is column-stacking throughout: vec(A X B) =
kron(B^T, A) vec(X).  Steady states are found by replacing one redundant row
of the generator with the vectorized trace functional and solving the
resulting linear system; uniqueness is established separately by counting
near-zero singular values of the unmodified generator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import hilbert
from .errors import (
    ConfigurationError,
    DegenerateSteadyStateError,
    NumericalFailureError,
)

DEGENERACY_TOL = 1e-10  # relative threshold separating exact nullspace degeneracy


def vectorize(rho: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization of a square matrix."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ConfigurationError(f"expected a square matrix, got shape {rho.shape}")
    return rho.reshape(-1, order="F")


def devectorize(vec: np.ndarray) -> np.ndarray:
    vec = np.asarray(vec)
    d = math_isqrt(vec.size)
    return vec.reshape((d, d), order="F")


def math_isqrt(n: int) -> int:
    d = int(round(n**0.5))
    if d * d != n:
        raise ConfigurationError(f"vector of length {n} is not a vectorized square matrix")
    return d


@dataclass(frozen=True)
class Superoperator:
    """Generator of the dissipative dynamics in column-stacked form."""

    matrix: np.ndarray
    hilbert_dim: int

    @property
    def dim(self) -> int:
        return self.hilbert_dim**2

    def apply(self, rho: np.ndarray) -> np.ndarray:
        return devectorize(self.matrix @ vectorize(rho))


def build_liouvillian(
    hamiltonian: np.ndarray, jumps: list[tuple[float, np.ndarray]]
) -> Superoperator:
    """Assemble -i[H, .] plus the jump dissipators as one dense matrix.

    Each (rate, L) entry contributes rate/2 * (2 L . L^dag - {., L^dag L}).
    """
    h = np.asarray(hamiltonian, dtype=complex)
    d = h.shape[0]
    if h.shape != (d, d):
        raise ConfigurationError(f"Hamiltonian must be square, got {h.shape}")
    herm_defect = np.abs(h - h.conj().T).max()
    scale = max(np.abs(h).max(), 1.0)
    if herm_defect > 1e-10 * scale:
        raise ConfigurationError(
            f"Hamiltonian is not Hermitian (defect {herm_defect:.3e})"
        )
    eye = np.eye(d, dtype=complex)
    lmat = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
    for rate, op in jumps:
        if rate < 0:
            raise ConfigurationError(f"jump rate must be non-negative, got {rate}")
        op = np.asarray(op, dtype=complex)
        if op.shape != (d, d):
            raise ConfigurationError(
                f"jump operator shape {op.shape} does not match dimension {d}"
            )
        opdop = op.conj().T @ op
        lmat += 0.5 * rate * (
            2.0 * np.kron(op.conj(), op)
            - np.kron(opdop.T, eye)
            - np.kron(eye, opdop)
        )
    return Superoperator(matrix=lmat, hilbert_dim=d)


@dataclass(frozen=True)
class SteadyState:
    """Steady density matrix together with its solve diagnostics."""

    rho: np.ndarray
    trace_defect: float
    herm_defect: float
    min_eigenvalue: float
    nullspace_dim: int
    residual: float


def nullspace_dimension(lv: Superoperator, tol: float = DEGENERACY_TOL) -> int:
    """Number of singular values of the generator below tol * ||L||_2."""
    svals = np.linalg.svd(lv.matrix, compute_uv=False)
    return int(np.count_nonzero(svals < tol * svals[0]))


def steady_state(lv: Superoperator, degeneracy_tol: float = DEGENERACY_TOL) -> SteadyState:
    """Unique trace-one stationary state of the generator.

    Raises DegenerateSteadyStateError when the nullspace dimension exceeds
    one (for example when the dark state decouples and every phonon sector
    is separately stationary), and NumericalFailureError when the
    trace-constrained solve is singular.
    """
    d = lv.hilbert_dim
    ndim = nullspace_dimension(lv, degeneracy_tol)
    if ndim > 1:
        raise DegenerateSteadyStateError(
            f"stationary subspace has dimension {ndim}; no unique steady state"
        )
    mat = lv.matrix.copy()
    rhs = np.zeros(d * d, dtype=complex)
    # Row 0 is the equation for d/dt rho[0, 0]; the diagonal rows are linearly
    # dependent through trace preservation, so it is safe to overwrite.
    mat[0, :] = 0.0
    mat[0, (d + 1) * np.arange(d)] = 1.0
    rhs[0] = 1.0
    try:
        vec = np.linalg.solve(mat, rhs)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(f"steady-state solve failed: {exc}") from exc
    rho = devectorize(vec)
    trace_defect = abs(rho.trace() - 1.0)
    herm_defect = float(np.abs(rho - rho.conj().T).max())
    rho_h = 0.5 * (rho + rho.conj().T)
    min_eig = float(np.linalg.eigvalsh(rho_h).min())
    residual = float(np.linalg.norm(lv.matrix @ vec))
    return SteadyState(
        rho=rho,
        trace_defect=float(trace_defect),
        herm_defect=herm_defect,
        min_eigenvalue=min_eig,
        nullspace_dim=ndim,
        residual=residual,
    )


def phonon_occupation(state: SteadyState | np.ndarray) -> float:
    """Mean phonon number tr(rho (1 x a^dag a)) of a composite-space state."""
    rho = state.rho if isinstance(state, SteadyState) else np.asarray(state)
    d = rho.shape[0]
    if d % hilbert.N_INTERNAL != 0:
        raise ConfigurationError(
            f"state of dimension {d} does not live on the composite space"
        )
    n_max = d // hilbert.N_INTERNAL - 1
    num = hilbert.embed(hilbert.identity_internal(), hilbert.number_operator(n_max))
    val = np.trace(rho @ num)
    if abs(val.imag) > 1e-10:
        raise NumericalFailureError(
            f"phonon occupation has imaginary part {val.imag:.3e}"
        )
    return float(val.real)


def norm_bound(lv: Superoperator) -> float:
    """Cheap upper bound on the spectral norm, sqrt(||L||_1 ||L||_inf)."""
    absmat = np.abs(lv.matrix)
    return float(np.sqrt(absmat.sum(axis=0).max() * absmat.sum(axis=1).max()))


def time_evolve(
    lv: Superoperator, rho0: np.ndarray, t_final: float, dt: float
) -> np.ndarray:
    """Propagate a density matrix with fixed-step classical RK4.

    Enforces dt * ||L|| < 1 as a stability precondition and checks that the
    trace is preserved to 1e-8 over the run.
    """
    if dt <= 0 or t_final < 0:
        raise ConfigurationError("time step and final time must be positive")
    bound = norm_bound(lv)
    if dt * bound >= 1.0:
        raise ConfigurationError(
            f"dt * ||L|| = {dt * bound:.3f} >= 1 violates the RK4 stability margin"
        )
    lmat = lv.matrix
    vec = vectorize(np.asarray(rho0, dtype=complex)).copy()
    trace_idx = (lv.hilbert_dim + 1) * np.arange(lv.hilbert_dim)
    trace0 = vec[trace_idx].sum()
    steps, remainder = divmod(t_final, dt)
    for step_dt in [dt] * int(steps) + ([remainder] if remainder > 1e-15 else []):
        k1 = lmat @ vec
        k2 = lmat @ (vec + 0.5 * step_dt * k1)
        k3 = lmat @ (vec + 0.5 * step_dt * k2)
        k4 = lmat @ (vec + step_dt * k3)
        vec = vec + (step_dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    drift = abs(vec[trace_idx].sum() - trace0)
    if drift > 1e-8:
        raise NumericalFailureError(f"trace drifted by {drift:.3e} during propagation")
    return devectorize(vec)

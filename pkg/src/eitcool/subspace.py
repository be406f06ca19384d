"""Projected seven-level model of the cooling cycle, solved without
further approximation.

The model keeps the dark/bright/excited levels with zero or one phonon plus
the two-phonon dark state, i.e. every state reachable from the cold dark
state by at most one blue-sideband transition.  Stationarity is imposed by
requiring tr(O G(rho)) = 0 for all 49 Hermitian observables
{|j><j|, |j><k| + |k><j|, i|j><k| - i|k><j|} on that subspace, and the
resulting 49 x 49 real linear system is solved numerically.  This serves as
an independent oracle for both the closed forms and the full-space solver.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSteadyStateError, NumericalFailureError
from .physics import DerivedEit

#: Basis order of the projected space: (level, phonon) pairs.
BASIS_7 = (
    ("d", 0),
    ("b", 0),
    ("e", 0),
    ("d", 1),
    ("b", 1),
    ("e", 1),
    ("d", 2),
)

_IDX = {state: k for k, state in enumerate(BASIS_7)}
_D0, _B0, _E0, _D1, _B1, _E1, _D2 = range(7)


def _op(i: int, j: int) -> np.ndarray:
    out = np.zeros((7, 7), dtype=complex)
    out[i, j] = 1.0
    return out


@dataclass(frozen=True)
class ProjectedSystem:
    """Hamiltonian and dissipation channels restricted to the seven levels."""

    basis: tuple[tuple[str, int], ...]
    hs: np.ndarray
    jumps: tuple[tuple[float, np.ndarray], ...]
    eta: float


def build_projected(d: DerivedEit, nu: float, delta: float) -> ProjectedSystem:
    """Assemble the seven-level Hamiltonian and its four decay channels.

    The excited levels decay only within their own phonon sector; the
    phonon-changing decay channels enter the populations at fourth order in
    the Lamb-Dicke parameter and are excluded from this model.
    """
    hs = np.zeros((7, 7), dtype=complex)
    hs[_E0, _E0] = -delta
    hs[_D1, _D1] = nu
    hs[_B1, _B1] = nu
    hs[_E1, _E1] = -(delta - nu)
    hs[_D2, _D2] = 2.0 * nu

    half_b = 0.5 * d.omega_b
    hs += half_b * (_op(_B0, _E0) + _op(_E0, _B0))
    hs += half_b * (_op(_B1, _E1) + _op(_E1, _B1))

    half_sb = 0.5 * d.eta * d.omega_d
    for upper, lower in ((_E1, _D0), (_E0, _D1), (_E1, _D2)):
        hs += 1j * half_sb * (_op(upper, lower) - _op(lower, upper))

    jumps = (
        (d.gamma_d, _op(_D0, _E0)),
        (d.gamma_d, _op(_D1, _E1)),
        (d.gamma_b, _op(_B0, _E0)),
        (d.gamma_b, _op(_B1, _E1)),
    )
    return ProjectedSystem(basis=BASIS_7, hs=hs, jumps=jumps, eta=d.eta)


def observables() -> list[np.ndarray]:
    """The 49 Hermitian observables, projectors first, then the symmetric
    and antisymmetric pair operators in lexicographic pair order."""
    obs = [_op(j, j) for j in range(7)]
    for j in range(7):
        for k in range(j + 1, 7):
            obs.append(_op(j, k) + _op(k, j))
    for j in range(7):
        for k in range(j + 1, 7):
            obs.append(1j * _op(j, k) - 1j * _op(k, j))
    return obs


def generator_action(sys: ProjectedSystem, rho: np.ndarray) -> np.ndarray:
    """Apply -i[H, rho] plus the four decay channels."""
    out = -1j * (sys.hs @ rho - rho @ sys.hs)
    for rate, op in sys.jumps:
        opd = op.conj().T
        opdop = opd @ op
        out += 0.5 * rate * (2.0 * op @ rho @ opd - opdop @ rho - rho @ opdop)
    return out


def stationarity_system(sys: ProjectedSystem) -> np.ndarray:
    """The 49 x 49 real matrix of tr(O_i G(B_m)) over the observable basis.

    The same 49 operators serve as observables and as the expansion basis of
    the density matrix, so the coefficient vector is real and the matrix has
    exactly one redundant row (trace preservation) at generic parameters.
    """
    basis = observables()
    mat = np.empty((49, 49), dtype=float)
    for m, b in enumerate(basis):
        image = generator_action(sys, b)
        for i, ob in enumerate(basis):
            mat[i, m] = np.trace(ob @ image).real
    return mat


def solve_stationarity(
    sys: ProjectedSystem, degeneracy_tol: float = 1e-10
) -> np.ndarray:
    """Solve the stationarity equations with unit-trace normalization.

    Returns the 7 x 7 Hermitian density matrix.  Raises
    DegenerateSteadyStateError when more than one stationary state exists
    (e.g. at zero effective Lamb-Dicke parameter, where the dark ladder
    decouples).
    """
    mat = stationarity_system(sys)
    svals = np.linalg.svd(mat, compute_uv=False)
    n_null = int(np.count_nonzero(svals < degeneracy_tol * svals[0]))
    if n_null > 1:
        raise DegenerateSteadyStateError(
            f"projected stationary subspace has dimension {n_null}"
        )
    mod = mat.copy()
    rhs = np.zeros(49)
    mod[0, :] = 0.0
    mod[0, :7] = 1.0  # trace row: the first seven coefficients are populations
    rhs[0] = 1.0
    try:
        coeff = np.linalg.solve(mod, rhs)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(f"projected solve failed: {exc}") from exc
    rho = np.zeros((7, 7), dtype=complex)
    for c, b in zip(coeff, observables()):
        rho += c * b
    return rho


def nbar_projected(rho7: np.ndarray) -> float:
    """Phonon expectation of the projected state: d1 + b1 + e1 + 2 * d2."""
    rho7 = np.asarray(rho7)
    return float(
        (rho7[_D1, _D1] + rho7[_B1, _B1] + rho7[_E1, _E1] + 2.0 * rho7[_D2, _D2]).real
    )


def diagonals(rho7: np.ndarray) -> dict[str, float]:
    """Populations keyed by level-phonon label, e.g. 'd1'."""
    return {
        f"{level}{phonon}": float(rho7[k, k].real)
        for k, (level, phonon) in enumerate(BASIS_7)
    }


def coherence_x(rho7: np.ndarray, a: tuple[str, int], b: tuple[str, int]) -> float:
    """Symmetric pair expectation tr((|a><b| + |b><a|) rho)."""
    i, j = _IDX[a], _IDX[b]
    return float((rho7[j, i] + rho7[i, j]).real)


def coherence_y(rho7: np.ndarray, a: tuple[str, int], b: tuple[str, int]) -> float:
    """Antisymmetric pair expectation tr((i|a><b| - i|b><a|) rho)."""
    i, j = _IDX[a], _IDX[b]
    return float((1j * (rho7[j, i] - rho7[i, j])).real)

"""Spin-J operator matrices and the conjugate-spin uncertainty floor C_J.

Spin quantum numbers are carried around as the integer ``twice_j`` (so
J = twice_j/2 is exact and half-integers never touch floating point in any
interface).  All operators are dimensionless (hbar = 1): the spin-1/2
matrices are the Pauli matrices divided by two.

C_J is the minimum of Var(Jx) + Var(Jy) over pure spin-J states.  It is
strictly positive because Jx and Jy have no common eigenstate.  Values for
J <= 4 are tabulated; beyond that a multi-start simplex minimisation over
normalised state vectors supplies a best-found bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize


@dataclass(frozen=True)
class SpinQuantum:
    """A spin quantum number J stored exactly as twice_j = 2J."""

    twice_j: int

    def __post_init__(self):
        if not isinstance(self.twice_j, (int, np.integer)) or isinstance(self.twice_j, bool):
            raise TypeError(f"twice_j must be an integer, got {self.twice_j!r}")
        if self.twice_j < 1:
            raise ValueError("twice_j must be >= 1; spin 0 has no conjugate spin pair")

    @property
    def dim(self) -> int:
        """Local Hilbert-space dimension d = 2J + 1."""
        return self.twice_j + 1

    @property
    def j(self) -> float:
        """J as a float, for arithmetic only (exact: halves are representable)."""
        return self.twice_j / 2

    def m_values(self) -> np.ndarray:
        """Magnetic quantum numbers m = -J..+J, ascending."""
        return (2 * np.arange(self.dim) - self.twice_j) / 2

    def label(self) -> str:
        """Human-readable J, e.g. '1/2' or '3'."""
        if self.twice_j % 2:
            return f"{self.twice_j}/2"
        return str(self.twice_j // 2)


@dataclass(frozen=True, eq=False)
class SpinMatrices:
    """Dense complex d x d representations of Jx, Jy, Jz, J+, J-."""

    j: SpinQuantum
    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray
    jplus: np.ndarray
    jminus: np.ndarray


def build_spin_matrices(j: SpinQuantum) -> SpinMatrices:
    """Construct the spin-J matrices in the |J,m> basis ordered m = -J..+J.

    jz is diagonal with entries m, and the lowering operator has
    <m-1|J-|m> = sqrt((J+m)(J-m+1)).  jx = (J+ + J-)/2, jy = (J+ - J-)/2i.
    """
    d = j.dim
    jv = j.j
    m = j.m_values()
    jz = np.diag(m).astype(complex)
    jminus = np.zeros((d, d), dtype=complex)
    for k in range(1, d):
        jminus[k - 1, k] = math.sqrt((jv + m[k]) * (jv - m[k] + 1))
    jplus = jminus.conj().T
    jx = (jplus + jminus) / 2
    jy = (jplus - jminus) / 2j
    for arr in (jx, jy, jz, jplus, jminus):
        arr.setflags(write=False)
    return SpinMatrices(j=j, jx=jx, jy=jy, jz=jz, jplus=jplus, jminus=jminus)


class BoundSource(Enum):
    TABULATED = "tabulated"
    COMPUTED = "computed"


@dataclass(frozen=True)
class UncertaintyBound:
    """Lower bound c_j of Var(Jx) + Var(Jy) for spin j."""

    j: SpinQuantum
    c_j: float
    source: BoundSource


# Known C_J values, keyed by twice_j.  1/4 and 7/16 are exact; the rest are
# quoted to the available precision.
_CJ_TABLE = {
    1: 1 / 4,
    2: 7 / 16,
    3: 0.6009,
    4: 0.7496,
    5: 0.8877,
    6: 1.0178,
    7: 1.1416,
    8: 1.26,
}

MAX_TABULATED_TWICE_J = max(_CJ_TABLE)


class ConvergenceError(RuntimeError):
    """Raised when no minimisation restart converged; carries the best value."""

    def __init__(self, message: str, best_value: float):
        super().__init__(message)
        self.best_value = best_value


@lru_cache(maxsize=None)
def cj_bound(j: SpinQuantum) -> UncertaintyBound:
    """Return C_J: tabulated for J <= 4, otherwise computed (best-found)."""
    if j.twice_j in _CJ_TABLE:
        return UncertaintyBound(j=j, c_j=_CJ_TABLE[j.twice_j], source=BoundSource.TABULATED)
    return compute_cj(j)


def _variance_sum_objective(mats: SpinMatrices):
    """Objective x -> Var(Jx) + Var(Jy) for psi = x[:d] + i x[d:], normalised."""
    jx, jy = mats.jx, mats.jy
    d = mats.j.dim

    def objective(x: np.ndarray) -> float:
        psi = x[:d] + 1j * x[d:]
        nrm = np.linalg.norm(psi)
        if nrm < 1e-12:
            return float(d * d)  # off-simplex penalty, far above any variance
        psi = psi / nrm
        jx_psi = jx @ psi
        jy_psi = jy @ psi
        ex = np.vdot(psi, jx_psi).real
        ey = np.vdot(psi, jy_psi).real
        ex2 = np.vdot(jx_psi, jx_psi).real
        ey2 = np.vdot(jy_psi, jy_psi).real
        return ex2 + ey2 - ex * ex - ey * ey

    return objective


def _local_min(objective, x0: np.ndarray, tol: float):
    # Simplex descent stalls on its shrunken simplex in higher dimensions;
    # re-seeding from the endpoint is the usual cure, so polish a few rounds.
    x, value, ok = x0, math.inf, False
    for _ in range(3):
        res = minimize(
            objective,
            x,
            method="Nelder-Mead",
            options={"fatol": tol, "xatol": 1e-6, "adaptive": True},
        )
        x, value, ok = res.x, float(res.fun), bool(res.success)
        if ok:
            break
    return value, ok


@lru_cache(maxsize=None)
def compute_cj(j: SpinQuantum, restarts: int = 50, tol: float = 1e-9, seed: int = 0) -> UncertaintyBound:
    """Minimise Var(Jx) + Var(Jy) over normalised complex d-vectors.

    Multi-start Nelder-Mead over 2d real parameters (real and imaginary
    parts); the state is renormalised inside the objective so the search is
    unconstrained.  The result is an upper bound on the true C_J; it
    reproduces the tabulated values to better than 1e-3 for J <= 4.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    mats = build_spin_matrices(j)
    objective = _variance_sum_objective(mats)
    best = math.inf
    any_converged = False
    for i in range(restarts):
        rng = np.random.default_rng((seed, j.twice_j, i))
        x0 = rng.uniform(-1.0, 1.0, size=2 * j.dim)
        value, ok = _local_min(objective, x0, tol)
        any_converged = any_converged or ok
        if value < best:
            best = value
    if not any_converged or not math.isfinite(best):
        raise ConvergenceError(
            f"C_J minimisation failed to converge for twice_j={j.twice_j} "
            f"after {restarts} restarts (best value {best})",
            best_value=best,
        )
    return UncertaintyBound(j=j, c_j=best, source=BoundSource.COMPUTED)

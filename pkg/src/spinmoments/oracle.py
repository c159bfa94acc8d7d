"""Brute-force moment evaluation on dense d^N vectors.

Site operators are applied one tensor axis at a time (mode-k contraction),
so memory stays at O(d^N) instead of the O(d^2N) a Kronecker-product
matrix would need.  This is the ground truth the closed forms are tested
against; it knows nothing about the states' structure.

The ``scale`` keyword multiplies the five spin matrices by a constant
(ladder operators by scale, quadratic products by scale^2, with C_J
rescaled accordingly).  scale = 2 turns spin-1/2 operators into Pauli
matrices; L and R pick up scale^(2N) while B is unchanged, which is the
unit-convention equivalence the tests pin down.
"""

from __future__ import annotations

import math
from enum import Enum
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import kinds
from .spin_algebra import SpinQuantum, build_spin_matrices, cj_bound
from .states import SymmetricCorrelatedState, dense_vector

IMAG_TOL = 1e-10
NORM_TOL = 1e-10


class SiteOp(Enum):
    PLUS = "plus"                 # J+
    MINUS = "minus"               # J-
    X2_PLUS_Y2 = "xx+yy"          # Jx^2 + Jy^2
    PLUS_MINUS = "+-"             # J+ J-
    MINUS_PLUS = "-+"             # J- J+
    CJ_SHIFTED = "xx+yy-cj"       # Jx^2 + Jy^2 - C_J * I
    IDENTITY = "identity"


_HERMITIAN = {SiteOp.X2_PLUS_Y2, SiteOp.PLUS_MINUS, SiteOp.MINUS_PLUS, SiteOp.CJ_SHIFTED, SiteOp.IDENTITY}


@lru_cache(maxsize=None)
def _site_matrices(j: SpinQuantum, c_j: float, scale: float) -> dict[SiteOp, np.ndarray]:
    mats = build_spin_matrices(j)
    xx_yy = mats.jx @ mats.jx + mats.jy @ mats.jy
    table = {
        SiteOp.PLUS: scale * mats.jplus,
        SiteOp.MINUS: scale * mats.jminus,
        SiteOp.X2_PLUS_Y2: scale**2 * xx_yy,
        SiteOp.PLUS_MINUS: scale**2 * (mats.jplus @ mats.jminus),
        SiteOp.MINUS_PLUS: scale**2 * (mats.jminus @ mats.jplus),
        SiteOp.CJ_SHIFTED: scale**2 * (xx_yy - c_j * np.eye(j.dim)),
        SiteOp.IDENTITY: np.eye(j.dim, dtype=complex),
    }
    for arr in table.values():
        arr.setflags(write=False)
    return table


def site_operator(
    op: SiteOp, j: SpinQuantum, *, c_j: float | None = None, scale: float = 1.0
) -> np.ndarray:
    """Dense matrix for one site-operator tag."""
    if c_j is None:
        c_j = cj_bound(j).c_j
    return _site_matrices(j, float(c_j), float(scale))[op]


def expect_product(
    state_vector: np.ndarray,
    ops: Sequence[SiteOp],
    j: SpinQuantum,
    *,
    c_j: float | None = None,
    scale: float = 1.0,
) -> complex:
    """<psi| O_1 (x) ... (x) O_N |psi> by per-axis contraction.

    The vector must have length d^N and unit norm.  When every tag is
    Hermitian the imaginary residue is required to stay below 1e-10; a
    larger one means the contraction itself went wrong and raises.
    """
    vec = np.asarray(state_vector, dtype=complex).ravel()
    d = j.dim
    n = len(ops)
    if d**n != vec.size:
        raise ValueError(f"vector has {vec.size} amplitudes, expected d^N = {d}^{n} = {d**n}")
    nrm = np.linalg.norm(vec)
    if abs(nrm - 1.0) > NORM_TOL:
        raise ValueError(f"state vector must be normalised (|norm - 1| = {abs(nrm - 1.0):.3e})")

    psi = vec.reshape((d,) * n)
    phi = psi
    for k, op in enumerate(ops):
        if op is SiteOp.IDENTITY:
            continue
        mat = site_operator(op, j, c_j=c_j, scale=scale)
        phi = np.moveaxis(np.tensordot(mat, phi, axes=(1, k)), 0, k)
    value = complex(np.vdot(psi, phi))
    if all(op in _HERMITIAN for op in ops) and abs(value.imag) > IMAG_TOL:
        raise ArithmeticError(
            f"Hermitian product returned imaginary part {value.imag:.3e} (> {IMAG_TOL})"
        )
    return value


def ladder_tags(signs: Sequence[int]) -> list[SiteOp]:
    return [SiteOp.PLUS if s > 0 else SiteOp.MINUS for s in signs]


def bound_tags(
    kind: kinds.CriterionKind, n_sites: int, l_signs: Sequence[int] | None = None
) -> list[SiteOp]:
    """Per-site tags of the bound moment R for a criterion kind.

    Quantum sites come first.  HZ-type bounds turn l-signs into J+J- / J-J+
    tags; the default l is plus on the first quantum site, minus elsewhere.
    """
    t = kinds.quantum_sites(kind, n_sites)
    free = [SiteOp.X2_PLUS_Y2] * (n_sites - t)
    if t == 0:
        return free
    if kinds.uses_cj_bound(kind):
        return [SiteOp.CJ_SHIFTED] * t + free
    if l_signs is None:
        l_signs = (1,) + (-1,) * (t - 1)
    if len(l_signs) != t:
        raise ValueError(f"l_signs must have length {t}, got {len(l_signs)}")
    quantum = [SiteOp.PLUS_MINUS if s > 0 else SiteOp.MINUS_PLUS for s in l_signs]
    return quantum + free


def lhs_moment(
    state: SymmetricCorrelatedState,
    signs: Sequence[int],
    *,
    cap: int | None = None,
    scale: float = 1.0,
) -> float:
    """L = |<prod_k J_k^{s_k}>|^2 for the given per-site ladder signs."""
    if len(signs) != state.n_sites:
        raise ValueError(f"signs must have length N = {state.n_sites}, got {len(signs)}")
    vec = dense_vector(state, cap=cap)
    value = expect_product(vec, ladder_tags(signs), state.j, scale=scale)
    return abs(value) ** 2


def rhs_moment(
    state: SymmetricCorrelatedState,
    kind: kinds.CriterionKind,
    *,
    l_signs: Sequence[int] | None = None,
    cap: int | None = None,
    c_j: float | None = None,
    scale: float = 1.0,
) -> float:
    """R for the criterion kind; real, non-negative by construction.

    Every factor operator is positive semidefinite, so a genuinely negative
    expectation can only mean an internal error and raises.
    """
    vec = dense_vector(state, cap=cap)
    tags = bound_tags(kind, state.n_sites, l_signs)
    value = expect_product(vec, tags, state.j, c_j=c_j, scale=scale).real
    if value < -IMAG_TOL:
        raise ArithmeticError(f"bound moment came out negative ({value:.3e})")
    return max(value, 0.0)


def b_from_moments(lhs: float, rhs: float) -> float:
    """sqrt(L/R) with the 0-denominator conventions shared with analytic."""
    if rhs == 0.0:
        return math.nan if lhs == 0.0 else math.inf
    return math.sqrt(lhs / rhs)

"""Uniform criterion evaluation: backend choice, sign choices, verdicts.

A criterion compares the ladder moment L against the bound moment R and is
violated exactly when L > R (all the underlying inequalities are
non-strict, so L = R is not a violation).  B = sqrt(L/R) > 1 is the
equivalent violation measure when defined; R = 0 < L reports B = +inf and
L = R = 0 reports B = nan (undefined, never a violation).

States sitting exactly on the boundary (the two-site GHZ Bell ratio is
exactly 1) land one rounding error to either side, so the verdict uses a
relative equality band of 1e-11: everything the criteria family certifies
clears it by orders of magnitude.

Two strategies:

* canonical  -- the fixed sign pattern used for every printed result:
                all-minus ladder signs, and for HZ bounds plus on the
                first quantum site, minus on the rest.
* exhaustive -- oracle-backed scan of all 2^N ladder patterns and, for HZ
                bounds, all 2^T l-patterns.  Since B is monotone in L and
                antitone in R the scan maximises the two independently;
                ties go to the pattern found first in plus-first
                lexicographic order, so results are run-to-run identical.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum

from . import analytic, kinds, oracle
from .states import SymmetricCorrelatedState, dense_vector

EXHAUSTIVE_MAX_SITES = 16
VERDICT_BAND = 1e-11


class ExhaustiveSearchError(ValueError):
    """Exhaustive sign search asked for beyond its site bound."""


def _violated_linear(lhs: float, rhs: float) -> bool:
    if rhs == 0.0:
        return lhs > 0.0
    return lhs > rhs * (1.0 + VERDICT_BAND)


def _violated_logs(log_l: float, log_r: float) -> bool:
    if log_r == -math.inf:
        return log_l > -math.inf
    return log_l > log_r + VERDICT_BAND


class Backend(Enum):
    ORACLE = "oracle"
    ANALYTIC = "analytic"


@dataclass(frozen=True)
class SignChoice:
    s: tuple[int, ...]  # ladder signs, length N
    l: tuple[int, ...]  # bound signs on quantum sites (HZ bounds only)

    @staticmethod
    def canonical(kind: kinds.CriterionKind, n_sites: int) -> "SignChoice":
        t = kinds.quantum_sites(kind, n_sites)
        l = ((1,) + (-1,) * (t - 1)) if (kinds.uses_hz_bound(kind) and t > 0) else ()
        return SignChoice(s=(-1,) * n_sites, l=l)

    def s_token(self) -> str:
        return "".join("+" if v > 0 else "-" for v in self.s)

    def l_token(self) -> str:
        return "".join("+" if v > 0 else "-" for v in self.l)


@dataclass(frozen=True)
class CriterionResult:
    kind: kinds.CriterionKind
    lhs: float
    rhs: float
    b: float  # nan means undefined (L = R = 0)
    violated: bool
    signs: SignChoice
    backend: Backend


def _result(kind, lhs, rhs, b, violated, signs, backend) -> CriterionResult:
    return CriterionResult(
        kind=kind, lhs=lhs, rhs=rhs, b=b, violated=violated, signs=signs, backend=backend
    )


def evaluate(
    state: SymmetricCorrelatedState,
    kind: kinds.CriterionKind,
    strategy: str = "canonical",
    *,
    backend: Backend | None = None,
    cap: int | None = None,
    c_j: float | None = None,
) -> CriterionResult:
    """Evaluate one criterion on one state.

    canonical defaults to the analytic backend (exact for every correlated
    state); pass backend=Backend.ORACLE to force the dense contraction.
    exhaustive always runs on the oracle and needs d^N within the cap and
    N <= 16.
    """
    kinds.quantum_sites(kind, state.n_sites)  # validates t_sites <= N
    if strategy == "canonical":
        signs = SignChoice.canonical(kind, state.n_sites)
        if backend is None:
            backend = Backend.ANALYTIC
        if backend is Backend.ANALYTIC:
            log_l, log_r = analytic.log_lhs_rhs(state, kind, c_j=c_j, l_signs=signs.l or None)
            b = analytic.b_from_logs(log_l, log_r)
            return _result(
                kind,
                analytic.exp_or_inf(log_l),
                analytic.exp_or_inf(log_r),
                b,
                _violated_logs(log_l, log_r),
                signs,
                backend,
            )
        lhs = oracle.lhs_moment(state, signs.s, cap=cap)
        rhs = oracle.rhs_moment(state, kind, l_signs=signs.l or None, cap=cap, c_j=c_j)
        return _result(
            kind, lhs, rhs, oracle.b_from_moments(lhs, rhs), _violated_linear(lhs, rhs), signs, backend
        )
    if strategy == "exhaustive":
        if backend is Backend.ANALYTIC:
            raise ValueError("exhaustive search runs on the oracle backend only")
        return _exhaustive(state, kind, cap=cap, c_j=c_j)
    raise ValueError(f"unknown strategy {strategy!r}; expected 'canonical' or 'exhaustive'")


def _exhaustive(state, kind, *, cap=None, c_j=None) -> CriterionResult:
    n = state.n_sites
    t = kinds.quantum_sites(kind, n)
    if n > EXHAUSTIVE_MAX_SITES:
        raise ExhaustiveSearchError(
            f"exhaustive sign search is capped at N <= {EXHAUSTIVE_MAX_SITES} sites, got N = {n}"
        )
    vec = dense_vector(state, cap=cap)

    best_s, best_lhs = None, -math.inf
    for s in itertools.product((1, -1), repeat=n):
        value = oracle.expect_product(vec, oracle.ladder_tags(s), state.j)
        lhs = abs(value) ** 2
        if lhs > best_lhs:
            best_s, best_lhs = s, lhs

    best_l, best_rhs = (), math.inf
    l_space = (
        itertools.product((1, -1), repeat=t) if (kinds.uses_hz_bound(kind) and t > 0) else [()]
    )
    for l in l_space:
        tags = oracle.bound_tags(kind, n, l or None)
        rhs = oracle.expect_product(vec, tags, state.j, c_j=c_j).real
        rhs = max(rhs, 0.0)
        if rhs < best_rhs:
            best_l, best_rhs = l, rhs

    signs = SignChoice(s=best_s, l=tuple(best_l))
    b = oracle.b_from_moments(best_lhs, best_rhs)
    return _result(
        kind, best_lhs, best_rhs, b, _violated_linear(best_lhs, best_rhs), signs, Backend.ORACLE
    )


def nested_verdicts(
    state: SymmetricCorrelatedState,
    t_max: int,
    *,
    bound: str = "cj",
    backend: Backend | None = None,
    cap: int | None = None,
    c_j: float | None = None,
) -> list[CriterionResult]:
    """Evaluate the LHS(T,N) family for T = 0..t_max (canonical signs).

    T = 0 is the Bell inequality and T = N the matching entanglement
    criterion; for the C_J bound the verdict list is monotone in T because
    each C_J subtraction shrinks the bound moment termwise.
    """
    if t_max > state.n_sites:
        raise ValueError(f"t_max = {t_max} exceeds n_sites = {state.n_sites}")
    return [
        evaluate(state, kinds.Steering(t_sites=t, bound=bound), backend=backend, cap=cap, c_j=c_j)
        for t in range(t_max + 1)
    ]

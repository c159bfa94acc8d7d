"""Closed-form L, R and B = sqrt(L/R) for the correlated state families.

For a state sum_m r_m |J,m>^(x)N / sqrt(n) the ladder moment is

    L = |<prod_k J_k^->|^2
      = (1/n^2) [ sum_m r_{m-1} r_m ((J+m)(J-m+1))^(N/2) ]^2,

identical for the all-plus choice, and the bound moments are single power
sums over m with per-site eigenvalue factors

    q(m)        = J(J+1) - m^2          (Jx^2 + Jy^2)
    q(m) - C_J                          (Jx^2 + Jy^2 - C_J)
    f+(m)       = (J+m)(J-m+1)          (J+ J-)
    f-(m)       = (J-m)(J+m+1)          (J- J+)

Every sum sum_m w_m prod(base^power) is reduced by factoring out the
largest log term, so k^N factors cannot overflow: spin 10 with 30 sites is
routine.  C_J is always subtracted from q before exponentiation.

All eigenvalue factors are quarter-integers assembled from integer
arithmetic on twice_j, so the bases are exact floats.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
from scipy.special import logsumexp

from . import kinds
from .spin_algebra import SpinQuantum, cj_bound
from .states import SpinOneR, SymmetricCorrelatedState, make_state

_LOG_ZERO = -math.inf


def _resolve_cj(j: SpinQuantum, c_j: float | None) -> float:
    return cj_bound(j).c_j if c_j is None else float(c_j)


def _eigenvalue_factors(j: SpinQuantum) -> dict[str, np.ndarray]:
    """Per-m operator eigenvalues q, f+ and f-, exact from integer twice_j."""
    tj = j.twice_j
    two_m = 2 * np.arange(j.dim) - tj
    q = (tj * (tj + 2) - two_m * two_m) / 4
    f_plus = (tj + two_m) * (tj - two_m + 2) / 4
    f_minus = (tj - two_m) * (tj + two_m + 2) / 4
    return {"q": q, "f+": f_plus, "f-": f_minus}


def _log(x: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log(x)


def log_ladder_moment(state: SymmetricCorrelatedState) -> float:
    """log L for the all-minus (equivalently all-plus) ladder product.

    The nonzero contributions pair adjacent amplitudes: the base between
    m and m+1 is (J-m)(J+m+1), raised to the power N/2.
    """
    fac = _eigenvalue_factors(state.j)
    g = fac["f-"][:-1]  # strictly positive for m = -J..J-1
    log_r = state.log_amplitudes
    signs = state.signs
    log_terms = log_r[:-1] + log_r[1:] + 0.5 * state.n_sites * _log(g)
    pair_signs = signs[:-1] * signs[1:]
    log_abs_sum, _ = logsumexp(log_terms, b=pair_signs, return_sign=True)
    return float(2 * (log_abs_sum - state.log_norm_sq))


def _canonical_l_signs(t_sites: int) -> tuple[int, ...]:
    """Plus on the first quantum site, minus on the rest."""
    if t_sites == 0:
        return ()
    return (1,) + (-1,) * (t_sites - 1)


def log_bound_moment(
    state: SymmetricCorrelatedState,
    kind: kinds.CriterionKind,
    *,
    c_j: float | None = None,
    l_signs: Sequence[int] | None = None,
) -> float:
    """log R for the requested criterion kind.

    HZ-type bounds take their per-quantum-site ladder-product signs from
    l_signs (default: the canonical one-plus pattern); only the number of
    plus choices matters for correlated states.
    """
    n = state.n_sites
    t = kinds.quantum_sites(kind, n)
    fac = _eigenvalue_factors(state.j)
    log_q = _log(fac["q"])

    factors: list[tuple[np.ndarray, float]] = []
    if n - t > 0:
        factors.append((log_q, n - t))
    if t > 0:
        if kinds.uses_cj_bound(kind):
            cj = _resolve_cj(state.j, c_j)
            shifted = fac["q"] - cj
            if np.any(shifted <= 0):
                raise ValueError(
                    f"C_J = {cj} is not below the Jx^2 + Jy^2 spectrum floor "
                    f"{fac['q'].min()} for twice_j = {state.j.twice_j}"
                )
            factors.append((_log(shifted), t))
        else:
            if l_signs is None:
                l_signs = _canonical_l_signs(t)
            if len(l_signs) != t:
                raise ValueError(f"l_signs must have length {t}, got {len(l_signs)}")
            n_plus = sum(1 for s in l_signs if s > 0)
            if n_plus > 0:
                factors.append((_log(fac["f+"]), n_plus))
            if t - n_plus > 0:
                factors.append((_log(fac["f-"]), t - n_plus))

    log_terms = 2 * state.log_amplitudes
    for log_base, power in factors:
        log_terms = log_terms + power * log_base
    return float(logsumexp(log_terms) - state.log_norm_sq)


def log_lhs_rhs(
    state: SymmetricCorrelatedState,
    kind: kinds.CriterionKind,
    *,
    c_j: float | None = None,
    l_signs: Sequence[int] | None = None,
) -> tuple[float, float]:
    return (
        log_ladder_moment(state),
        log_bound_moment(state, kind, c_j=c_j, l_signs=l_signs),
    )


def exp_or_inf(log_x: float) -> float:
    if log_x == _LOG_ZERO:
        return 0.0
    with np.errstate(over="ignore"):
        return float(np.exp(log_x))


def lhs_rhs(state, kind, *, c_j=None, l_signs=None) -> tuple[float, float]:
    """(L, R) in linear scale; values too large for a double report as inf."""
    log_l, log_r = log_lhs_rhs(state, kind, c_j=c_j, l_signs=l_signs)
    return exp_or_inf(log_l), exp_or_inf(log_r)


def b_from_logs(log_l: float, log_r: float) -> float:
    """sqrt(L/R): +inf when R = 0 < L, nan (undefined) when L = R = 0."""
    if log_r == _LOG_ZERO:
        return math.nan if log_l == _LOG_ZERO else math.inf
    return exp_or_inf(0.5 * (log_l - log_r))


def b_ratio(state, kind, *, c_j=None, l_signs=None) -> float:
    return b_from_logs(*log_lhs_rhs(state, kind, c_j=c_j, l_signs=l_signs))


def b_bell(state: SymmetricCorrelatedState) -> float:
    """B for the Bell inequality: no quantum site, R = <prod (Jx^2+Jy^2)>."""
    return b_ratio(state, kinds.Bell())


def b_ent_cj(state: SymmetricCorrelatedState, c_j: float | None = None) -> float:
    """B for the fixed-J entanglement criterion (every site C_J-shifted)."""
    return b_ratio(state, kinds.EntanglementCJ(), c_j=c_j)


def b_ent_hz(state: SymmetricCorrelatedState, l_signs: Sequence[int] | None = None) -> float:
    """B for the ladder-product entanglement criterion, canonical signs.

    With the one-plus sign pattern R = <J1+ J1- prod_{k>=2} Jk- Jk+>, which
    vanishes identically for spin-1/2 so B diverges for any entangled
    generalized GHZ state.
    """
    return b_ratio(state, kinds.EntanglementHZ(), l_signs=l_signs)


def b_steer_t(state: SymmetricCorrelatedState, t_sites: int, c_j: float | None = None) -> float:
    """B for the hybrid model with t_sites quantum sites (C_J bound).

    t_sites = 0 reduces exactly to b_bell and t_sites = N to b_ent_cj;
    steering proper is certified for 1 <= t_sites <= N-1.
    """
    return b_ratio(state, kinds.Steering(t_sites=t_sites, bound="cj"), c_j=c_j)


def ghz_cj_detection_threshold(n_sites: int) -> float:
    """sin(2 theta) threshold above which the C_J criterion flags a GHZ state."""
    if n_sites < 2:
        raise ValueError("n_sites must be >= 2")
    return 2.0 ** -(n_sites - 1)


def b_spin1_closed_forms(kind: kinds.CriterionKind, r: float, n_sites: int) -> float:
    """Printed spin-1 formulas for the (1, r, 1) family; a regression surface.

    These duplicate the general machinery on purpose: the two code paths
    must agree, which pins down the index conventions.  Plain double
    arithmetic, so intended for moderate N (the 2^N and (25/16)^N terms).

      bell:        2^((N+2)/2) r / sqrt((r^2+2) (2^N r^2 + 2))
      ent-cj:      ... sqrt((r^2+2) ((25/16)^N r^2 + 2 (9/16)^N))
      epr T=1:     ... sqrt((r^2+2) (9/8 + 25 r^2 2^(N-5)))
      epr T:       ... sqrt((r^2+2) (2 (9/16)^T + r^2 2^(N-T) (25/16)^T))
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    n = n_sites
    num = 2 ** ((n + 2) / 2) * r
    if isinstance(kind, kinds.Bell):
        den_sq = (r * r + 2) * (2**n * r * r + 2)
    elif isinstance(kind, kinds.EntanglementCJ):
        den_sq = (r * r + 2) * ((25 / 16) ** n * r * r + 2 * (9 / 16) ** n)
    elif isinstance(kind, kinds.Steering) and kind.bound == "cj":
        t = kind.t_sites
        if t == 1:
            den_sq = (r * r + 2) * (9 / 8 + 25 * r * r * 2.0 ** (n - 5))
        else:
            den_sq = (r * r + 2) * (2 * (9 / 16) ** t + r * r * 2.0 ** (n - t) * (25 / 16) ** t)
    else:
        raise ValueError(f"no printed spin-1 closed form for kind {kind!r}")
    return num / math.sqrt(den_sq)


def spin1_state(r: float, n_sites: int) -> SymmetricCorrelatedState:
    """Convenience constructor for the spin-1 (1, r, 1) family."""
    return make_state(SpinOneR(r), SpinQuantum(2), n_sites)

"""Correlated multipartite spin states sum_m r_m |J,m>^(x)N.

Every built-in family reduces to a real amplitude vector r indexed by
m = -J..+J (index 0 <-> m = -J).  Amplitudes are kept both linearly and as
log|r_m| so that the closed-form sums stay finite for large J and N (the
bosonic family raises factorials to the power N-2).

``dense_vector`` expands a state into the full d^N product basis for the
brute-force oracle.  Index convention, fixed once here so the oracle and
the states agree bit-exactly: site-major base-d digits, digit value m + J.
The component |J,m>^(x)N therefore sits at index (m+J) * (d^N - 1)/(d - 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .spin_algebra import SpinQuantum

DEFAULT_DENSE_CAP = 2**20


class CapExceededError(ValueError):
    """Dense expansion would exceed the configured amplitude cap."""

    def __init__(self, dim: int, n_sites: int, cap: int):
        super().__init__(
            f"dense vector needs d^N = {dim}^{n_sites} = {dim**n_sites} "
            f"amplitudes, above the cap of {cap}"
        )
        self.dim = dim
        self.n_sites = n_sites
        self.cap = cap


@dataclass(frozen=True)
class UniformMax:
    """Equal-amplitude correlated state, r_m = 1 for every m."""


@dataclass(frozen=True)
class Bosonic:
    """Two-mode bosonic family: r_m = ((J-m)! (J+m)!)^((N-2)/2).

    Coincides with UniformMax at N = 2 and grows factorially otherwise;
    amplitudes are built in the log domain.
    """


@dataclass(frozen=True)
class GeneralizedGHZ:
    """cos(theta)|0>^(x)N + sin(theta)|1>^(x)N, spin-1/2 only."""

    theta: float


@dataclass(frozen=True)
class SpinOneR:
    """Spin-1 amplitude triple (1, r, 1)."""

    r: float


@dataclass(frozen=True)
class Custom:
    """Arbitrary real amplitude vector of length d."""

    amplitudes: tuple[float, ...]


StateFamily = Union[UniformMax, Bosonic, GeneralizedGHZ, SpinOneR, Custom]


def family_label(family: StateFamily) -> str:
    return {
        UniformMax: "uniform-max",
        Bosonic: "bosonic",
        GeneralizedGHZ: "ghz",
        SpinOneR: "spin1r",
        Custom: "custom",
    }[type(family)]


@dataclass(frozen=True, eq=False)
class SymmetricCorrelatedState:
    """Amplitude vector over the diagonal correlated basis, with log shadow."""

    j: SpinQuantum
    n_sites: int
    amplitudes: np.ndarray
    log_amplitudes: np.ndarray  # log|r_m|, -inf where r_m = 0
    log_norm_sq: float

    @property
    def dim(self) -> int:
        return self.j.dim

    @property
    def norm_sq(self) -> float:
        """n = sum r_m^2 (may overflow to inf; log_norm_sq is authoritative)."""
        with np.errstate(over="ignore"):
            return float(np.exp(self.log_norm_sq))

    @property
    def signs(self) -> np.ndarray:
        return np.sign(self.amplitudes)

    def is_symmetric(self) -> bool:
        """True when r_m = r_{-m} exactly."""
        return bool(np.array_equal(self.amplitudes, self.amplitudes[::-1]))


def _from_amplitudes(
    j: SpinQuantum,
    n_sites: int,
    amplitudes: np.ndarray,
    log_amplitudes: np.ndarray | None = None,
) -> SymmetricCorrelatedState:
    if n_sites < 2:
        raise ValueError(f"n_sites must be >= 2, got {n_sites}")
    r = np.asarray(amplitudes, dtype=float)
    if r.shape != (j.dim,):
        raise ValueError(f"amplitude vector must have length d = {j.dim}, got shape {r.shape}")
    if log_amplitudes is None:
        if not np.all(np.isfinite(r)):
            raise ValueError("amplitudes must be finite")
        with np.errstate(divide="ignore"):
            log_r = np.log(np.abs(r))
    else:
        log_r = np.asarray(log_amplitudes, dtype=float)
    if np.all(np.isneginf(log_r)):
        raise ValueError("amplitude vector must not be all zero")
    log_norm_sq = _logsumexp(2 * log_r)
    r = r.copy()
    log_r = log_r.copy()
    r.setflags(write=False)
    log_r.setflags(write=False)
    return SymmetricCorrelatedState(
        j=j, n_sites=int(n_sites), amplitudes=r, log_amplitudes=log_r, log_norm_sq=log_norm_sq
    )


def _logsumexp(log_terms: np.ndarray) -> float:
    hi = np.max(log_terms)
    if np.isneginf(hi):
        return float("-inf")
    return float(hi + np.log(np.sum(np.exp(log_terms - hi))))


def make_state(family: StateFamily, j: SpinQuantum, n_sites: int) -> SymmetricCorrelatedState:
    """Build the amplitude vector of a state family for spin j on n_sites sites."""
    d = j.dim
    if isinstance(family, UniformMax):
        return _from_amplitudes(j, n_sites, np.ones(d))
    if isinstance(family, Bosonic):
        # log r_m = (N-2)/2 * log((J-m)! (J+m)!); J -/+ m are the integers 2J-k, k
        k = np.arange(d)
        log_fact = np.array([math.lgamma(v + 1) for v in k])
        log_r = 0.5 * (n_sites - 2) * (log_fact[::-1] + log_fact)
        with np.errstate(over="ignore"):
            r = np.exp(log_r)
        return _from_amplitudes(j, n_sites, r, log_amplitudes=log_r)
    if isinstance(family, GeneralizedGHZ):
        if j.twice_j != 1:
            raise ValueError("GeneralizedGHZ requires spin 1/2 (twice_j = 1)")
        r = np.array([math.cos(family.theta), math.sin(family.theta)])
        r[np.abs(r) < 1e-15] = 0.0  # theta at 0 or pi/2 is an exact product state
        return _from_amplitudes(j, n_sites, r)
    if isinstance(family, SpinOneR):
        if j.twice_j != 2:
            raise ValueError("SpinOneR requires spin 1 (twice_j = 2)")
        if not (family.r >= 0 and math.isfinite(family.r)):
            raise ValueError(f"SpinOneR amplitude must be finite and >= 0, got {family.r}")
        return _from_amplitudes(j, n_sites, np.array([1.0, family.r, 1.0]))
    if isinstance(family, Custom):
        return _from_amplitudes(j, n_sites, np.array(family.amplitudes, dtype=float))
    raise TypeError(f"unknown state family: {family!r}")


def dense_vector(state: SymmetricCorrelatedState, cap: int | None = None) -> np.ndarray:
    """Expand to the unit-norm d^N product-basis vector (complex).

    Only the d all-digits-equal components are nonzero; component m carries
    amplitude r_m / sqrt(n), computed through the log domain so very large
    raw amplitudes normalise cleanly.
    """
    if cap is None:
        cap = DEFAULT_DENSE_CAP
    d = state.dim
    n = state.n_sites
    size = d**n
    if size > cap:
        raise CapExceededError(d, n, cap)
    normalized = state.signs * np.exp(state.log_amplitudes - 0.5 * state.log_norm_sq)
    vec = np.zeros(size, dtype=complex)
    stride = (size - 1) // (d - 1)  # sum of d^i over sites: all-equal-digit index step
    vec[np.arange(d) * stride] = normalized
    vec.setflags(write=False)
    return vec

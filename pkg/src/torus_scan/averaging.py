"""Weighted Birkhoff averaging and orbit regularity diagnostics.

The weighted average of a length-T stream h_t is

    (1/S) * sum_t Psi(t/T) h_t,    S = sum_t Psi(t/T),

with the C-infinity bump weight Psi(s) = exp(-1/(s(1-s))) on (0,1) and zero
outside.  Applied to the per-step displacements of a torus-map orbit it
estimates the rotation vector; comparing the estimate over two consecutive
windows gives dig_T, the effective number of correct decimal digits, which
separates regular from chaotic orbits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .maps import CircleParams, OrbitSpec, Torus2Params


class NumericFailure(RuntimeError):
    """An orbit or tangent computation produced non-finite values."""


@dataclass(frozen=True)
class RotationResult:
    """Rotation vector estimate (mod 1, shape (d,)) and its precision."""

    omega_t: np.ndarray
    dig_t: float

    def __post_init__(self):
        object.__setattr__(self, "omega_t", np.atleast_1d(np.asarray(self.omega_t, dtype=float)))


@dataclass(frozen=True)
class ChaosThreshold:
    """Averaging length and the digit cutoff below which an orbit is chaotic."""

    T: int
    D_T: float

    def __post_init__(self):
        if self.D_T <= 0:
            raise ValueError("D_T must be positive")


#: Default cutoff for circle maps.
CIRCLE_THRESHOLD = ChaosThreshold(T=10**5, D_T=9.0)

#: Default cutoff for 2-torus maps.
TORUS_THRESHOLD = ChaosThreshold(T=10**6, D_T=9.0)

#: Digits are capped here: double precision cannot resolve smaller differences.
DIG_CAP = 16.0


@dataclass(frozen=True)
class LyapunovPair:
    lambda1: float
    lambda2: float

    def __post_init__(self):
        if self.lambda1 < self.lambda2:
            raise ValueError("lambda1 must be >= lambda2")


def bump_weight(s: float) -> float:
    """Psi(s) = exp(-1/(s(1-s))) for s in (0,1), else 0."""
    if s <= 0.0 or s >= 1.0:
        return 0.0
    return math.exp(-1.0 / (s * (1.0 - s)))


_weights_cache: dict[int, tuple[np.ndarray, float]] = {}


def bump_weights(T: int) -> tuple[np.ndarray, float]:
    """Weight vector (Psi(t/T), t=0..T-1) and its sum, cached per T."""
    try:
        return _weights_cache[T]
    except KeyError:
        pass
    t = np.arange(T, dtype=float) / T
    w = np.zeros(T)
    inner = (t > 0.0) & (t < 1.0)
    w[inner] = np.exp(-1.0 / (t[inner] * (1.0 - t[inner])))
    S = math.fsum(w)
    _weights_cache[T] = (w, S)
    return w, S


def weighted_average(values, T: int):
    """Bump-weighted average of a stream of exactly T scalars or d-vectors.

    The t=0 term carries zero weight but is still consumed, keeping the
    indexing aligned with the window definition.
    """
    if T < 1:
        raise ValueError("T must be >= 1")
    vals = np.asarray(list(values) if not isinstance(values, np.ndarray) else values,
                      dtype=float)
    if vals.shape[0] == 0:
        raise ValueError("empty stream")
    if vals.shape[0] != T:
        raise ValueError(f"stream yielded {vals.shape[0]} values, expected {T}")
    w, _ = bump_weights(T)
    return np.average(vals, axis=0, weights=w)


def _mod1(values: np.ndarray) -> np.ndarray:
    # % 1.0 rounds to exactly 1.0 for tiny negative inputs; fold it back
    r = np.asarray(values) % 1.0
    return np.where(r >= 1.0, 0.0, r)


def _digits_from_diff(diff: float) -> float:
    if not np.isfinite(diff):
        raise NumericFailure("non-finite window difference")
    if diff <= 1e-16:
        return DIG_CAP
    return min(DIG_CAP, max(0.0, -math.log10(diff)))


def rotation_and_digits(params, spec: OrbitSpec) -> RotationResult:
    """Rotation vector over iterates 1..T plus dig_T from the next T iterates.

    Runs the orbit for transient + 2T steps; omega is the weighted
    displacement average of the first window, reduced mod 1; dig_T is
    -log10 of the max-norm difference between the two window averages,
    capped at 16 (differences at or below 1e-16 count as 16).
    """
    w, S = bump_weights(spec.T)
    if isinstance(params, CircleParams):
        res = _kernels.rotation_windows_1d(params.omega, params.a, spec.x0[0],
                                           spec.transient, spec.T, w, S)
        if not np.all(np.isfinite(res)):
            raise NumericFailure("orbit produced non-finite values")
        dig = _digits_from_diff(abs(res[0] - res[1]))
        return RotationResult(omega_t=_mod1(np.array([res[0]])), dig_t=dig)
    a1, a2, a3, a4 = params.amps
    p1, p2, p3, p4 = params.phases
    res = _kernels.rotation_windows_2d(params.omega[0], params.omega[1], params.eps,
                                       a1, a2, a3, a4, p1, p2, p3, p4,
                                       spec.x0[0], spec.x0[1],
                                       spec.transient, spec.T, w, S)
    if not np.all(np.isfinite(res)):
        raise NumericFailure("orbit produced non-finite values")
    diff = max(abs(res[0, 0] - res[1, 0]), abs(res[0, 1] - res[1, 1]))
    dig = _digits_from_diff(diff)
    return RotationResult(omega_t=_mod1(res[0]), dig_t=dig)


def classify_chaos(r: RotationResult, thr: ChaosThreshold) -> bool:
    """True iff the orbit counts as chaotic (dig_T strictly below the cutoff)."""
    return r.dig_t < thr.D_T


def lyapunov_spectrum(params: Torus2Params, spec: OrbitSpec) -> LyapunovPair:
    """Both Lyapunov exponents of a 2-torus orbit (nats per iterate).

    Tangent vectors are re-orthonormalized by Gram-Schmidt at every step;
    exponents are the averaged log stretch factors over T iterates after
    the transient.
    """
    if not isinstance(params, Torus2Params):
        raise TypeError("lyapunov_spectrum requires 2-torus parameters")
    a1, a2, a3, a4 = params.amps
    p1, p2, p3, p4 = params.phases
    s1, s2, _ = _kernels.lyapunov_sums_2d(params.omega[0], params.omega[1], params.eps,
                                          a1, a2, a3, a4, p1, p2, p3, p4,
                                          spec.x0[0], spec.x0[1],
                                          spec.transient, spec.T)
    if not (np.isfinite(s1) and np.isfinite(s2)):
        raise NumericFailure("tangent iteration overflowed or degenerated")
    l1 = s1 / spec.T
    l2 = s2 / spec.T
    if l1 < l2:
        l1, l2 = l2, l1
    return LyapunovPair(lambda1=l1, lambda2=l2)

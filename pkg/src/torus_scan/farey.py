"""Minimal-denominator rational approximation and effective irrationality.

``qmin(omega, delta)`` finds the fraction of smallest denominator inside the
open ball (omega-delta, omega+delta) by descending the Stern-Brocot tree
between 0/1 and 1/1.  Runs of same-direction descent steps are taken in one
jump, and all comparisons are exact integer arithmetic on the dyadic
rationals represented by the float inputs, so results are exact and the
descent costs O(log q) big-integer operations.

A value counts as "effectively irrational" when its minimal denominator is
typical of a uniformly random number:  |log10 q_min + (1/2) log10 delta| < s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Denominators beyond this are treated as a capacity failure.
_Q_CAP = 2**64

#: Mean of log10 q_min for uniform samples is -log10(delta)/2 + ALPHA.
ALPHA = -0.0503

#: Standard deviation of log10 q_min (delta-independent).
SIGMA_LOG10_QMIN = 0.2935


class CapacityError(RuntimeError):
    """Tree descent exceeded the denominator or iteration cap."""


@dataclass(frozen=True)
class RationalApprox:
    """A reduced fraction p/q within the queried ball."""

    p: int
    q: int
    distance: float


@dataclass(frozen=True)
class IrrationalityConfig:
    """Ball radius delta and log-band half-width s for the typicality test."""

    delta: float = 1e-9
    s: float = 1.6875

    def __post_init__(self):
        if not 0.0 < self.delta < 1.0:
            raise ValueError("delta must lie in (0,1)")
        if self.s <= 0.0:
            raise ValueError("s must be positive")


def qmin(omega: float, delta: float) -> RationalApprox:
    """Fraction of minimal denominator in the open ball around omega.

    The integer part of omega is stripped before the descent and restored
    in the reported numerator.  Values exactly at distance delta are
    excluded (the ball is open).
    """
    if not 0.0 < delta < 0.5:
        raise ValueError("delta must lie in (0, 1/2)")
    if not np.isfinite(omega):
        raise ValueError("omega must be finite")
    base = math.floor(omega)
    w = omega - base
    # denominator-1 candidates: the two neighbouring integers
    if w < delta:
        return RationalApprox(p=base, q=1, distance=w)
    if 1.0 - w < delta:
        return RationalApprox(p=base + 1, q=1, distance=1.0 - w)

    # exact dyadic representations: band = (A/D, B/D)
    wn, wd = w.as_integer_ratio()
    dn, dd = float(delta).as_integer_ratio()
    D = max(wd, dd)
    wn *= D // wd
    dn *= D // dd
    A = wn - dn
    B = wn + dn

    pl, ql = 0, 1
    pr, qr = 1, 1
    for _ in range(10_000):
        p = pl + pr
        q = ql + qr
        if q > _Q_CAP:
            raise CapacityError(f"denominator exceeded 2^64 for omega={omega!r}")
        pD = p * D
        if pD <= A * q:
            # mediant at or left of the band: jump right as far as possible
            k = (A * ql - pl * D) // (pr * D - A * qr)
            pl += k * pr
            ql += k * qr
        elif pD >= B * q:
            # mediant at or right of the band: jump left
            k = (pr * D - B * qr) // (B * ql - pl * D)
            pr += k * pl
            qr += k * ql
        else:
            dist = abs(wn * q - pD) / (D * q)
            return RationalApprox(p=base * q + p, q=q, distance=dist)
    raise CapacityError(f"descent did not terminate for omega={omega!r}")


def qmin_band(cfg: IrrationalityConfig) -> tuple[float, float]:
    """Denominator band (exclusive) equivalent to the log-space criterion."""
    center = -0.5 * math.log10(cfg.delta)
    return 10.0 ** (center - cfg.s), 10.0 ** (center + cfg.s)


def is_effectively_irrational(omega: float, cfg: IrrationalityConfig = IrrationalityConfig()) -> bool:
    """True iff omega's minimal denominator is typical of a random number."""
    q = qmin(omega, cfg.delta).q
    return abs(math.log10(q) + 0.5 * math.log10(cfg.delta)) < cfg.s


@dataclass(frozen=True)
class QminStats:
    mean_log10: float
    sigma: float


def qmin_statistics(n: int, delta: float, seed: int) -> QminStats:
    """Sample mean and standard deviation of log10 q_min for uniform omega.

    Draws n values from numpy's PCG64 generator seeded with `seed`;
    identical seeds give bit-identical results.
    """
    if n < 1000:
        raise ValueError("n must be at least 1000 for meaningful statistics")
    rng = np.random.default_rng(seed)
    omegas = rng.random(n)
    logs = np.fromiter((math.log10(qmin(float(w), delta).q) for w in omegas),
                       dtype=float, count=n)
    return QminStats(mean_log10=float(logs.mean()), sigma=float(logs.std()))

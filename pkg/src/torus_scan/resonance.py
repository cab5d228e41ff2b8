"""Resonance orders and rank classification of 2D rotation vectors.

A rotation vector omega is (m,n)-resonant to precision delta when the line
m.alpha = n passes within Euclidean distance delta of omega; the resonance
order M is the smallest |m1|+|m2| over all such lines.  Orders typical of
uniformly random vectors identify incommensurate ("nonresonant") vectors;
atypical orders combined with the per-component denominator test separate
rank-one resonances from rank-two (periodic) ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .averaging import ChaosThreshold, RotationResult
from .farey import CapacityError, IrrationalityConfig, is_effectively_irrational

#: Fit of <log10 M> against log10 delta for uniform random vectors.
MEAN_ORDER_SLOPE = -0.334
MEAN_ORDER_INTERCEPT = -0.091

#: Standard deviation of log10 M (delta-independent).
SIGMA_LOG10_ORDER = 0.171

#: Default enumeration cap, just above the delta=1e-9 typicality band.
DEFAULT_ORDER_CAP = 3000

CHAOTIC = "chaotic"
PERIODIC = "periodic"
RESONANT = "resonant"
NONRESONANT = "nonresonant"
ERROR = "error"


@dataclass(frozen=True)
class ResonanceHit:
    """A resonance line within delta of the query vector.

    The sign of m is canonical (first nonzero component positive), so
    (m, n) and (-m, -n) describe the same line exactly once.
    """

    m: tuple[int, int]
    n: int
    order: int
    distance: float

    def __post_init__(self):
        if self.order != abs(self.m[0]) + abs(self.m[1]):
            raise ValueError("order must equal |m1|+|m2|")


@dataclass(frozen=True)
class OrbitClass:
    """Classification tag plus the evidence that produced it."""

    tag: str
    hit: ResonanceHit | None = None
    order: int | None = None

    @classmethod
    def chaotic(cls):
        return cls(tag=CHAOTIC)

    @classmethod
    def periodic(cls):
        return cls(tag=PERIODIC)

    @classmethod
    def resonant(cls, hit: ResonanceHit | None):
        return cls(tag=RESONANT, hit=hit,
                   order=hit.order if hit is not None else None)

    @classmethod
    def nonresonant(cls, order: int):
        return cls(tag=NONRESONANT, order=order)

    @classmethod
    def error(cls):
        return cls(tag=ERROR)


def resonance_distance(omega, m, n: int) -> float:
    """Euclidean distance |m.omega - n| / ||m||_2 from omega to the line."""
    m1, m2 = int(m[0]), int(m[1])
    if m1 == 0 and m2 == 0:
        raise ValueError("m must be nonzero")
    return abs(m1 * omega[0] + m2 * omega[1] - n) / math.hypot(m1, m2)


def resonance_order(omega, delta: float, cap: int = DEFAULT_ORDER_CAP) -> ResonanceHit | None:
    """Lowest-order resonance within delta of omega, or None above the cap.

    Brute-force enumeration in increasing order |m1|+|m2|, lexicographic
    within an order; for each m only n = round(m.omega) needs checking
    since it minimizes the distance.
    """
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    if cap < 1:
        raise ValueError("cap must be >= 1")
    order, m1, m2, n, dist = _kernels.resonance_search(
        float(omega[0]), float(omega[1]), delta, cap)
    if order == 0:
        return None
    return ResonanceHit(m=(int(m1), int(m2)), n=int(n), order=int(order),
                        distance=float(dist))


def mean_log10_order(delta: float) -> float:
    """Expected log10 resonance order of a uniformly random vector."""
    return MEAN_ORDER_SLOPE * math.log10(delta) + MEAN_ORDER_INTERCEPT


def order_band(delta: float) -> tuple[int, int]:
    """Integer order band (mean +- 3 sigma in log space) for typicality.

    At delta = 1e-9 this evaluates to (252, 2679); vectors whose order
    falls inside count as nonresonant.
    """
    mu = mean_log10_order(delta)
    lo = round(10.0 ** (mu - 3.0 * SIGMA_LOG10_ORDER))
    hi = round(10.0 ** (mu + 3.0 * SIGMA_LOG10_ORDER))
    return int(lo), int(hi)


def classify_rotation_vector(r: RotationResult, thr: ChaosThreshold,
                             farey_cfg: IrrationalityConfig, delta: float,
                             cap: int = DEFAULT_ORDER_CAP) -> OrbitClass:
    """Rank classification of a rotation result.

    Low precision means chaotic.  Otherwise the resonance order decides:
    a typical order is nonresonant (incommensurate); an atypical order is
    periodic when both components also fail the irrationality test (two
    independent resonances), else resonant (one resonance, orbits dense on
    circles).  Orders beyond the cap count as atypical.
    """
    if r.dig_t < thr.D_T:
        return OrbitClass.chaotic()
    omega = np.asarray(r.omega_t, dtype=float)
    if omega.shape != (2,):
        raise ValueError("classify_rotation_vector requires a 2-vector rotation")
    hit = resonance_order(omega, delta, cap)
    lo, hi = order_band(delta)
    if hit is not None and lo <= hit.order <= hi:
        return OrbitClass.nonresonant(order=hit.order)
    r1 = is_effectively_irrational(float(omega[0]), farey_cfg)
    r2 = is_effectively_irrational(float(omega[1]), farey_cfg)
    if not r1 and not r2:
        return OrbitClass.periodic()
    return OrbitClass.resonant(hit)


@dataclass(frozen=True)
class ResonanceStats:
    mean_log10: float
    sigma: float
    misclassified_fraction: float
    below_band_fraction: float
    above_band_fraction: float


def resonance_statistics(n: int, delta: float, seed: int,
                         cap: int = 30_000) -> ResonanceStats:
    """Order statistics for n uniform random vectors in [0,1)^2.

    Returns mean and standard deviation of log10 M plus the fraction of
    samples whose order falls outside the typicality band (these would be
    misidentified as resonant), split into the below-band and above-band
    parts.  The cap is generous so every sample gets its exact order.
    """
    if n < 1000:
        raise ValueError("n must be at least 1000 for meaningful statistics")
    rng = np.random.default_rng(seed)
    omegas = rng.random((n, 2))
    orders, _, _, _, _ = _kernels.resonance_search_batch(omegas, delta, cap)
    if np.any(orders == 0):
        raise CapacityError(f"{int(np.sum(orders == 0))} samples had no "
                            f"resonance of order <= {cap}")
    logs = np.log10(orders.astype(float))
    lo, hi = order_band(delta)
    below = float(np.mean(orders < lo))
    above = float(np.mean(orders > hi))
    return ResonanceStats(mean_log10=float(logs.mean()), sigma=float(logs.std()),
                          misclassified_fraction=below + above,
                          below_band_fraction=below, above_band_fraction=above)

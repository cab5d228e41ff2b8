"""Parameter-grid scans, class proportions, digit histograms, power-law fits.

Grid points are independent; the compiled kernels parallelize over them and
write per-point slots, so scan output is bitwise reproducible for a given
(grid, seed, T) regardless of the worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import get_num_threads, set_num_threads

from . import _kernels
from .averaging import (CIRCLE_THRESHOLD, TORUS_THRESHOLD, ChaosThreshold,
                        LyapunovPair, RotationResult, bump_weights)
from .farey import (IrrationalityConfig, is_effectively_irrational, qmin,
                    qmin_band)
from .maps import (DEFAULT_TRANSIENT, DEFAULT_X0, CircleParams, Torus2Params,
                   parameter_catalog)
from .resonance import (DEFAULT_ORDER_CAP, CHAOTIC, ERROR, NONRESONANT,
                        PERIODIC, RESONANT, OrbitClass, ResonanceHit,
                        order_band)

#: Golden mean (sqrt(5)-1)/2; badly approximable, used for grid offsets.
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

CSV_COLUMNS = ("omega1", "omega2", "a_or_eps", "rot1", "rot2", "digT",
               "class", "m1", "m2", "n", "M", "lyap1", "lyap2")


def set_workers(n: int) -> None:
    """Set the kernel thread count (results do not depend on it)."""
    set_num_threads(max(1, int(n)))


def get_workers() -> int:
    return get_num_threads()


@dataclass
class ScanRecord:
    params: CircleParams | Torus2Params
    rotation: RotationResult | None
    orbit_class: OrbitClass
    lyapunov: LyapunovPair | None = None


@dataclass(frozen=True)
class Proportions:
    """Class counts of a record set, normalized by the total."""

    counts: dict
    total: int

    def fraction(self, tag: str) -> float:
        return self.counts.get(tag, 0) / self.total

    @property
    def chaotic(self) -> float:
        return self.fraction(CHAOTIC)

    @property
    def periodic(self) -> float:
        return self.fraction(PERIODIC)

    @property
    def resonant(self) -> float:
        return self.fraction(RESONANT)

    @property
    def nonresonant(self) -> float:
        return self.fraction(NONRESONANT)

    @property
    def mu(self) -> float:
        """Nonresonant fraction (the measure of incommensurate orbits)."""
        return self.nonresonant


def proportions(records) -> Proportions:
    records = list(records)
    if not records:
        raise ValueError("no records")
    counts: dict = {}
    for rec in records:
        tag = rec.orbit_class.tag
        counts[tag] = counts.get(tag, 0) + 1
    return Proportions(counts=counts, total=len(records))


def omega_grid(n: int) -> np.ndarray:
    """n drive frequencies (i + golden/2)/n, shifted off all low-order rationals."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return (np.arange(n) + GOLDEN / 2.0) / n


def classify_circle(rot: float, dig: float, thr: ChaosThreshold,
                    farey_cfg: IrrationalityConfig) -> OrbitClass:
    """1D classification: chaotic, periodic (rational), or quasiperiodic.

    Quasiperiodic orbits carry the nonresonant tag; their minimal
    denominator is the 1D resonance order.
    """
    if not (np.isfinite(rot) and np.isfinite(dig)):
        return OrbitClass.error()
    if dig < thr.D_T:
        return OrbitClass.chaotic()
    ra = qmin(rot, farey_cfg.delta)
    lo, hi = qmin_band(farey_cfg)
    if lo < ra.q < hi:
        return OrbitClass.nonresonant(order=ra.q)
    return OrbitClass.periodic()


def scan_circle(a_values, n_omega: int, T: int = 10**5,
                transient: int = DEFAULT_TRANSIENT, x0: float = DEFAULT_X0,
                thr: ChaosThreshold = CIRCLE_THRESHOLD,
                farey_cfg: IrrationalityConfig = IrrationalityConfig()) -> list[ScanRecord]:
    """Classify the circle map over the standard frequency grid per amplitude."""
    omegas = omega_grid(n_omega)
    w, S = bump_weights(T)
    records: list[ScanRecord] = []
    for a in a_values:
        rot, dig = _kernels.scan_rotation_1d(omegas, float(a), x0, transient, T, w, S)
        for i in range(n_omega):
            params = CircleParams(omega=float(omegas[i]), a=float(a))
            finite = np.isfinite(rot[i]) and np.isfinite(dig[i])
            rr = RotationResult(np.array([rot[i]]), float(dig[i])) if finite else None
            oc = classify_circle(float(rot[i]), float(dig[i]), thr, farey_cfg)
            records.append(ScanRecord(params=params, rotation=rr, orbit_class=oc))
    return records


def _classify_torus_batch(rot: np.ndarray, dig: np.ndarray,
                          thr: ChaosThreshold, farey_cfg: IrrationalityConfig,
                          res_delta: float, cap: int) -> list[OrbitClass]:
    """Rank-classify an array of 2D rotation results (batched order search)."""
    n = rot.shape[0]
    out: list[OrbitClass | None] = [None] * n
    finite = np.isfinite(dig) & np.all(np.isfinite(rot), axis=1)
    regular = finite & (dig >= thr.D_T)
    for i in np.nonzero(~finite)[0]:
        out[i] = OrbitClass.error()
    for i in np.nonzero(finite & ~regular)[0]:
        out[i] = OrbitClass.chaotic()
    idx = np.nonzero(regular)[0]
    if idx.size:
        orders, m1s, m2s, ns, dists = _kernels.resonance_search_batch(
            rot[idx], res_delta, cap)
        lo, hi = order_band(res_delta)
        for k, i in enumerate(idx):
            order = int(orders[k])
            hit = None
            if order > 0:
                hit = ResonanceHit(m=(int(m1s[k]), int(m2s[k])), n=int(ns[k]),
                                   order=order, distance=float(dists[k]))
            if hit is not None and lo <= hit.order <= hi:
                out[i] = OrbitClass.nonresonant(order=hit.order)
            else:
                r1 = is_effectively_irrational(float(rot[i, 0]), farey_cfg)
                r2 = is_effectively_irrational(float(rot[i, 1]), farey_cfg)
                if not r1 and not r2:
                    out[i] = OrbitClass.periodic()
                else:
                    out[i] = OrbitClass.resonant(hit)
    return out  # type: ignore[return-value]


def scan_torus(case, eps_values, omega_samples: int = 500, seed: int = 0,
               T: int = 10**5, transient: int = DEFAULT_TRANSIENT,
               x0=(DEFAULT_X0, DEFAULT_X0),
               thr: ChaosThreshold = TORUS_THRESHOLD,
               farey_cfg: IrrationalityConfig = IrrationalityConfig(),
               res_delta: float = 1e-9, cap: int = DEFAULT_ORDER_CAP,
               lyapunov: bool = False, omegas=None) -> list[ScanRecord]:
    """Classify a 2-torus family over random frequencies for each strength.

    `case` is a catalogue id or a Torus2Params supplying amplitudes and
    phases.  One set of `omega_samples` uniform frequency vectors is drawn
    from the seed and reused across every eps.  Pass `omegas` (shape (n,2))
    to scan an explicit frequency set instead, e.g. a golden-mean slice.
    Lyapunov pairs are opt-in; they roughly double the cost.
    """
    base = case if isinstance(case, Torus2Params) else parameter_catalog(case)
    if omegas is None:
        rng = np.random.default_rng(seed)
        omegas = rng.random((omega_samples, 2))
    else:
        omegas = np.asarray(omegas, dtype=float)
    a1, a2, a3, a4 = base.amps
    p1, p2, p3, p4 = base.phases
    w, S = bump_weights(T)
    records: list[ScanRecord] = []
    for eps in eps_values:
        eps = float(eps)
        rot, dig = _kernels.scan_rotation_2d(omegas, eps, a1, a2, a3, a4,
                                             p1, p2, p3, p4, x0[0], x0[1],
                                             transient, T, w, S)
        classes = _classify_torus_batch(rot, dig, thr, farey_cfg, res_delta, cap)
        for i in range(omegas.shape[0]):
            params = Torus2Params(omega=(float(omegas[i, 0]), float(omegas[i, 1])),
                                  eps=eps, amps=base.amps, phases=base.phases)
            finite = np.isfinite(dig[i]) and np.all(np.isfinite(rot[i]))
            rr = RotationResult(rot[i].copy(), float(dig[i])) if finite else None
            lp = None
            if lyapunov and finite:
                s1, s2, _ = _kernels.lyapunov_sums_2d(
                    float(omegas[i, 0]), float(omegas[i, 1]), eps,
                    a1, a2, a3, a4, p1, p2, p3, p4, x0[0], x0[1], transient, T)
                if np.isfinite(s1) and np.isfinite(s2):
                    l1, l2 = s1 / T, s2 / T
                    if l1 < l2:
                        l1, l2 = l2, l1
                    lp = LyapunovPair(lambda1=l1, lambda2=l2)
            records.append(ScanRecord(params=params, rotation=rr,
                                      orbit_class=classes[i], lyapunov=lp))
    return records


def group_proportions(records) -> list[tuple[float, Proportions]]:
    """Proportions grouped by amplitude (1D) or forcing strength (2D)."""
    groups: dict[float, list] = {}
    for rec in records:
        key = rec.params.a if isinstance(rec.params, CircleParams) else rec.params.eps
        groups.setdefault(key, []).append(rec)
    return [(key, proportions(groups[key])) for key in sorted(groups)]


@dataclass(frozen=True)
class FitResult:
    """Exponent coefficients of mu(a) = (1-a)^(p1 + p2(1-a)) and the rms on mu."""

    p1: float
    p2: float
    rms: float


def fit_power_law(points, two_term: bool = True) -> FitResult:
    """Log-linear least squares of mu against (1-a).

    log mu is regressed on log(1-a) and, when `two_term`, also on
    (1-a) log(1-a); the rms error is reported on mu itself.  Points must
    satisfy 0 < a < 1 and mu > 0 (drop locked/degenerate points first).
    """
    pts = [(float(a), float(mu)) for a, mu in points]
    if any(not (0.0 < a < 1.0) for a, _ in pts):
        raise ValueError("all a must lie strictly in (0,1)")
    if any(mu <= 0.0 for _, mu in pts):
        raise ValueError("all mu must be positive")
    if len(pts) < 2:
        raise ValueError("need at least two points")
    a = np.array([p[0] for p in pts])
    mu = np.array([p[1] for p in pts])
    L = np.log1p(-a)
    cols = [L, (1.0 - a) * L] if two_term else [L]
    X = np.column_stack(cols)
    coef, *_ = np.linalg.lstsq(X, np.log(mu), rcond=None)
    mu_fit = np.exp(X @ coef)
    rms = float(np.sqrt(np.mean((mu - mu_fit) ** 2)))
    p1 = float(coef[0])
    p2 = float(coef[1]) if two_term else 0.0
    return FitResult(p1=p1, p2=p2, rms=rms)


@dataclass(frozen=True)
class DigitsHistogram:
    """Probability-normalized histogram of dig_T with a point mass at 16."""

    bin_edges: np.ndarray
    heights: np.ndarray
    terminal_mass: float

    @property
    def masses(self) -> np.ndarray:
        return np.append(self.heights, self.terminal_mass)


def histogram_digits(records, bin_width: float = 0.25) -> DigitsHistogram:
    """Histogram the digit diagnostic; dig_T = 16 gets its own terminal bin."""
    if bin_width <= 0.0:
        raise ValueError("bin_width must be positive")
    digs = np.array([rec.rotation.dig_t for rec in records
                     if rec.rotation is not None])
    if digs.size == 0:
        raise ValueError("no records with rotation data")
    edges = np.arange(0.0, 16.0 + bin_width, bin_width)
    edges[-1] = 16.0  # final partial bin ends exactly at the cap
    at_cap = digs >= 16.0
    counts, _ = np.histogram(digs[~at_cap], bins=edges)
    total = digs.size
    return DigitsHistogram(bin_edges=edges, heights=counts / total,
                           terminal_mass=float(np.sum(at_cap)) / total)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def record_row(rec: ScanRecord) -> list[str]:
    if isinstance(rec.params, CircleParams):
        omega1, omega2 = rec.params.omega, None
        strength = rec.params.a
    else:
        omega1, omega2 = rec.params.omega
        strength = rec.params.eps
    rot1 = rot2 = dig = None
    if rec.rotation is not None:
        rot1 = float(rec.rotation.omega_t[0])
        if rec.rotation.omega_t.size > 1:
            rot2 = float(rec.rotation.omega_t[1])
        dig = rec.rotation.dig_t
    oc = rec.orbit_class
    m1 = m2 = n = order = None
    if oc.hit is not None:
        m1, m2 = oc.hit.m
        n = oc.hit.n
    if oc.order is not None:
        order = oc.order
    l1 = l2 = None
    if rec.lyapunov is not None:
        l1, l2 = rec.lyapunov.lambda1, rec.lyapunov.lambda2
    return [_fmt(v) for v in (omega1, omega2, strength, rot1, rot2, dig,
                              oc.tag, m1, m2, n, order, l1, l2)]


def write_records_csv(records, path) -> None:
    """One record per row, schema `CSV_COLUMNS`, floats at 17 significant digits."""
    with open(path, "w", newline="") as fh:
        fh.write(",".join(CSV_COLUMNS) + "\n")
        for rec in records:
            fh.write(",".join(record_row(rec)) + "\n")

"""Compiled inner loops (numba).

All orbit kernels accumulate the weighted sums with plain sequential float64
additions on purpose: the window-difference digit diagnostic is calibrated
against that rounding profile.  Compensated or pairwise summation collapses
the digit distribution of regular orbits onto the cap and shifts the
digit>=16 population by tens of percent.

Grid kernels write only to their own slot of preallocated output arrays, so
results are bitwise independent of the number of threads.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit, prange

TWO_PI = 2.0 * math.pi
DIG_CAP = 16.0
DIG_FLOOR_DIFF = 1e-16


@njit(cache=True)
def _mod1(x: float) -> float:
    # x % 1.0 rounds to exactly 1.0 for tiny negative x; fold it back
    r = x % 1.0
    if r >= 1.0:
        return 0.0
    return r


@njit(cache=True)
def _digits(diff: float) -> float:
    if diff <= DIG_FLOOR_DIFF:
        return DIG_CAP
    d = -math.log10(diff)
    if d > DIG_CAP:
        return DIG_CAP
    if d < 0.0:
        return 0.0
    return d


@njit(cache=True)
def rotation_windows_1d(omega, a, x0, transient, T, w, S):
    """Two consecutive length-T weighted displacement averages (1D map)."""
    coef = a / TWO_PI
    x = x0 % 1.0
    for _ in range(transient):
        x = (x + omega + coef * math.sin(TWO_PI * x)) % 1.0
    out = np.empty(2)
    for win in range(2):
        acc = 0.0
        for t in range(T):
            d = omega + coef * math.sin(TWO_PI * x)
            acc += w[t] * d
            x = (x + d) % 1.0
        out[win] = acc / S
    return out


@njit(cache=True)
def rotation_windows_2d(omega1, omega2, eps, a1, a2, a3, a4, p1, p2, p3, p4,
                        x01, x02, transient, T, w, S):
    """Two consecutive length-T weighted displacement averages (2D map)."""
    c = eps / TWO_PI
    x = x01 % 1.0
    y = x02 % 1.0
    for _ in range(transient):
        d1 = omega1 + c * (a1 * math.cos(TWO_PI * (x + p1)) + a2 * math.cos(TWO_PI * (y + p2)))
        d2 = omega2 + c * (a3 * math.cos(TWO_PI * (x + p3)) + a4 * math.cos(TWO_PI * (y + p4)))
        x = (x + d1) % 1.0
        y = (y + d2) % 1.0
    out = np.empty((2, 2))
    for win in range(2):
        acc1 = 0.0
        acc2 = 0.0
        for t in range(T):
            d1 = omega1 + c * (a1 * math.cos(TWO_PI * (x + p1)) + a2 * math.cos(TWO_PI * (y + p2)))
            d2 = omega2 + c * (a3 * math.cos(TWO_PI * (x + p3)) + a4 * math.cos(TWO_PI * (y + p4)))
            acc1 += w[t] * d1
            acc2 += w[t] * d2
            x = (x + d1) % 1.0
            y = (y + d2) % 1.0
        out[win, 0] = acc1 / S
        out[win, 1] = acc2 / S
    return out


@njit(cache=True, parallel=True)
def scan_rotation_1d(omegas, a, x0, transient, T, w, S):
    """Rotation number and digits for a grid of drive frequencies."""
    n = omegas.size
    rot = np.empty(n)
    dig = np.empty(n)
    for i in prange(n):
        res = rotation_windows_1d(omegas[i], a, x0, transient, T, w, S)
        rot[i] = _mod1(res[0])
        dig[i] = _digits(abs(res[0] - res[1]))
    return rot, dig


@njit(cache=True, parallel=True)
def scan_rotation_2d(omegas, eps, a1, a2, a3, a4, p1, p2, p3, p4,
                     x01, x02, transient, T, w, S):
    """Rotation vectors and digits for an array of frequency vectors."""
    n = omegas.shape[0]
    rot = np.empty((n, 2))
    dig = np.empty(n)
    for i in prange(n):
        res = rotation_windows_2d(omegas[i, 0], omegas[i, 1], eps,
                                  a1, a2, a3, a4, p1, p2, p3, p4,
                                  x01, x02, transient, T, w, S)
        rot[i, 0] = _mod1(res[0, 0])
        rot[i, 1] = _mod1(res[0, 1])
        e1 = abs(res[0, 0] - res[1, 0])
        e2 = abs(res[0, 1] - res[1, 1])
        dig[i] = _digits(max(e1, e2))
    return rot, dig


@njit(cache=True)
def orbit_points_1d(omega, a, x0, transient, n):
    """n points of the circle-map orbit after the transient."""
    coef = a / TWO_PI
    x = x0 % 1.0
    for _ in range(transient):
        x = (x + omega + coef * math.sin(TWO_PI * x)) % 1.0
    out = np.empty(n)
    for t in range(n):
        out[t] = x
        x = (x + omega + coef * math.sin(TWO_PI * x)) % 1.0
    return out


@njit(cache=True)
def orbit_points_2d(omega1, omega2, eps, a1, a2, a3, a4, p1, p2, p3, p4,
                    x01, x02, transient, n):
    """n points of the 2-torus orbit after the transient."""
    c = eps / TWO_PI
    x = x01 % 1.0
    y = x02 % 1.0
    for _ in range(transient):
        d1 = omega1 + c * (a1 * math.cos(TWO_PI * (x + p1)) + a2 * math.cos(TWO_PI * (y + p2)))
        d2 = omega2 + c * (a3 * math.cos(TWO_PI * (x + p3)) + a4 * math.cos(TWO_PI * (y + p4)))
        x = (x + d1) % 1.0
        y = (y + d2) % 1.0
    out = np.empty((n, 2))
    for t in range(n):
        out[t, 0] = x
        out[t, 1] = y
        d1 = omega1 + c * (a1 * math.cos(TWO_PI * (x + p1)) + a2 * math.cos(TWO_PI * (y + p2)))
        d2 = omega2 + c * (a3 * math.cos(TWO_PI * (x + p3)) + a4 * math.cos(TWO_PI * (y + p4)))
        x = (x + d1) % 1.0
        y = (y + d2) % 1.0
    return out


@njit(cache=True)
def lyapunov_sums_2d(omega1, omega2, eps, a1, a2, a3, a4, p1, p2, p3, p4,
                     x01, x02, transient, T):
    """Lyapunov sums via tangent iteration with per-step Gram-Schmidt.

    Returns (sum log r1, sum log r2, sum log |det Df|) over T iterates; the
    last is the oracle for the exponent-sum identity.
    """
    c = eps / TWO_PI
    x = x01 % 1.0
    y = x02 % 1.0
    for _ in range(transient):
        d1 = omega1 + c * (a1 * math.cos(TWO_PI * (x + p1)) + a2 * math.cos(TWO_PI * (y + p2)))
        d2 = omega2 + c * (a3 * math.cos(TWO_PI * (x + p3)) + a4 * math.cos(TWO_PI * (y + p4)))
        x = (x + d1) % 1.0
        y = (y + d2) % 1.0
    u1, u2 = 1.0, 0.0
    v1, v2 = 0.0, 1.0
    s1 = 0.0
    s2 = 0.0
    sdet = 0.0
    for _ in range(T):
        j11 = 1.0 - eps * a1 * math.sin(TWO_PI * (x + p1))
        j12 = -eps * a2 * math.sin(TWO_PI * (y + p2))
        j21 = -eps * a3 * math.sin(TWO_PI * (x + p3))
        j22 = 1.0 - eps * a4 * math.sin(TWO_PI * (y + p4))
        det = j11 * j22 - j12 * j21
        if det == 0.0:
            # measure-zero tangency; nudge off the singular point
            det = 1e-300
        sdet += math.log(abs(det))
        tu1 = j11 * u1 + j12 * u2
        tu2 = j21 * u1 + j22 * u2
        tv1 = j11 * v1 + j12 * v2
        tv2 = j21 * v1 + j22 * v2
        r1 = math.sqrt(tu1 * tu1 + tu2 * tu2)
        if not np.isfinite(r1) or r1 == 0.0:
            return np.nan, np.nan, np.nan
        u1 = tu1 / r1
        u2 = tu2 / r1
        proj = u1 * tv1 + u2 * tv2
        wv1 = tv1 - proj * u1
        wv2 = tv2 - proj * u2
        r2 = math.sqrt(wv1 * wv1 + wv2 * wv2)
        if not np.isfinite(r2) or r2 == 0.0:
            return np.nan, np.nan, np.nan
        v1 = wv1 / r2
        v2 = wv2 / r2
        s1 += math.log(r1)
        s2 += math.log(r2)
        d1 = omega1 + c * (a1 * math.cos(TWO_PI * (x + p1)) + a2 * math.cos(TWO_PI * (y + p2)))
        d2 = omega2 + c * (a3 * math.cos(TWO_PI * (x + p3)) + a4 * math.cos(TWO_PI * (y + p4)))
        x = (x + d1) % 1.0
        y = (y + d2) % 1.0
    return s1, s2, sdet


@njit(cache=True)
def resonance_search(w1, w2, delta, cap):
    """First resonance (m, n) with point-line distance < delta.

    Enumerates |m1|+|m2| = 1..cap; within an order, m runs in lexicographic
    order over canonical representatives (first nonzero component positive).
    For each m the integer n closest to m.w minimizes the distance.
    Returns (order, m1, m2, n, distance) or (0, 0, 0, 0, inf) when no
    resonance of order <= cap exists.
    """
    for order in range(1, cap + 1):
        for m1 in range(0, order + 1):
            m2mag = order - m1
            if m1 == 0:
                dot = m2mag * w2
                n = int(math.floor(dot + 0.5))
                dist = abs(dot - n) / m2mag
                if dist < delta:
                    return order, 0, m2mag, n, dist
                continue
            if m2mag == 0:
                dot = m1 * w1
                n = int(math.floor(dot + 0.5))
                dist = abs(dot - n) / m1
                if dist < delta:
                    return order, m1, 0, n, dist
                continue
            norm2 = math.sqrt(m1 * m1 + m2mag * m2mag)
            for sgn in (-1, 1):
                m2 = sgn * m2mag
                dot = m1 * w1 + m2 * w2
                n = int(math.floor(dot + 0.5))
                dist = abs(dot - n) / norm2
                if dist < delta:
                    return order, m1, m2, n, dist
    return 0, 0, 0, 0, np.inf


@njit(cache=True, parallel=True)
def resonance_search_batch(omegas, delta, cap):
    """Vectorized resonance_search over rows of `omegas` (shape (n,2))."""
    n = omegas.shape[0]
    orders = np.zeros(n, dtype=np.int64)
    m1s = np.zeros(n, dtype=np.int64)
    m2s = np.zeros(n, dtype=np.int64)
    ns = np.zeros(n, dtype=np.int64)
    dists = np.full(n, np.inf)
    for i in prange(n):
        order, m1, m2, nn, dist = resonance_search(omegas[i, 0], omegas[i, 1],
                                                   delta, cap)
        orders[i] = order
        m1s[i] = m1
        m2s[i] = m2
        ns[i] = nn
        dists[i] = dist
    return orders, m1s, m2s, ns, dists


@njit(cache=True)
def qmin_brute(omega, delta, qmax):
    """Oracle: smallest q <= qmax with |q*omega - round(q*omega)| < q*delta."""
    for q in range(1, qmax + 1):
        t = q * omega
        if abs(t - math.floor(t + 0.5)) < q * delta:
            return q
    return 0

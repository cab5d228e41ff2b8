"""Critical forcing strength at which the 2-torus map loses invertibility.

det(Df) = eps^2 det(H) + eps tr(H) + 1 with H the (eps-independent) scaled
forcing Jacobian.  eps_crit is the smallest eps >= 0 at which the minimum of
det(Df) over the torus reaches zero; beyond it the map cannot be smoothly
conjugate to a rigid rotation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize

from .maps import TWO_PI, Torus2Params

#: Acceptable |min det| at the returned eps_crit.
RESIDUAL_TOL = 1e-4


class DegenerateMapError(ValueError):
    """The family has no critical strength (a1 = a4 = 0 and a2*a3 = 0)."""


class BracketError(RuntimeError):
    """No sign change of min det(Df) found below the search ceiling."""


@dataclass(frozen=True)
class CriticalResult:
    eps_crit: float
    argmin_x: tuple[float, float]
    residual: float


class MinDet(NamedTuple):
    value: float
    x: tuple[float, float]


def _det_factors(params: Torus2Params):
    """Closed-form pieces of det(Df) as functions of (x1, x2)."""
    a1, a2, a3, a4 = params.amps
    p1, p2, p3, p4 = params.phases

    def det_h(x1, x2):
        s1 = np.sin(TWO_PI * (x1 + p1))
        s2 = np.sin(TWO_PI * (x2 + p2))
        s3 = np.sin(TWO_PI * (x1 + p3))
        s4 = np.sin(TWO_PI * (x2 + p4))
        return a1 * a4 * s1 * s4 - a2 * a3 * s2 * s3

    def tr_h(x1, x2):
        s1 = np.sin(TWO_PI * (x1 + p1))
        s4 = np.sin(TWO_PI * (x2 + p4))
        return -(a1 * s1 + a4 * s4)

    return det_h, tr_h


def det_df(params: Torus2Params, eps: float, x1, x2):
    """det(Df) at (x1, x2); broadcasts over array inputs."""
    det_h, tr_h = _det_factors(params)
    return eps * eps * det_h(x1, x2) + eps * tr_h(x1, x2) + 1.0


def min_det_df(params: Torus2Params, eps: float, grid_n: int = 256,
               refine: bool = True) -> MinDet:
    """Global minimum of det(Df) over the torus.

    Coarse minimum on a uniform grid_n x grid_n grid, then derivative-free
    refinement (Nelder-Mead, xatol 1e-10) started from the best five grid
    cells.  The single-harmonic forcing gives det(Df) at most a few
    oscillations per period, so the default grid over-resolves every
    minimum.
    """
    xs = np.arange(grid_n) / grid_n
    det_h, tr_h = _det_factors(params)
    grid = (eps * eps * det_h(xs[:, None], xs[None, :])
            + eps * tr_h(xs[:, None], xs[None, :]) + 1.0)
    flat = np.argsort(grid, axis=None)
    best_val = float(grid.flat[flat[0]])
    i0, j0 = np.unravel_index(flat[0], grid.shape)
    best_x = (float(xs[i0]), float(xs[j0]))
    if not refine:
        return MinDet(best_val, best_x)

    def objective(x):
        return float(det_df(params, eps, x[0], x[1]))

    for idx in flat[:5]:
        i, j = np.unravel_index(idx, grid.shape)
        res = minimize(objective, x0=[xs[i], xs[j]], method="Nelder-Mead",
                       options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 400})
        if res.fun < best_val:
            best_val = float(res.fun)
            best_x = (float(res.x[0] % 1.0), float(res.x[1] % 1.0))
    return MinDet(best_val, best_x)


def is_degenerate(params: Torus2Params) -> bool:
    a1, a2, a3, a4 = params.amps
    return a1 == 0.0 and a4 == 0.0 and a2 * a3 == 0.0


def eps_crit(params: Torus2Params, grid_n: int = 256, eps_tol: float = 1e-6,
             eps_ceiling: float = 1e3) -> CriticalResult:
    """Smallest eps with min det(Df) <= 0, by bracketing and bisection.

    The upper bracket doubles from 1 until the minimum goes negative;
    bisection then shrinks the bracket below `eps_tol`.
    """
    if is_degenerate(params):
        raise DegenerateMapError(
            "det(Df) = 1 identically for a1 = a4 = 0 with a2*a3 = 0; "
            "no critical strength exists")
    hi = 1.0
    while min_det_df(params, hi, grid_n).value > 0.0:
        hi *= 2.0
        if hi > eps_ceiling:
            raise BracketError(f"min det(Df) stayed positive up to eps={eps_ceiling}")
    lo = 0.0
    while hi - lo > eps_tol:
        mid = 0.5 * (lo + hi)
        if min_det_df(params, mid, grid_n).value > 0.0:
            lo = mid
        else:
            hi = mid
    eps_star = 0.5 * (lo + hi)
    md = min_det_df(params, eps_star, grid_n)
    residual = abs(md.value)
    if residual > RESIDUAL_TOL:
        raise BracketError(
            f"residual {residual:.3e} above tolerance at eps={eps_star!r}; "
            "increase grid_n or tighten eps_tol")
    return CriticalResult(eps_crit=eps_star, argmin_x=md.x, residual=residual)

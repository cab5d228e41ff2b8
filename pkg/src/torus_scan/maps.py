"""Map families on the 1- and 2-torus.

Both families have the form  x' = x + Omega + g(x)  (mod 1) with a periodic
forcing g.  In 1D the forcing is ``(a/2pi) sin(2pi x)``; in 2D it is a pair of
cosine sums with four amplitudes and four phases, scaled by an overall
strength ``eps``.  This module holds the parameter containers, the lift of
the map to R^d, the 2D Jacobian, the catalogued amplitude/phase sets, and a
plain-text key=value (de)serialization for parameter sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi

#: Initial point used for every orbit unless overridden.
DEFAULT_X0 = 0.117789164297101

#: Iterates discarded before averaging starts.
DEFAULT_TRANSIENT = 500


@dataclass(frozen=True)
class CircleParams:
    """Drive frequency and nonlinearity amplitude of the circle map."""

    omega: float
    a: float

    def __post_init__(self):
        if not 0.0 <= self.omega < 1.0:
            raise ValueError(f"omega must lie in [0,1); got {self.omega}")
        if self.a < 0.0:
            raise ValueError(f"a must be nonnegative; got {self.a}")


@dataclass(frozen=True)
class Torus2Params:
    """Frequency vector, forcing strength, amplitudes and phases of the 2-torus map.

    Amplitudes must be L1-normalized (``|a1|+|a2|+|a3|+|a4| = 1`` to 1e-12);
    phases are reduced mod 1 on construction.
    """

    omega: tuple[float, float]
    eps: float
    amps: tuple[float, float, float, float]
    phases: tuple[float, float, float, float]

    def __post_init__(self):
        if len(self.omega) != 2 or not all(0.0 <= w < 1.0 for w in self.omega):
            raise ValueError(f"omega must be a 2-vector in [0,1)^2; got {self.omega}")
        if self.eps < 0.0:
            raise ValueError(f"eps must be nonnegative; got {self.eps}")
        if len(self.amps) != 4:
            raise ValueError("amps must have four components")
        norm1 = sum(abs(a) for a in self.amps)
        if abs(norm1 - 1.0) > 1e-12:
            raise ValueError(f"amplitudes must satisfy ||a||_1 = 1; got {norm1!r}")
        if len(self.phases) != 4:
            raise ValueError("phases must have four components")
        object.__setattr__(
            self, "phases", tuple(p - math.floor(p) for p in self.phases)
        )
        object.__setattr__(self, "omega", tuple(float(w) for w in self.omega))
        object.__setattr__(self, "amps", tuple(float(a) for a in self.amps))


@dataclass(frozen=True)
class OrbitSpec:
    """Initial point, transient length, and averaging window length."""

    x0: tuple[float, ...]
    transient: int = DEFAULT_TRANSIENT
    T: int = 10**5

    def __post_init__(self):
        if self.T < 1:
            raise ValueError(f"T must be >= 1; got {self.T}")
        if self.transient < 0:
            raise ValueError(f"transient must be >= 0; got {self.transient}")
        object.__setattr__(self, "x0", tuple(float(v) for v in self.x0))


def orbit_spec(dim: int, T: int, transient: int = DEFAULT_TRANSIENT,
               x0=None) -> OrbitSpec:
    """Default orbit spec: the standard initial point repeated over `dim`."""
    if x0 is None:
        x0 = (DEFAULT_X0,) * dim
    elif np.isscalar(x0):
        x0 = (float(x0),) * dim
    return OrbitSpec(x0=tuple(x0), transient=transient, T=T)


def forcing(x, params):
    """The periodic nonlinear term g(x).

    Accepts lift coordinates; the argument is reduced mod 1 before the
    trigonometric evaluation, so g is exactly periodic in floating point.
    """
    if isinstance(params, CircleParams):
        r = x - math.floor(x)
        return params.a / TWO_PI * math.sin(TWO_PI * r)
    x = np.asarray(x, dtype=float)
    r = x - np.floor(x)
    a1, a2, a3, a4 = params.amps
    p1, p2, p3, p4 = params.phases
    c = params.eps / TWO_PI
    g1 = c * (a1 * math.cos(TWO_PI * (r[0] + p1)) + a2 * math.cos(TWO_PI * (r[1] + p2)))
    g2 = c * (a3 * math.cos(TWO_PI * (r[0] + p3)) + a4 * math.cos(TWO_PI * (r[1] + p4)))
    return np.array([g1, g2])


def displacement(x, params):
    """Per-step displacement Omega + g(x) (the lift increment)."""
    if isinstance(params, CircleParams):
        return params.omega + forcing(x, params)
    return np.asarray(params.omega) + forcing(x, params)


def lift_step(x, params):
    """One step of the lift F: R^d -> R^d (no mod-1 reduction of the result).

    Computed as floor(x) + (frac(x) + Omega + g(frac(x))), which makes the
    degree-one identity F(x+m) = F(x)+m exact in floating point whenever
    x+m is itself exact.
    """
    if isinstance(params, CircleParams):
        n = math.floor(x)
        r = x - n
        return n + (r + displacement(r, params))
    x = np.asarray(x, dtype=float)
    n = np.floor(x)
    r = x - n
    return n + (r + displacement(r, params))


def jacobian(x, params: Torus2Params) -> np.ndarray:
    """Df(x) = I + eps*H(x) for the 2-torus map."""
    x = np.asarray(x, dtype=float)
    a1, a2, a3, a4 = params.amps
    p1, p2, p3, p4 = params.phases
    e = params.eps
    h = -np.array([
        [a1 * math.sin(TWO_PI * (x[0] + p1)), a2 * math.sin(TWO_PI * (x[1] + p2))],
        [a3 * math.sin(TWO_PI * (x[0] + p3)), a4 * math.sin(TWO_PI * (x[1] + p4))],
    ])
    return np.eye(2) + e * h


def iterate_displacements(params, spec: OrbitSpec):
    """Yield exactly T per-step displacements after the transient.

    Iteration is carried out on the torus (points reduced to [0,1) after
    every step); each displacement is recorded before the reduction.
    Reference implementation; the scan kernels fuse this loop with the
    weighted averaging.
    """
    if isinstance(params, CircleParams):
        x = spec.x0[0] % 1.0
        for _ in range(spec.transient):
            x = (x + displacement(x, params)) % 1.0
        for _ in range(spec.T):
            d = displacement(x, params)
            yield d
            x = (x + d) % 1.0
    else:
        x = np.asarray(spec.x0, dtype=float) % 1.0
        for _ in range(spec.transient):
            x = (x + displacement(x, params)) % 1.0
        for _ in range(spec.T):
            d = displacement(x, params)
            yield d
            x = (x + d) % 1.0


# Catalogued amplitude/phase sets, full precision as printed.  Cases 0-3 are
# "random" fully coupled sets; 4 is uncoupled, 5 anti-coupled, 6 a weak
# perturbation of a trivial semidirect case, 7 a semidirect product.
_CATALOG = {
    0: (("0.221320306832860", "0.220593736048273", "0.152270586812051", "0.405815370306816"),
        ("0.369246781120215", "0.111202755293787", "0.780252068321138", "0.389738836961253")),
    1: (("0.406588842221655", "0.062715680327705", "0.179066359898821", "0.351629117551819"),
        ("0.957506835434298", "0.964888535199277", "0.157613081677548", "0.970592781760616")),
    2: (("0.211681398612178", "0.317651811580494", "0.375591536887180", "0.095075252920149"),
        ("0.273022072458714", "0.542430207288253", "0.431224181579691", "0.153093675447227")),
    3: (("0.012536281513538", "0.465737538631897", "0.503609970119032", "0.018116209735533"),
        ("0.739790415703666", "0.023926884448995", "0.490328482174893", "0.304888898615625")),
    4: (("0.760566444256527", "0", "0", "0.239433555743473"),
        ("0.739790415703666", "0.023926884448995", "0.490328482174893", "0.304888898615625")),
    5: (("0", "0.760566444256527", "0.239433555743473", "0"),
        ("0.739790415703666", "0.02392688444899", "0.490328482174893", "0.304888898615625")),
    6: (("0.007280035519179", "0.942703650246408", "0.039647117954398", "0.010369196280015"),
        ("0.384398913909761", "0.203897175276146", "0.913862879483257", "0.191420654770675")),
    7: (("0", "0.352156017226267", "0", "0.647843982773733"),
        ("0.369246781120215", "0.111202755293787", "0.780252068321138", "0.389738836961253")),
}

CATALOG_CASES = tuple(sorted(_CATALOG))


def parameter_catalog(case_id: int, omega=(0.0, 0.0), eps: float = 0.0) -> Torus2Params:
    """Amplitudes and phases of catalogue case `case_id` (0..7).

    `omega` and `eps` fill the remaining fields of the parameter set; they
    default to the rigid rotation at frequency zero.
    """
    try:
        amps, phases = _CATALOG[case_id]
    except (KeyError, TypeError):
        raise ValueError(f"unknown catalogue case {case_id!r}; valid: 0..7") from None
    return Torus2Params(
        omega=tuple(omega),
        eps=eps,
        amps=tuple(float(s) for s in amps),
        phases=tuple(float(s) for s in phases),
    )


def params_to_config(params) -> str:
    """Serialize a parameter set to plain-text ``key = value`` lines."""
    if isinstance(params, CircleParams):
        lines = [f"omega = {params.omega!r}", f"a = {params.a!r}"]
    else:
        lines = [
            f"omega1 = {params.omega[0]!r}",
            f"omega2 = {params.omega[1]!r}",
            f"eps = {params.eps!r}",
        ]
        lines += [f"a{i+1} = {v!r}" for i, v in enumerate(params.amps)]
        lines += [f"phi{i+1} = {v!r}" for i, v in enumerate(params.phases)]
    return "\n".join(lines) + "\n"


def params_from_config(text: str):
    """Parse a parameter set written by :func:`params_to_config`."""
    kv = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"malformed config line: {raw!r}")
        key, val = line.split("=", 1)
        kv[key.strip()] = val.strip()
    if "eps" in kv:
        return Torus2Params(
            omega=(float(kv["omega1"]), float(kv["omega2"])),
            eps=float(kv["eps"]),
            amps=tuple(float(kv[f"a{i}"]) for i in range(1, 5)),
            phases=tuple(float(kv[f"phi{i}"]) for i in range(1, 5)),
        )
    if "a" in kv and "omega" in kv:
        return CircleParams(omega=float(kv["omega"]), a=float(kv["a"]))
    raise ValueError("config does not describe a known parameter set")

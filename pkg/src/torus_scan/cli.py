"""Command-line front end.

Subcommands bind the scan, statistics, and critical-strength routines to
CSV/JSON artifacts.  Flags can be preloaded from a flat ``key = value``
config file (--config); explicit flags win.  Every summary JSON embeds the
fully resolved configuration, so a run can be reproduced byte-for-byte by
feeding that block back as a config file.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .averaging import (CIRCLE_THRESHOLD, TORUS_THRESHOLD, ChaosThreshold,
                        lyapunov_spectrum, rotation_and_digits)
from .critical import eps_crit
from .farey import IrrationalityConfig, qmin_statistics
from .maps import (DEFAULT_TRANSIENT, DEFAULT_X0, CircleParams,
                   orbit_spec, parameter_catalog)
from .resonance import classify_rotation_vector, resonance_statistics
from .scan import (classify_circle, fit_power_law, group_proportions,
                   omega_grid, scan_circle, scan_torus, set_workers,
                   write_records_csv)

SCHEMA_VERSION = 1


def _float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _grid_or_list(text: str) -> list[float]:
    """Parse 'lo:hi:count' as a linspace, else a comma-separated list."""
    if ":" in text:
        lo, hi, count = text.split(":")
        return list(np.linspace(float(lo), float(hi), int(count)))
    return _float_list(text)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, default=None,
                   help="flat key = value file preloading any flag")
    p.add_argument("--out", type=Path, default=None,
                   help="output directory (created if missing)")
    p.add_argument("--workers", type=int, default=None,
                   help="kernel threads (default: TORUS_SCAN_THREADS or all cores)")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="torus-scan",
                                  description=__doc__.splitlines()[0])
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan1d", help="classify the circle map on an (Omega, a) grid")
    p.add_argument("--a", type=_grid_or_list, required=True,
                   help="amplitudes: comma list or lo:hi:count")
    p.add_argument("--n-omega", type=int, default=2000)
    p.add_argument("-T", "--iterates", type=int, default=10**5)
    p.add_argument("--transient", type=int, default=DEFAULT_TRANSIENT)
    p.add_argument("--x0", type=float, default=DEFAULT_X0)
    p.add_argument("--delta", type=float, default=1e-9)
    p.add_argument("--s-tol", type=float, default=1.6875)
    p.add_argument("--d-threshold", type=float, default=CIRCLE_THRESHOLD.D_T)
    _add_common(p)

    p = sub.add_parser("scan2d", help="classify a 2-torus family over (Omega, eps)")
    p.add_argument("--case", type=int, required=True, help="catalogue case 0..7")
    p.add_argument("--eps", type=_grid_or_list, required=True,
                   help="strengths: comma list or lo:hi:count")
    p.add_argument("--omega-samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-T", "--iterates", type=int, default=10**5)
    p.add_argument("--transient", type=int, default=DEFAULT_TRANSIENT)
    p.add_argument("--x0", type=float, default=DEFAULT_X0)
    p.add_argument("--delta", type=float, default=1e-9)
    p.add_argument("--s-tol", type=float, default=1.6875)
    p.add_argument("--d-threshold", type=float, default=TORUS_THRESHOLD.D_T)
    p.add_argument("--lyapunov", action="store_true")
    p.add_argument("--slice-omega2", type=float, default=None,
                   help="fix Omega2 and grid Omega1 (replaces random sampling)")
    _add_common(p)

    p = sub.add_parser("epscrit", help="critical strength of a catalogue case")
    p.add_argument("--case", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("stats-farey", help="minimal-denominator statistics")
    p.add_argument("-n", "--samples", type=int, default=10**5)
    p.add_argument("--delta", type=float, default=1e-9)
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)

    p = sub.add_parser("stats-resonance", help="resonance-order statistics")
    p.add_argument("-n", "--samples", type=int, default=10**4)
    p.add_argument("--delta", type=float, default=1e-9)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=30000)
    _add_common(p)

    p = sub.add_parser("fit", help="power-law fit of mu(a) from a proportions CSV")
    p.add_argument("--points", type=Path, required=True,
                   help="CSV with header containing columns a,mu")
    p.add_argument("--one-term", action="store_true")
    _add_common(p)

    p = sub.add_parser("orbit", help="classify a single orbit")
    p.add_argument("--case", type=int, default=None)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--a", type=float, default=None, help="1D amplitude")
    p.add_argument("--omega", type=_float_list, required=True)
    p.add_argument("-T", "--iterates", type=int, default=10**6)
    p.add_argument("--transient", type=int, default=DEFAULT_TRANSIENT)
    p.add_argument("--x0", type=float, default=DEFAULT_X0)
    p.add_argument("--delta", type=float, default=1e-9)
    p.add_argument("--s-tol", type=float, default=1.6875)
    p.add_argument("--d-threshold", type=float, default=None)
    p.add_argument("--lyapunov", action="store_true")
    _add_common(p)

    return top


class ConfigError(ValueError):
    pass


def _preload_config(argv: list[str]) -> list[str]:
    """Expand --config FILE into leading flags; explicit flags override."""
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        return argv
    path = Path(argv[i + 1])
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    injected: list[str] = []
    for raw in path.read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"malformed config line: {raw!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        flag = "--" + key.replace("_", "-")
        if flag in argv:
            continue  # explicit flag wins
        if val.lower() in ("true", "false"):
            if val.lower() == "true":
                injected.append(flag)
        else:
            injected += [flag, val]
    return injected + argv


def _resolved_config(args: argparse.Namespace) -> dict:
    skip = {"command", "config", "out", "workers", "func"}
    out = {}
    for key, val in sorted(vars(args).items()):
        if key in skip or val is None:
            continue
        if isinstance(val, Path):
            val = str(val)
        out[key] = val
    return out


def _emit(args, results: dict, records=None, warnings: int = 0) -> None:
    summary = {
        "schema": SCHEMA_VERSION,
        "command": args.command,
        "config": _resolved_config(args),
        "results": results,
        "warnings": warnings,
    }
    text = json.dumps(summary, indent=2, sort_keys=True)
    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
        (args.out / "summary.json").write_text(text + "\n")
        if records is not None:
            write_records_csv(records, args.out / "records.csv")
    print(text)
    if warnings:
        print(f"warning: {warnings} orbits failed numerically "
              "(class 'error' in the CSV)", file=sys.stderr)


def _proportions_payload(records) -> list[dict]:
    payload = []
    for value, props in group_proportions(records):
        entry = {"param": value, "total": props.total}
        entry.update({tag: props.fraction(tag)
                      for tag in ("chaotic", "periodic", "resonant",
                                  "nonresonant", "error")})
        entry["mu"] = props.mu
        payload.append(entry)
    return payload


def cmd_scan1d(args) -> int:
    thr = ChaosThreshold(T=args.iterates, D_T=args.d_threshold)
    cfg = IrrationalityConfig(delta=args.delta, s=args.s_tol)
    records = scan_circle(args.a, args.n_omega, T=args.iterates,
                          transient=args.transient, x0=args.x0,
                          thr=thr, farey_cfg=cfg)
    warnings = sum(1 for r in records if r.orbit_class.tag == "error")
    _emit(args, {"proportions": _proportions_payload(records)},
          records=records, warnings=warnings)
    if args.out is not None:
        # (a, mu) table ready for `torus-scan fit --points`
        lines = ["a,mu"] + [f"{value!r},{props.mu!r}"
                            for value, props in group_proportions(records)]
        (args.out / "mu_points.csv").write_text("\n".join(lines) + "\n")
    return 0


def cmd_scan2d(args) -> int:
    thr = ChaosThreshold(T=args.iterates, D_T=args.d_threshold)
    cfg = IrrationalityConfig(delta=args.delta, s=args.s_tol)
    omegas = None
    if args.slice_omega2 is not None:
        grid = omega_grid(args.omega_samples)
        omegas = np.column_stack([grid, np.full_like(grid, args.slice_omega2)])
    records = scan_torus(args.case, args.eps, omega_samples=args.omega_samples,
                         seed=args.seed, T=args.iterates,
                         transient=args.transient, x0=(args.x0, args.x0),
                         thr=thr, farey_cfg=cfg, res_delta=args.delta,
                         lyapunov=args.lyapunov, omegas=omegas)
    warnings = sum(1 for r in records if r.orbit_class.tag == "error")
    _emit(args, {"proportions": _proportions_payload(records)},
          records=records, warnings=warnings)
    return 0


def cmd_epscrit(args) -> int:
    result = eps_crit(parameter_catalog(args.case))
    _emit(args, {"eps_crit": result.eps_crit,
                 "argmin_x": list(result.argmin_x),
                 "residual": result.residual})
    return 0


def cmd_stats_farey(args) -> int:
    stats = qmin_statistics(args.samples, args.delta, args.seed)
    _emit(args, {"mean_log10": stats.mean_log10, "sigma": stats.sigma})
    return 0


def cmd_stats_resonance(args) -> int:
    stats = resonance_statistics(args.samples, args.delta, args.seed,
                                 cap=args.cap)
    _emit(args, {"mean_log10": stats.mean_log10, "sigma": stats.sigma,
                 "misclassified_fraction": stats.misclassified_fraction,
                 "below_band_fraction": stats.below_band_fraction,
                 "above_band_fraction": stats.above_band_fraction})
    return 0


def cmd_fit(args) -> int:
    import csv

    with open(args.points, newline="") as fh:
        reader = csv.DictReader(fh)
        rows = [(float(row["a"]), float(row["mu"])) for row in reader]
    points = [(a, mu) for a, mu in rows if 0.0 < a < 1.0 and mu > 0.0]
    if len(points) < 2:
        raise ConfigError("fewer than two usable (a, mu) points after filtering")
    fit = fit_power_law(points, two_term=not args.one_term)
    _emit(args, {"p1": fit.p1, "p2": fit.p2, "rms": fit.rms,
                 "points_used": len(points), "points_total": len(rows)})
    return 0


def cmd_orbit(args) -> int:
    if args.a is not None:
        if len(args.omega) != 1:
            raise ConfigError("1D orbit needs a single --omega value")
        params = CircleParams(omega=args.omega[0], a=args.a)
        dim = 1
        default_dt = CIRCLE_THRESHOLD.D_T
    else:
        if args.case is None or args.eps is None or len(args.omega) != 2:
            raise ConfigError("2D orbit needs --case, --eps and --omega w1,w2")
        params = parameter_catalog(args.case, omega=tuple(args.omega),
                                   eps=args.eps)
        dim = 2
        default_dt = TORUS_THRESHOLD.D_T
    d_threshold = args.d_threshold if args.d_threshold is not None else default_dt
    thr = ChaosThreshold(T=args.iterates, D_T=d_threshold)
    cfg = IrrationalityConfig(delta=args.delta, s=args.s_tol)
    spec = orbit_spec(dim, args.iterates, transient=args.transient, x0=args.x0)
    rr = rotation_and_digits(params, spec)
    results: dict = {"omega_t": [float(v) for v in rr.omega_t],
                     "dig_t": rr.dig_t}
    if dim == 1:
        oc = classify_circle(float(rr.omega_t[0]), rr.dig_t, thr, cfg)
    else:
        oc = classify_rotation_vector(rr, thr, cfg, args.delta)
    results["class"] = oc.tag
    if oc.hit is not None:
        results["resonance"] = {"m": list(oc.hit.m), "n": oc.hit.n,
                                "order": oc.hit.order,
                                "distance": oc.hit.distance}
    if oc.order is not None:
        results["order"] = oc.order
    if args.lyapunov and dim == 2:
        pair = lyapunov_spectrum(params, spec)
        results["lyapunov"] = [pair.lambda1, pair.lambda2]
    _emit(args, results)
    return 0


_DISPATCH = {
    "scan1d": cmd_scan1d,
    "scan2d": cmd_scan2d,
    "epscrit": cmd_epscrit,
    "stats-farey": cmd_stats_farey,
    "stats-resonance": cmd_stats_resonance,
    "fit": cmd_fit,
    "orbit": cmd_orbit,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        if argv and not argv[0].startswith("-"):
            argv = [argv[0]] + _preload_config(argv[1:])
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    workers = args.workers
    if workers is None:
        env = os.environ.get("TORUS_SCAN_THREADS")
        workers = int(env) if env else (os.cpu_count() or 1)
    set_workers(workers)
    try:
        return _DISPATCH[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

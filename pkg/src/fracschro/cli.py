"""Command-line front end.

Exit codes: 0 success, 2 usage or input error, 3 numerical refusal (for
example a Gramian that is singular at the chosen truncation).

Every run prints a JSON manifest to stderr and, when ``--out`` is given,
writes it next to the output as ``<out>.manifest.json``.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
import time
import warnings

import numpy as np

from . import __version__
from . import constants as K
from .bandlimit import FourierGrid, spectral_estimate_scan
from .hermite import norm_sweep
from .observability import (HermiteState, NotObservable, SpectrumSpec, eigenspace_hautus,
                            harmonic_propagate, hautus_sequence, hum_control,
                            observability_gramian)
from .setlib import Set1D, density_trace, iterated_density, region_from_json

EXIT_USAGE = 2
EXIT_REFUSED = 3


class UsageError(Exception):
    pass


def _load_json(text: str):
    text = text.strip()
    try:
        if text.startswith("{"):
            return json.loads(text)
        with open(text, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {text!r}: {exc}") from exc


def _region(text: str, dim: int | None = None):
    obj = _load_json(text)
    try:
        region = region_from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"invalid region: {exc}") from exc
    if dim == 1 and not isinstance(region, Set1D):
        raise UsageError("this command needs a one-dimensional set")
    if dim == 2 and isinstance(region, Set1D):
        raise UsageError("this command needs a planar region")
    return region, obj


def _floats(text: str):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"bad number list {text!r}") from exc


def _region_hash(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()[:16]


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# subcommands; each returns (text, manifest extras, exit code)


def cmd_hermite_norms(args):
    S, obj = _region(args.set, dim=1)
    rep = hautus_sequence(S, args.n_max)
    # a second pass on panels half as wide serves as the error estimate
    fine = norm_sweep(S, args.n_max, refine=2.0)
    sid = _region_hash(obj)
    rows = ((n, sid, float(v), float(r), float(abs(v - f)))
            for n, (v, r, f) in enumerate(zip(rep.norms, rep.running_inf, fine)))
    text = _csv(["n", "set_id", "norm", "running_inf", "quadrature_error_estimate"], rows)
    return text, {"region": obj, "region_hash": sid, "truncation": args.n_max,
                  "c_hat": rep.c_hat}, 0


def cmd_density(args):
    region, obj = _region(args.set)
    extra = {"region": obj, "region_hash": _region_hash(obj),
             "note": "finite-radius running infimum; not a true liminf"}
    if isinstance(region, Set1D):
        if not args.radii or args.r1_grid or args.r2_grid:
            raise UsageError("a one-dimensional set needs --radii only")
        tr = density_trace(region, _floats(args.radii))
        rows = zip(map(float, tr.radii), map(float, tr.ratios), map(float, tr.running_inf))
        return _csv(["R", "ratio", "running_inf"], rows), extra, 0
    if args.radii or not (args.r1_grid and args.r2_grid):
        raise UsageError("a planar region needs --r1-grid and --r2-grid")
    it = iterated_density(region, _floats(args.r1_grid), _floats(args.r2_grid))
    rows = []
    for i, a in enumerate(it.r1):
        for j, b in enumerate(it.r2):
            rows.append((float(a), float(b), float(it.ratios[i, j]),
                         float(it.inner_running_inf[i, j]), float(it.outer_running_inf[i])))
    extra["iterated_estimate"] = it.estimate
    return _csv(["R1", "R2", "ratio", "inner_running_inf", "outer_running_inf"], rows), extra, 0


def cmd_gramian(args):
    S, obj = _region(args.set, dim=1)
    rep = observability_gramian(S, args.T, SpectrumSpec(1, args.s), n_max=args.n_max)
    extra = {"region": obj, "region_hash": _region_hash(obj), "truncation": args.n_max,
             "lambda_min": rep.lambda_min, "C_T": rep.C_T}
    code = EXIT_REFUSED if "not-observable" in rep.flags else 0
    return rep.to_json() + "\n", extra, code


def cmd_hautus2d(args):
    region, obj = _region(args.region, dim=2)
    rows = []
    for N in (int(v) for v in _floats(args.levels)):
        val, rep = eigenspace_hautus(region, N, n_samples=args.samples, seed=args.seed)
        se = rep.lambda_min_stderr
        rows.append((N, val, float(se), rep.method))
    extra = {"region": obj, "region_hash": _region_hash(obj), "samples": args.samples}
    return _csv(["N", "value", "lambda_min_stderr", "method"], rows), extra, 0


def cmd_annihilate(args):
    S, obj = _region(args.set, dim=1)
    grid = FourierGrid(args.half_width, args.grid_size)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        scan = spectral_estimate_scan(S, args.s, args.D, _floats(args.lambda_grid), grid)
    rows = [(r["lambda"], r["band_lo"], r["band_hi"], r["bins"], r["c_tilde"], r["flag"])
            for r in scan.rows()]
    extra = {"region": obj, "region_hash": _region_hash(obj),
             "grid": {"half_width": args.half_width, "grid_size": args.grid_size},
             "k_hat": scan.k_hat, "divergent": scan.divergent}
    return _csv(["lambda", "band_lo", "band_hi", "bins", "c_tilde", "flag"], rows), extra, 0


def cmd_evolve(args):
    raw = args.init.strip()
    obj = _load_json(raw)
    try:
        u = HermiteState.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"invalid state: {exc}") from exc
    extra = {"truncation": int(max(u.levels))}
    if args.t == 0:
        # the propagator is the identity; hand back the input bytes untouched
        if raw.startswith("{"):
            return raw + "\n", extra, 0
        with open(raw, encoding="utf-8", newline="") as fh:
            return fh.read(), extra, 0
    out = harmonic_propagate(u, args.t, SpectrumSpec(u.d, args.s), args.sign)
    return json.dumps(out.to_json()) + "\n", extra, 0


def cmd_control(args):
    S, obj = _region(args.set, dim=1)
    try:
        f0 = HermiteState.from_json(_load_json(args.f0))
        fT = HermiteState.from_json(_load_json(args.fT))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"invalid state: {exc}") from exc
    res = hum_control(f0, fT, S, args.T, SpectrumSpec(f0.d, args.s), n_steps=args.steps)
    extra = {"region": obj, "region_hash": _region_hash(obj), "residual": res.residual,
             "lambda_min": res.gramian.lambda_min, "truncation": int(max(f0.levels))}
    return _csv(["t", "index", "real", "imag"], res.rows()), extra, 0


def cmd_constants(args):
    w = args.which
    if w == "kovrijkine-cube":
        res = K.kovrijkine_cube(args.gamma, args.d, args.L, args.b, args.C).to_json()
    elif w == "kovrijkine-intervals":
        res = K.kovrijkine_intervals(args.gamma, args.m, args.L, args.b, args.C).to_json()
    elif w == "miller":
        b = K.SpectralBudget(args.k, args.D)
        res = {"inputs": {"k": args.k, "D": args.D}, "value": K.miller_time(b), "flags": []}
    elif w == "spectral-from-resolvent":
        sb = K.spectral_from_resolvent(K.ResolventBudget(args.M, args.m), args.D)
        res = {"inputs": {"M": args.M, "m": args.m, "D": args.D},
               "value": {"k": sb.k, "D": sb.D}, "flags": []}
    elif w == "resolvent-from-spectral":
        conv = K.resolvent_from_spectral(K.SpectralBudget(args.k, args.D), args.epsilon)
        res = {"inputs": {"k": args.k, "D": args.D, "epsilon": args.epsilon},
               "value": {"M": conv.budget.M, "m": conv.budget.m,
                         "time_threshold": conv.time_threshold,
                         "spectral_threshold": conv.spectral_threshold},
               "flags": [] if conv.consistent else ["inconsistent"]}
    else:
        d_const, T0 = K.free_observability_budget(args.gamma, args.L, args.s, args.D, args.C, args.C_prime)
        res = {"inputs": d_const.inputs, "value": {"d_const": d_const.value, "time_threshold": T0.value},
               "flags": sorted(set(d_const.flags) | set(T0.flags)) + ["universal-constants-not-from-theory"]}
    return json.dumps(res) + "\n", {}, 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fracschro", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--out", help="output file (default: stdout)")
        sp.add_argument("--seed", type=int, default=0)
        sp.set_defaults(func=func)
        return sp

    sp = add("hermite-norms", cmd_hermite_norms, "L² masses of Hermite functions on a set")
    sp.add_argument("--set", required=True, help="region JSON (inline or file path)")
    sp.add_argument("--n-max", type=int, required=True)

    sp = add("density", cmd_density, "density traces of 1D sets or planar regions")
    sp.add_argument("--set", required=True)
    sp.add_argument("--radii")
    sp.add_argument("--r1-grid")
    sp.add_argument("--r2-grid")

    sp = add("gramian", cmd_gramian, "observability Gramian of the 1D oscillator")
    sp.add_argument("--set", required=True)
    sp.add_argument("--T", type=float, required=True)
    sp.add_argument("--s", type=float, default=1.0)
    sp.add_argument("--n-max", type=int, default=60)

    sp = add("hautus2d", cmd_hautus2d, "eigenspace Hautus constants on a planar region")
    sp.add_argument("--region", required=True)
    sp.add_argument("--levels", required=True)
    sp.add_argument("--samples", type=int, default=400_000)

    sp = add("annihilate", cmd_annihilate, "strong annihilation constants over band centres")
    sp.add_argument("--set", required=True)
    sp.add_argument("--s", type=float, default=1.0)
    sp.add_argument("--D", type=float, default=1.0)
    sp.add_argument("--lambda-grid", required=True)
    sp.add_argument("--half-width", type=float, default=64.0)
    sp.add_argument("--grid-size", type=int, default=2 ** 13)

    sp = add("evolve", cmd_evolve, "propagate a Hermite-coefficient state")
    sp.add_argument("--init", required=True)
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--s", type=float, default=1.0)
    sp.add_argument("--sign", type=int, choices=(1, -1), default=1)

    sp = add("control", cmd_control, "HUM control between two states")
    sp.add_argument("--f0", required=True)
    sp.add_argument("--fT", required=True)
    sp.add_argument("--T", type=float, required=True)
    sp.add_argument("--set", required=True)
    sp.add_argument("--s", type=float, default=1.0)
    sp.add_argument("--steps", type=int, default=512)

    sp = add("constants", cmd_constants, "closed-form constants")
    sp.add_argument("which", choices=["kovrijkine-cube", "kovrijkine-intervals", "miller",
                                      "spectral-from-resolvent", "resolvent-from-spectral",
                                      "free-budget"])
    for name, default in [("gamma", 1.0), ("L", 1.0), ("b", 1.0), ("C", K.DEFAULT_UNIVERSAL_C),
                          ("C-prime", K.DEFAULT_UNIVERSAL_C), ("k", 1.0), ("D", 1.0), ("M", 1.0),
                          ("epsilon", 1.0), ("s", 1.0)]:
        sp.add_argument(f"--{name}", type=float, default=default)
    sp.add_argument("--d", type=int, default=1)
    sp.add_argument("--m", type=float, default=1.0,
                    help="interval count (kovrijkine-intervals) or resolvent constant m")
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    if getattr(args, "grid_size", None) is not None:
        gs = args.grid_size
        if gs < 2 or gs & (gs - 1):
            print("error: --grid-size must be a power of two", file=sys.stderr)
            return EXIT_USAGE
    start = time.perf_counter()
    try:
        text, extra, code = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotObservable as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(args, text)
    manifest = {"command": ["fracschro"] + argv, "seed": args.seed, "version": __version__,
                "wall_time": round(time.perf_counter() - start, 6), **extra}
    line = json.dumps(manifest, default=_jsonable)
    print(line, file=sys.stderr)
    if args.out:
        with open(args.out + ".manifest.json", "w", encoding="utf-8") as fh:
            fh.write(line + "\n")
    return code


def _jsonable(v):
    if isinstance(v, (np.floating, np.integer, np.bool_)):
        return v.item()
    return str(v)


if __name__ == "__main__":
    sys.exit(main())

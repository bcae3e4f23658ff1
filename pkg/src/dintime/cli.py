"""Command-line front end: grid sweeps, dataset export and the verification suite.

Exit status: 0 success, 1 argument error, 2 domain error, 3 verification failure.
"""
import argparse
import json
import math
import sys
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .shutter import density_array
from .specfun import fresnel_array
from .tables import SampleTable
from .tomogram import Frame, frame_from_angles, tomogram_array
from .wigner import PhysicalUnits, classical_concentration, wigner_closed_array

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_VERIFY = 3

FULL_VERIFY_BUDGET_S = 120.0

DEFAULTS = {
    "k": 1.0,
    "t": 2.0,
    "x": None,
    "grid": None,
    "p_grid": "-1:3:41",
    "mu": None,
    "nu": None,
    "tau": None,
    "theta": None,
    "hbar": "1,0.3,0.1,0.03,0.01",
    "mass": 1.0,
    "delta": 0.05,
    "format": "csv",
    "out": None,
    "level": "quick",
}


class UsageError(Exception):
    pass


class GridSpec(NamedTuple):
    start: float
    stop: float
    count: int

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


def parse_grid(text) -> GridSpec:
    """``"start:stop:count"`` (or a 3-element list from a config file)."""
    parts = text if isinstance(text, (list, tuple)) else str(text).split(":")
    if len(parts) != 3:
        raise UsageError(f"grid must be start:stop:count, got {text!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except (TypeError, ValueError):
        raise UsageError(f"grid must be start:stop:count, got {text!r}") from None
    if not (math.isfinite(start) and math.isfinite(stop)) or not start < stop:
        raise UsageError(f"grid needs finite start < stop, got {text!r}")
    if count < 2:
        raise UsageError(f"grid needs count >= 2, got {count}")
    return GridSpec(start, stop, count)


def parse_float_list(text):
    if isinstance(text, (list, tuple)):
        items = text
    else:
        items = [s for s in str(text).split(",") if s.strip()]
    try:
        vals = [float(v) for v in items]
    except (TypeError, ValueError):
        raise UsageError(f"expected a comma-separated list of numbers, got {text!r}") from None
    if not vals:
        raise UsageError("empty number list")
    return vals


# ---------------------------------------------------------------------------
# Table builders (one per subcommand)


def cmd_density(k, t, x=None, grid=None) -> SampleTable:
    """Spatial profile at fixed ``t`` or, when ``x`` is given, time profile over a ``t`` grid."""
    if x is None:
        g = grid or GridSpec(k * t - 10.0, k * t + 10.0, 201)
        xs = g.values()
        ts = np.full_like(xs, t)
    else:
        g = grid or GridSpec(0.1, 10.0, 100)
        ts = g.values()
        xs = np.full_like(ts, x)
    dens = density_array(xs, ts, k)
    w = (xs - k * ts) / np.sqrt(2.0 * ts)
    return SampleTable.from_columns(("x", "t", "w", "density"), xs, ts, w, dens)


def cmd_cornu(grid=None) -> SampleTable:
    w = (grid or GridSpec(-5.0, 5.0, 201)).values()
    c, s = fresnel_array(w)
    return SampleTable.from_columns(("w", "C", "S"), w, c, s)


def cmd_wigner(k, t, x_grid=None, p_grid=None) -> SampleTable:
    xs = (x_grid or GridSpec(-2.0, 2.0, 41)).values()
    ps = (p_grid or GridSpec(-1.0, 3.0, 41)).values()
    X, P = np.meshgrid(xs, ps, indexing="ij")  # x-major row order
    W = wigner_closed_array(X, P, k, t)
    return SampleTable.from_columns(("x", "p", "W"), X, P, W)


def cmd_tomogram(k, t, frame: Frame, grid=None) -> SampleTable:
    if grid is None:
        nup = frame.mu * t + frame.nu
        centre = k * nup
        half = 10.0 * math.sqrt(2.0 * abs(frame.mu * nup)) + 1.0
        grid = GridSpec(centre - half, centre + half, 201)
    X = grid.values()
    rho, w = tomogram_array(X, frame, k, t)
    return SampleTable.from_columns(("X", "rho", "w_tomogram"), X, rho, w)


def cmd_classical(k, t, x, hbars, delta, mass=1.0) -> SampleTable:
    ratios = [classical_concentration(k, t, x, PhysicalUnits(h, mass), delta) for h in hbars]
    return SampleTable.from_columns(("hbar", "concentration_ratio"), hbars, ratios)


def cmd_verify(level="quick", fault=None, out=None) -> int:
    from .verify import run_suite

    out = out or sys.stdout
    out.write(f"{'invariant':<28} {'measured':>12}    {'tolerance':<10} status\n")
    results, elapsed = run_suite(level, fault=fault, report=lambda line: out.write(line + "\n"))
    failed = [r.name for r in results if not r.passed]
    out.write(f"{len(results) - len(failed)}/{len(results)} passed in {elapsed:.1f} s\n")
    if level == "full" and elapsed > FULL_VERIFY_BUDGET_S:
        sys.stderr.write(f"warning: full verification took {elapsed:.0f} s (budget {FULL_VERIFY_BUDGET_S:.0f} s)\n")
    if failed:
        out.write("FAILED: " + ", ".join(failed) + "\n")
        return EXIT_VERIFY
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument handling


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dintime", description="Diffraction-in-time shutter problem: tables and checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--config", help="JSON scenario file; command-line flags override it")
        p.add_argument("--format", choices=("csv", "json"), default=None)
        p.add_argument("--out", help="write the table here instead of stdout")

    def scenario(p):
        p.add_argument("--k", type=float, help="beam momentum (default 1)")
        p.add_argument("--t", type=float, help="time after opening (default 2)")

    p = sub.add_parser("density", help="density |M|^2 over x at fixed t, or over t at fixed --x")
    scenario(p)
    p.add_argument("--x", type=float, help="fixed position; the grid then runs over t")
    p.add_argument("--grid", help="start:stop:count over x (or t with --x)")
    common(p)

    p = sub.add_parser("cornu", help="Fresnel integrals C(w), S(w) along a w grid")
    p.add_argument("--grid", help="start:stop:count over w")
    common(p)

    p = sub.add_parser("wigner", help="Wigner function on an x-p grid")
    scenario(p)
    p.add_argument("--grid", help="start:stop:count over x")
    p.add_argument("--p-grid", dest="p_grid", help="start:stop:count over p")
    common(p)

    p = sub.add_parser("tomogram", help="tomographic probability along X for one frame")
    scenario(p)
    p.add_argument("--mu", type=float)
    p.add_argument("--nu", type=float)
    p.add_argument("--tau", type=float, help="frame squeeze; with --theta replaces --mu/--nu")
    p.add_argument("--theta", type=float, help="frame rotation angle")
    p.add_argument("--grid", help="start:stop:count over X")
    common(p)

    p = sub.add_parser("classical", help="momentum concentration ratio over a list of hbar values")
    scenario(p)
    p.add_argument("--x", type=float, help="position behind the front (default 0)")
    p.add_argument("--hbar", help="comma-separated hbar values")
    p.add_argument("--mass", type=float)
    p.add_argument("--delta", type=float, help="half-width of the inner momentum window")
    common(p)

    p = sub.add_parser("verify", help="run the self-verification suite")
    p.add_argument("--level", choices=("quick", "full"), default=None)
    p.add_argument("--quick", dest="level", action="store_const", const="quick")
    p.add_argument("--full", dest="level", action="store_const", const="full")
    p.add_argument("--config", help=argparse.SUPPRESS)
    p.add_argument("--inject-fault", dest="inject_fault", help=argparse.SUPPRESS)
    return parser


def _resolve(args) -> dict:
    """Defaults, then config-file values, then explicit flags."""
    settings = dict(DEFAULTS)
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(cfg, dict):
            raise UsageError("config file must hold a JSON object")
        unknown = set(cfg) - set(DEFAULTS)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        settings.update(cfg)
    for key, val in vars(args).items():
        if key in settings and val is not None:
            settings[key] = val
    for key in ("k", "t", "x", "mu", "nu", "tau", "theta", "mass", "delta"):
        if settings[key] is not None:
            try:
                settings[key] = float(settings[key])
            except (TypeError, ValueError):
                raise UsageError(f"{key} must be a number, got {settings[key]!r}") from None
    if settings["format"] not in ("csv", "json"):
        raise UsageError(f"format must be csv or json, got {settings['format']!r}")
    return settings


def _frame(s) -> Frame:
    angles = s["tau"] is not None or s["theta"] is not None
    direct = s["mu"] is not None or s["nu"] is not None
    if angles and direct:
        raise UsageError("give either --mu/--nu or --tau/--theta, not both")
    if angles:
        return frame_from_angles(s["tau"] or 0.0, s["theta"] or 0.0)
    return Frame(1.0 if s["mu"] is None else s["mu"], 0.0 if s["nu"] is None else s["nu"])


def _table(command, s) -> SampleTable:
    grid = parse_grid(s["grid"]) if s["grid"] is not None else None
    if command == "density":
        return cmd_density(s["k"], s["t"], s["x"], grid)
    if command == "cornu":
        return cmd_cornu(grid)
    if command == "wigner":
        return cmd_wigner(s["k"], s["t"], grid, parse_grid(s["p_grid"]))
    if command == "tomogram":
        return cmd_tomogram(s["k"], s["t"], _frame(s), grid)
    if command == "classical":
        x = 0.0 if s["x"] is None else s["x"]
        return cmd_classical(s["k"], s["t"], x, parse_float_list(s["hbar"]), s["delta"], s["mass"])
    raise UsageError(f"unknown command {command!r}")


_VALUE_FLAGS = ("--grid", "--p-grid", "--hbar")


def _attach_values(argv):
    # "--grid -1:1:5" would otherwise read "-1:1:5" as an option
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _attach_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        s = _resolve(args)
        if args.command == "verify":
            return cmd_verify(s["level"], fault=args.inject_fault)
        text = _table(args.command, s).dumps(s["format"])
    except UsageError as exc:
        sys.stderr.write(f"dintime: error: {exc}\n")
        return EXIT_USAGE
    except (DomainError, ValueError) as exc:
        sys.stderr.write(f"dintime: domain error: {exc}\n")
        return EXIT_DOMAIN
    if s["out"]:
        with open(s["out"], "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands::

    tdq series  closed-form observables over a time range (CSV or JSON)
    tdq state   a wavefunction sampled on a grid
    tdq figure  <x>(t) curves for the three example figures
    tdq verify  run the oracle suite, JSON lines, exit 1 on any failure

Exit codes are 0 on success, 1 when a verification check fails and 2
for usage or domain errors.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys

import numpy as np

from . import observables as obs
from .errors import TDQError
from .model import SystemKind, SystemSpec
from .states import Coherent, Number, Squeezed, StateSpec, oracle_grid, sample
from .verify import (ALL_CASES, DEFAULT_SEED, parse_case, quadrature_moments, reports_to_jsonl,
                     run_suite)

SERIES_HEADER = ("t", "x_mean", "p_mean", "x_var", "p_var", "product", "source")

# caption parameters and windows (TM/TQ elapsed time, TO elapsed time)
FIGURES = {
    1: dict(upsilon=5.0, omega=2.0, window=(-2.0, 1.2), to_window=(0.0, 6.0)),
    2: dict(upsilon=4.0, omega=2.0, window=(-2.0, 1.2), to_window=(0.0, 6.0)),
    3: dict(upsilon=3.0, omega=2.0, window=(-2.0, 3.0), to_window=(0.0, 6.0)),
}
FIGURE_X0 = FIGURE_P0 = 1.0


class UsageError(Exception):
    pass


def fmt(v):
    return f"{float(v):.17g}"


def _write(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _spec(args):
    return SystemSpec.create(args.upsilon, args.omega, t0=args.t0)


def _family(args):
    if args.family == "number":
        return Number(args.n)
    if args.family == "squeezed":
        return Squeezed(args.x0, args.p0, args.r, args.theta)
    return Coherent(args.x0, args.p0)


def _single_system(args):
    if args.system == "all":
        raise UsageError("this command needs a single --system (to, tm or tq)")
    return SystemKind(args.system)


def _times(args):
    """Absolute output times; the library works with ``t - t0``."""
    if args.steps < 2:
        raise UsageError(f"--steps must be >= 2, got {args.steps}")
    if not args.t_max > args.t_min:
        raise UsageError("--t-max must exceed --t-min")
    return np.linspace(args.t_min, args.t_max, args.steps)


# --- series --------------------------------------------------------------------------

def series_rows(spec, kind, x0, p0, r, theta, times, with_oracle=False):
    rows = []
    fam = Squeezed(x0, p0, r, theta) if r > 0 else Coherent(x0, p0)
    for t in times:
        pt = obs.observable_point(spec, kind, x0, p0, r, theta, t)
        rows.append((pt.t, pt.x_mean, pt.p_mean, pt.x_var, pt.p_var, pt.product, "closed_form"))
        if with_oracle:
            st = StateSpec(kind, fam)
            m = quadrature_moments(sample(spec, st, t, oracle_grid(spec, st, t)))
            rows.append((float(t), m.x_mean, m.p_mean, m.x_var, m.p_var, m.x_var * m.p_var,
                         "quadrature"))
    return rows


def render(header, rows, form):
    if form == "json":
        return json.dumps([dict(zip(header, r)) for r in rows], indent=1) + "\n"
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for r in rows:
        buf.write(",".join(v if isinstance(v, str) else fmt(v) for v in r) + "\n")
    return buf.getvalue()


def cmd_series(args):
    spec = _spec(args)
    kind = _single_system(args)
    times = _times(args)
    rows = series_rows(spec, kind, args.x0, args.p0, args.r, args.theta, times - args.t0,
                       args.with_oracle)
    rows = [(r[0] + args.t0,) + r[1:] for r in rows]
    _write(render(SERIES_HEADER, rows, args.format), args.out)
    return 0


# --- state -----------------------------------------------------------------------------

def cmd_state(args):
    spec = _spec(args)
    kind = _single_system(args)
    if args.grid_points < 5:
        raise UsageError("--grid-points must be >= 5")
    smp = sample(spec, StateSpec(kind, _family(args)), args.t - args.t0, points=args.grid_points)
    rows = [(x, p.real, p.imag, abs(p) ** 2) for x, p in zip(smp.x, smp.psi)]
    _write(render(("x", "re_psi", "im_psi", "abs2"), rows, args.format), args.out)
    return 0


# --- figure ----------------------------------------------------------------------------

def figure_rows(figure, steps=321, match_negative_upsilon=None):
    """``(system, t, <x>)`` rows for one of the example figures.

    ``to_match`` is the TO curve for the negative-``Upsilon`` partner,
    drawn at negative elapsed time ``-(t' - t0')`` where it continues the
    positive-``Upsilon`` TO curve.
    """
    cfg = FIGURES[figure]
    spec = SystemSpec.create(cfg["upsilon"], cfg["omega"])
    rows = []
    for t in np.linspace(*cfg["to_window"], steps):
        rows.append(("to", float(t), float(obs.mean_x(spec, "to", FIGURE_X0, FIGURE_P0, t))))
    for kind in ("tm", "tq"):
        for t in np.linspace(*cfg["window"], steps):
            rows.append((kind, float(t), float(obs.mean_x(spec, kind, FIGURE_X0, FIGURE_P0, t))))
    neg = -cfg["upsilon"] if match_negative_upsilon is None else match_negative_upsilon
    if neg >= 0:
        raise UsageError("--match-negative-upsilon must be negative")
    mspec = SystemSpec.create(neg, cfg["omega"])
    for s in np.linspace(0.0, 0.95 / abs(neg), steps):
        rows.append(("to_match", -float(s), float(obs.mean_x(mspec, "to", FIGURE_X0, FIGURE_P0, s))))
    return rows


def cmd_figure(args):
    if args.figure not in FIGURES:
        raise UsageError(f"--figure must be one of {sorted(FIGURES)}")
    rows = figure_rows(args.figure, args.steps, args.match_negative_upsilon)
    _write(render(("system", "t", "x_mean"), rows, args.format), args.out)
    return 0


# --- verify -----------------------------------------------------------------------------

def resolve_seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get("TDQ_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"TDQ_SEED must be an integer, got {env!r}") from None
    return DEFAULT_SEED


def cmd_verify(args):
    cases = None
    if args.case:
        try:
            cases = [parse_case(c) for c in args.case]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if args.system != "all":
        kind = SystemKind(args.system)
        cases = [c for c in (cases or ALL_CASES) if c[0] is kind]
    if not args.tolerance_scale > 0:
        raise UsageError("--tolerance-scale must be positive")
    reports = run_suite(resolve_seed(args), cases, args.tolerance_scale)
    _write(reports_to_jsonl(reports), args.out)
    failed = [r for r in reports if not r.passed]
    print(f"{len(reports) - len(failed)}/{len(reports)} checks passed", file=sys.stderr)
    return 1 if failed else 0


# --- parser ----------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="tdq", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def physics(sp, system_default="tq"):
        sp.add_argument("--system", choices=["to", "tm", "tq", "all"], default=system_default)
        sp.add_argument("--upsilon", type=float, default=3.0)
        sp.add_argument("--omega", type=float, default=2.0)
        sp.add_argument("--t0", type=float, default=0.0)
        sp.add_argument("--x0", type=float, default=1.0)
        sp.add_argument("--p0", type=float, default=1.0)
        sp.add_argument("--r", type=float, default=0.0)
        sp.add_argument("--theta", type=float, default=0.0)

    def output(sp):
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        sp.add_argument("--format", choices=["csv", "json"], default="csv")

    s = sub.add_parser("series", help="closed-form observables over time")
    physics(s)
    s.add_argument("--t-min", type=float, default=0.0)
    s.add_argument("--t-max", type=float, default=1.0)
    s.add_argument("--steps", type=int, default=11)
    s.add_argument("--with-oracle", action="store_true",
                   help="add quadrature rows computed from the wavefunction")
    output(s)
    s.set_defaults(func=cmd_series)

    s = sub.add_parser("state", help="sampled wavefunction")
    physics(s)
    s.add_argument("--family", choices=["number", "coherent", "squeezed"], default="coherent")
    s.add_argument("--n", type=int, default=0)
    s.add_argument("--t", type=float, default=0.0)
    s.add_argument("--grid-points", type=int, default=2001)
    output(s)
    s.set_defaults(func=cmd_state)

    s = sub.add_parser("figure", help="<x>(t) data for the example figures")
    s.add_argument("--figure", type=int, required=True)
    s.add_argument("--steps", type=int, default=321)
    s.add_argument("--match-negative-upsilon", type=float, default=None)
    output(s)
    s.set_defaults(func=cmd_figure)

    s = sub.add_parser("verify", help="run the oracle suite")
    s.add_argument("--system", choices=["to", "tm", "tq", "all"], default="all")
    s.add_argument("--case", action="append", help="kind,regime,sign e.g. tm,under,pos")
    s.add_argument("--seed", type=int, default=None, help="default: $TDQ_SEED or built-in")
    s.add_argument("--tolerance-scale", type=float, default=1.0)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, TDQError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

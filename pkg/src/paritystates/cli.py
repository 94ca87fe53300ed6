"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 domain error, 4 validation failure.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from .datasets import (
    FIGURES,
    SweepSpecError,
    default_s_grid,
    figure_rows,
    fmt,
    parse_sweep_spec,
    render_csv,
    sweep_rows,
    write_text,
)
from .errors import ParityStatesError
from .herald import herald_distribution
from .states import ModelParams, heralded_amplitudes
from .stats import herald_stats
from .validation import run_validation

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VALIDATION = 0, 2, 3, 4


class _Usage(Exception):
    pass


def _out_dir(arg: str | None) -> Path:
    return Path(arg or os.environ.get("HERALD_OUT_DIR") or ".")


def cmd_stats(args) -> int:
    st = herald_stats(ModelParams(args.s, args.t), args.n)
    rec = st.as_record()
    if args.format == "json":
        clean = {k: (None if isinstance(v, float) and math.isnan(v) else v) for k, v in rec.items()}
        print(json.dumps(clean))
    elif args.format == "csv":
        print(",".join(rec))
        print(",".join(fmt(v) if isinstance(v, float) else str(v) for v in rec.values()))
    else:
        width = max(map(len, rec))
        for k, v in rec.items():
            print(f"{k:<{width}}  {fmt(v) if isinstance(v, float) else v}")
    return EXIT_OK


def cmd_state(args) -> int:
    fv = heralded_amplitudes(ModelParams(args.s, args.t), args.n, args.cutoff)
    print(f"# s={fmt(args.s)}")
    print(f"# t={fmt(args.t)}")
    print(f"# n={args.n}")
    print(f"# parity={fv.parity}")
    print(f"# trunc_N={fv.trunc_N}")
    print(f"# tail_bound={fv.tail_bound:.6g}")
    print(f"# norm_sq={fv.norm_sq!r}")
    print("# columns=fock_number,amplitude")
    for f, a in zip(fv.fock_numbers, fv.amps):
        print(f"{f},{float(a)!r}")
    return EXIT_OK


def cmd_prob(args) -> int:
    dist = herald_distribution(ModelParams(args.s, args.t), args.nmax)
    print("n,probability")
    for n, p in enumerate(dist.probs):
        print(f"{n},{float(p)!r}")
    print(f"tail,{dist.tail!r}")
    return EXIT_OK


def _s_grid(args):
    return default_s_grid(args.s_min, args.s_max, args.s_step)


def cmd_figure(args) -> int:
    ids = list(FIGURES) if args.id == "all" else [args.id]
    out = _out_dir(args.out)
    for fig_id in ids:
        rows, meta = figure_rows(fig_id, _s_grid(args), workers=args.workers)
        path = out / f"fig{fig_id}.csv"
        write_text(path, render_csv(rows, meta))
        print(path)
    return EXIT_OK


def cmd_sweep(args) -> int:
    try:
        spec = parse_sweep_spec(Path(args.config).read_text(encoding="utf-8"))
    except (OSError, SweepSpecError) as exc:
        raise _Usage(str(exc)) from None
    rows = sweep_rows(spec.s_values, spec.t_values, spec.n_values, spec.quantities, workers=args.workers)
    meta = {"sweep": Path(args.config).name, "spec_version": "herald-sweep v1"}
    text = render_csv(rows, meta)
    target = args.out or spec.output_path
    if target:
        path = Path(target)
        if not path.is_absolute() and not args.out:
            path = _out_dir(None) / path
        write_text(path, text)
        print(path)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_validate(args) -> int:
    results = run_validation(deep=args.deep, perturb=args.perturb, report=print)
    failed = [r.name for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} groups passed")
    return EXIT_VALIDATION if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paritystates",
        description="Photon-subtracted squeezed-vacuum states: statistics, datasets and self-validation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def point(p, with_n=True):
        p.add_argument("--s", type=float, required=True, help="squeezing amplitude (> 0)")
        p.add_argument("--t", type=float, required=True, help="beam-splitter transmittance in (0, 1]")
        if with_n:
            p.add_argument("--n", type=int, required=True, help="detected photon number")

    p = sub.add_parser("stats", help="all statistics for one (s, t, n)")
    point(p)
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("state", help="Fock amplitudes of the heralded state")
    point(p)
    p.add_argument("--cutoff", type=float, default=1e-16, help="certified discarded probability")
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("prob", help="heralding probabilities P_0..P_nmax")
    point(p, with_n=False)
    p.add_argument("--nmax", type=int, required=True)
    p.set_defaults(func=cmd_prob)

    def grid(p):
        p.add_argument("--out", help="output directory (default $HERALD_OUT_DIR or .)")
        p.add_argument("--s-min", type=float, default=0.05)
        p.add_argument("--s-max", type=float, default=3.0)
        p.add_argument("--s-step", type=float, default=0.05)
        p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("figure", help="regenerate a figure panel dataset")
    p.add_argument("--id", required=True, choices=[*FIGURES, "all"], metavar="ID",
                   help="panel id: " + ", ".join(FIGURES) + ", or all")
    grid(p)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("sweep", help="evaluate a grid described by a sweep file")
    p.add_argument("--config", required=True, help="sweep file ('# herald-sweep v1' header)")
    p.add_argument("--out", help="output CSV path (overrides the file's output key)")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("validate", help="run the internal consistency suite")
    p.add_argument("--deep", action="store_true", help="extend the oracle grid to s = 1.5")
    p.add_argument("--perturb", type=float, default=0.0, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Usage as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    except ParityStatesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())

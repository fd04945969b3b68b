"""Command line front end.

Subcommands::

    elcal elr         --data FILE --mu0 X
    elcal curve-n     --dist SPEC --alpha A [--n-grid 10,15,...] [--scaled]
    elcal curve-alpha --dist SPEC --n N [--alpha-grid ...]
    elcal calibrate   --dist SPEC --n N (--coverage C,... | --alpha A,...)
    elcal table       --dist SPEC [--n-grid ...] [--coverage ...]
    elcal quantiles   [--coverage ...]

Distribution grammar (case-insensitive): ``family(p1,p2,...)`` with family
one of normal/norm/n (mean, variance), exponential/exp (rate),
uniform/unif (a, b), gamma (shape, rate), chisquare/chisq/chi2 (df),
laplace/lap (location, scale), t/student_t (df); or a preset name such as
``normal``, ``skew-pair-laplace`` or ``kurtosis-pair-t``.

Batches are cached under ``--cache-dir`` (default: ``$ELCAL_CACHE_DIR`` if
set, otherwise no cache).
"""

import argparse
import os
import sys

from . import __version__
from .calibration import CONSERVATIVE_OFFSET, TABLE_COVERAGES, build_table
from .curves import (
    DEFAULT_ALPHA_GRID,
    DEFAULT_N_GRID,
    TABLE_N_GRID,
    curve_scaled_deviation,
    curve_vs_alpha,
    curve_vs_n,
)
from .distributions import SpecParseError, parse_spec
from .el import el_statistic
from .montecarlo import DEFAULT_B
from .reporting import (
    DataFileError,
    curve_to_csv,
    curve_to_json,
    curve_to_text,
    elr_to_dict,
    format_float,
    read_data_file,
    table_to_csv,
    table_to_json,
    table_to_text,
    to_json,
)
from .special import chisq1_quantile

DEFAULT_SEED = 12345
CACHE_ENV = "ELCAL_CACHE_DIR"


def _float_list(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _B(text):
    b = int(text)
    if b < 100:
        raise argparse.ArgumentTypeError("B must be at least 100")
    return b


def _common(p, dist=True):
    if dist:
        p.add_argument("--dist", required=True, help="distribution, e.g. 'gamma(2,1)'")
    p.add_argument("--B", type=_B, default=DEFAULT_B, help=f"Monte Carlo replicates (default {DEFAULT_B})")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"base seed (default {DEFAULT_SEED})")
    p.add_argument("--workers", type=int, default=1, help="worker threads (result does not depend on it)")
    p.add_argument("--cache-dir", default=None, help=f"batch cache directory (default ${CACHE_ENV})")


def _output(p, default="csv"):
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.add_argument("--format", choices=("csv", "json", "text"), default=default)


def build_parser():
    parser = argparse.ArgumentParser(prog="elcal", description="Calibrated empirical likelihood tests of a mean.")
    parser.add_argument("--version", action="version", version=f"elcal {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("elr", help="EL statistic and asymptotic p-value for a data file")
    p.add_argument("--data", required=True, help="text file, one number per line, '#' comments")
    p.add_argument("--mu0", type=float, required=True)
    _output(p, default="text")

    p = sub.add_parser("curve-n", help="realised size against n at fixed nominal alpha")
    _common(p)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--n-grid", type=_int_list, default=list(DEFAULT_N_GRID))
    p.add_argument("--scaled", action="store_true", help="emit n*|alpha_hat - alpha| instead")
    _output(p)

    p = sub.add_parser("curve-alpha", help="realised size against nominal alpha at fixed n")
    _common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha-grid", type=_float_list, default=list(DEFAULT_ALPHA_GRID))
    _output(p)

    p = sub.add_parser("calibrate", help="quasi-exact critical values at one n")
    _common(p)
    p.add_argument("--n", type=int, required=True)
    target = p.add_mutually_exclusive_group()
    target.add_argument("--coverage", type=_float_list, default=None)
    target.add_argument("--alpha", type=_float_list, default=None, help="target sizes")
    p.add_argument("--alpha-grid", type=_float_list, default=list(DEFAULT_ALPHA_GRID))
    p.add_argument("--offset", type=float, default=0.0,
                   help=f"subtract from the interpolated level (conservative: {CONSERVATIVE_OFFSET:g})")
    _output(p, default="text")

    p = sub.add_parser("table", help="table of quasi-exact critical values")
    _common(p)
    p.add_argument("--n-grid", type=_int_list, default=list(TABLE_N_GRID))
    p.add_argument("--coverage", type=_float_list, default=list(TABLE_COVERAGES))
    p.add_argument("--alpha-grid", type=_float_list, default=list(DEFAULT_ALPHA_GRID))
    p.add_argument("--offset", type=float, default=0.0)
    _output(p)

    p = sub.add_parser("quantiles", help="asymptotic chi-square(1) critical values")
    p.add_argument("--coverage", type=_float_list, default=list(TABLE_COVERAGES))
    _output(p, default="text")
    return parser


def _write(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _cache_dir(args):
    return args.cache_dir if args.cache_dir is not None else os.environ.get(CACHE_ENV)


def _cmd_elr(args):
    y = read_data_file(args.data)
    res = el_statistic(y, args.mu0)
    d = elr_to_dict(res, len(y), args.mu0)
    if args.format == "json":
        return to_json(d)
    if args.format == "csv":
        keys = list(d)
        vals = [v if isinstance(v, str) else ("" if v is None else format_float(v)) for v in d.values()]
        return ",".join(keys) + "\n" + ",".join(vals) + "\n"
    return "".join(f"{k:>10}: {'' if v is None else v}\n" for k, v in d.items())


def _emit_curve(curve, fmt):
    return {"csv": curve_to_csv, "json": curve_to_json, "text": curve_to_text}[fmt](curve)


def _cmd_curve_n(args):
    curve = curve_vs_n(parse_spec(args.dist), args.alpha, args.n_grid, args.B, args.seed,
                       workers=args.workers, cache_dir=_cache_dir(args))
    if args.scaled:
        curve = curve_scaled_deviation(curve)
    return _emit_curve(curve, args.format)


def _cmd_curve_alpha(args):
    curve = curve_vs_alpha(parse_spec(args.dist), args.n, args.alpha_grid, args.B, args.seed,
                           workers=args.workers, cache_dir=_cache_dir(args))
    return _emit_curve(curve, args.format)


def _cmd_calibrate(args):
    spec = parse_spec(args.dist)
    if args.alpha is not None:
        coverages = [1.0 - a for a in args.alpha]
    else:
        coverages = args.coverage if args.coverage is not None else [0.95]
    table = build_table(spec, [args.n], coverages, args.B, args.seed, args.offset,
                        alpha_grid=args.alpha_grid, workers=args.workers, cache_dir=_cache_dir(args))
    return _emit_table(table, args.format)


def _emit_table(table, fmt):
    return {"csv": table_to_csv, "json": table_to_json, "text": table_to_text}[fmt](table)


def _cmd_table(args):
    table = build_table(parse_spec(args.dist), args.n_grid, args.coverage, args.B, args.seed, args.offset,
                        alpha_grid=args.alpha_grid, workers=args.workers, cache_dir=_cache_dir(args))
    return _emit_table(table, args.format)


def _cmd_quantiles(args):
    rows = [(c, chisq1_quantile(c)) for c in args.coverage]
    if args.format == "json":
        return to_json([{"coverage": c, "quantile": q} for c, q in rows])
    if args.format == "csv":
        return "coverage,quantile\n" + "".join(f"{c!r},{format_float(q)}\n" for c, q in rows)
    head = "1-alpha  " + " ".join(f"{c:>7g}" for c, _ in rows)
    vals = "quantile " + " ".join(f"{q:>7.3f}" for _, q in rows)
    return head + "\n" + vals + "\n"


_COMMANDS = {
    "elr": _cmd_elr,
    "curve-n": _cmd_curve_n,
    "curve-alpha": _cmd_curve_alpha,
    "calibrate": _cmd_calibrate,
    "table": _cmd_table,
    "quantiles": _cmd_quantiles,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = _COMMANDS[args.command](args)
        _write(text, getattr(args, "out", None))
    except (SpecParseError, DataFileError, OSError) as exc:
        print(f"elcal: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"elcal: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

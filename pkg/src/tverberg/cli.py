"""Command-line entry point.

Exit codes: 0 pass, 1 property violated, 2 inconclusive or budget exhausted,
3 usage error.
"""

import argparse
import csv
import io
import json
import sys

from . import __version__
from .engine import Outcome, find_tverberg_partition, refute_occurrence
from .engine.orbits import collapse_orbit, random_affine_join_map
from .engine.plmap import build_counterexample_map, search_map_violation
from .experiments import REGISTRY, balanced_dims, run_experiment
from .generators import moment_curve_points, random_rational_config
from .geometry import PointConfiguration, Status, strong_general_position_check
from .partitions import DimensionTuple
from .topology import (
    SimplicialComplex,
    barycentric_subdivision,
    circle_join_power,
    deleted_join,
    homology,
    is_shellable,
    multiple_chessboard,
    simplex,
    simplex_boundary,
    symmetric_multiple_chessboard,
    verify_constraint_zero_set,
)
from .topology.shelling import Shellability

EXIT = {"pass": 0, "violated": 1, "inconclusive": 2}
USAGE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(USAGE)


def _ints(text):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _dump(obj, args):
    if args.format == "csv":
        text = _to_csv(obj)
    else:
        text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _to_csv(obj):
    """Rows as a table when present, else flat ``key,value`` pairs."""
    buf = io.StringIO()
    rows = obj.get("rows") if isinstance(obj, dict) else None
    if rows:
        keys = sorted({k for row in rows for k in row})
        writer = csv.DictWriter(buf, keys, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _cell(row.get(k)) for k in keys})
    else:
        writer = csv.writer(buf, lineterminator="\n")
        for k, v in sorted(obj.items()):
            writer.writerow([k, _cell(v)])
    return buf.getvalue()


def _cell(v):
    return json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v


def _load_config(path):
    with open(path) as fh:
        return PointConfiguration.from_csv(fh.read())


def _load_complex(path):
    with open(path) as fh:
        return SimplicialComplex.from_json(fh.read())


def _search_code(status):
    return {Outcome.FOUND: 0, Outcome.EXHAUSTED: 1, Outcome.BUDGET: 2}[status]


# --- subcommands ------------------------------------------------------------


def cmd_gen(args):
    if args.kind == "moment":
        params = args.params or tuple(range(1, args.n + 1))
        cfg = moment_curve_points(args.d, list(params))
    else:
        cfg = random_rational_config(args.n, args.d, args.seed, args.denominator_bound)
    text = cfg.to_csv() if args.format == "csv" else json.dumps(
        {"dim": cfg.dim, "points": [[str(c) for c in p] for p in cfg.points]}, indent=2
    ) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_search(args):
    cfg = _load_config(args.config)
    res = find_tverberg_partition(cfg, args.r, args.sizes, args.budget, args.workers)
    _dump(res.to_dict(), args)
    return _search_code(res.status)


def cmd_refute(args):
    cfg = _load_config(args.config)
    res = refute_occurrence(cfg, args.r, args.sizes, args.budget, args.workers)
    _dump(res.to_dict(), args)
    # a refutation passes when nothing is found
    return {Outcome.EXHAUSTED: 0, Outcome.FOUND: 1, Outcome.BUDGET: 2}[res.status]


def cmd_cexmap(args):
    g = random_rational_config(args.n + 1, args.d - 1, args.gseed)
    if args.action == "build":
        v = strong_general_position_check(g, args.r, args.budget or 10 ** 6, args.seed, max_part_size=args.d - 1)
        f = build_counterexample_map(args.n, args.d, args.d1, g)
        _dump({"strong_general_position": v.status.value, "tuples_checked": v.checked, "map": f.to_dict()}, args)
        return {Status.HOLDS: 0, Status.VIOLATED: 1}.get(v.status, 2)
    f = build_counterexample_map(args.n, args.d, args.d1, g)
    res = search_map_violation(f, args.r, args.dims, args.budget or 100_000, args.seed, args.workers)
    _dump(res.to_dict(), args)
    return {Outcome.FOUND: 1, Outcome.EXHAUSTED: 0, Outcome.BUDGET: 2}[res.status]


def cmd_collapse(args):
    n = (args.r - 1) * args.d if args.n is None else args.n
    f = random_affine_join_map(args.r, n, args.d, args.seed)
    res = collapse_orbit(f)
    _dump({"map": f.to_dict(), "collapse": res.to_dict()}, args)
    return 0


BUILDERS = {
    "simplex": lambda a: simplex(a.n),
    "boundary": lambda a: simplex_boundary(a.n),
    "deleted-join": lambda a: deleted_join(a.n, a.r),
    "chessboard": lambda a: multiple_chessboard(a.m, a.columns, a.k or (1,) * a.columns),
    "sym-chessboard": lambda a: symmetric_multiple_chessboard(a.m, a.columns, a.k or (1,) * a.columns),
    "circle-join": lambda a: circle_join_power(a.r, a.n).complex,
}


def cmd_complex(args):
    if args.action == "build":
        if args.n is None:
            args.n = 2
        cx = BUILDERS[args.kind](args)
        if args.subdivide:
            cx = barycentric_subdivision(cx)
        text = cx.to_json() + "\n"
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0
    if args.action == "hom":
        h = homology(_load_complex(args.file), args.coefficients)
        _dump(h.to_dict(), args)
        return 0
    if args.action == "shell":
        res = is_shellable(_load_complex(args.file), args.budget or 100_000)
        _dump(res.to_dict(), args)
        return {Shellability.SHELLABLE: 0, Shellability.NOT_SHELLABLE: 1}.get(res.status, 2)
    dims = args.dims or balanced_dims(args.r, args.d)
    n = (args.r - 1) * (args.d + 2) if args.n is None else args.n
    rep = verify_constraint_zero_set(n, args.r, DimensionTuple(args.r, args.d, dims))
    _dump(rep.to_dict(), args)
    return 0 if rep.passed else 1


def cmd_run(args):
    verdict, report = run_experiment(args.experiment, args.params, args.seed, args.budget, args.workers)
    _dump(report, args)
    return EXIT[verdict]


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=None)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--out", default=None)
    common.add_argument("--format", choices=("json", "csv"), default="json")

    p = _Parser(prog="tverberg", description="Exact affine Tverberg-type computations.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common], help="generate a point configuration")
    g.add_argument("kind", choices=("moment", "random"))
    g.add_argument("--d", type=int, required=True)
    g.add_argument("--n", type=int, default=None)
    g.add_argument("--params", type=_ints, default=None, help="moment curve parameters")
    g.add_argument("--denominator-bound", type=int, default=16)
    g.set_defaults(func=cmd_gen)

    for name, func, helptext in (
        ("search", cmd_search, "find a Tverberg partition"),
        ("refute", cmd_refute, "prove no partition with given part sizes exists"),
    ):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("config", help="CSV file with a dim=<d> header")
        s.add_argument("--r", type=int, required=True)
        s.add_argument("--sizes", type=_ints, default=None, required=name == "refute")
        s.set_defaults(func=func)

    c = sub.add_parser("cexmap", parents=[common], help="counterexample map")
    c.add_argument("action", choices=("build", "probe"))
    c.add_argument("--r", type=int, default=3)
    c.add_argument("--d", type=int, default=3)
    c.add_argument("--n", type=int, default=13)
    c.add_argument("--d1", type=int, default=1)
    c.add_argument("--gseed", type=int, default=6)
    c.add_argument("--dims", type=_ints, default=(1, 2, 3), help="face dimensions for probe")
    c.set_defaults(func=cmd_cexmap)

    o = sub.add_parser("collapse", parents=[common], help="collapse an orbit of a random affine join map")
    o.add_argument("--r", type=int, required=True)
    o.add_argument("--d", type=int, required=True)
    o.add_argument("--n", type=int, default=None)
    o.set_defaults(func=cmd_collapse)

    x = sub.add_parser("complex", parents=[common], help="simplicial complexes")
    x.add_argument("action", choices=("build", "hom", "shell", "phi-verify"))
    x.add_argument("kind", nargs="?", choices=sorted(BUILDERS), help="for build")
    x.add_argument("--file", help="complex JSON for hom and shell")
    x.add_argument("--n", type=int, default=None, help="simplex dimension (default 2) or N for phi-verify")
    x.add_argument("--r", type=int, default=2)
    x.add_argument("--d", type=int, default=1)
    x.add_argument("--m", type=int, default=3)
    x.add_argument("--columns", type=int, default=2)
    x.add_argument("--k", type=_ints, default=None)
    x.add_argument("--dims", type=_ints, default=None)
    x.add_argument("--subdivide", action="store_true")
    x.add_argument("--coefficients", type=int, default=0, help="0 for integers or a prime p")
    x.set_defaults(func=cmd_complex)

    r = sub.add_parser("run", parents=[common], help="run a registered experiment")
    r.add_argument("experiment", choices=sorted(REGISTRY))
    r.add_argument("params", nargs="*", metavar="key=value")
    r.set_defaults(func=cmd_run)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "complex":
            if args.action == "build" and not args.kind:
                raise UsageError("complex build needs a kind")
            if args.action in ("hom", "shell") and not args.file:
                raise UsageError(f"complex {args.action} needs --file")
        if args.command == "gen" and args.kind == "random" and args.n is None:
            raise UsageError("gen random needs --n")
        if args.command == "gen" and args.kind == "moment" and args.n is None and args.params is None:
            raise UsageError("gen moment needs --n or --params")
        return args.func(args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"tverberg: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())

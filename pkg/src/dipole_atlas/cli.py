"""
Command-line front end: ``dipole-atlas`` (or ``python -m dipole_atlas``).

Exit status is 0 on success, 1 on a usage error and 2 when a verification
fails.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import appendix, checks, genus, oracle
from .central import psi
from .series import to_json

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2

SERIES_CHOICES = ("B0", "B1", "B2", "Gamma0", "Gamma1", "Gamma2")
# the tables alone do not reproduce the counts, so they are not offered here
PATHS = [p.value for p in genus.Path if p is not genus.Path.APPENDIX_TABLE]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def threads() -> int:
    """Worker cap from ``DIPOLE_ATLAS_THREADS`` (default 1, i.e. serial)."""
    raw = os.environ.get("DIPOLE_ATLAS_THREADS", "1")
    try:
        val = int(raw)
    except ValueError:
        raise UsageError(f"DIPOLE_ATLAS_THREADS must be an integer, got {raw!r}")
    return max(1, val)


def _order(args, needed: int = 0) -> int:
    order = max(args.order, needed)
    if order > genus.MAX_SAFE_ORDER and not args.unsafe_order:
        raise UsageError(f"order {order} exceeds {genus.MAX_SAFE_ORDER}; pass --unsafe-order to insist")
    return order


def _emit(obj, fmt: str):
    if fmt == "json":
        print(json.dumps(obj, indent=1))
    else:
        print(obj)


# commands -------------------------------------------------------------------

def cmd_count(args) -> int:
    path = genus.Path(args.path)
    if args.kind == "pqn":
        order = _order(args, args.n - 1)
        val = genus.pqn_count(args.p, args.q, args.n, args.g, order, path)
        rec = {"p": args.p, "q": args.q, "n": args.n, "g": args.g, "count": val}
    else:
        n = args.a + args.b + args.c + args.d + 2
        order = _order(args, n - 1)
        val = genus.abcd_count(args.a, args.b, args.c, args.d, args.g, order, path)
        rec = {"a": args.a, "b": args.b, "c": args.c, "d": args.d, "g": args.g, "count": val}
    _emit(rec if args.format == "json" else val, args.format)
    return EXIT_OK


def _table_slice(job):
    n_max, g, order, path = job
    return genus.phi_count_table(n_max, g, order, path, genera=(g,)).rows


def cmd_table(args) -> int:
    order = _order(args, args.n_max - 1)
    path = genus.Path(args.path)
    jobs = [(args.n_max, g, order, path) for g in range(args.g_max + 1)]
    workers = min(threads(), len(jobs))
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_table_slice, jobs))
    else:
        parts = [_table_slice(j) for j in jobs]
    rows = sorted((r for part in parts for r in part), key=lambda r: (r[2], r[3], r[0], r[1]))
    table = genus.CountTable(("p", "q", "n", "g", "count"), rows)
    sys.stdout.write(table.to_json() + "\n" if args.format == "json" else table.to_csv())
    return EXIT_OK


def cmd_series(args) -> int:
    order = _order(args)
    kind, g = args.which.rstrip("012"), int(args.which[-1])
    fn = genus.b_genus if kind == "B" else genus.gamma_genus
    s = fn(g, order, genus.Path(args.path))
    if args.forget:
        s = s.forget()
    print(to_json(s, indent=args.indent))
    return EXIT_OK


def _partition(text: str) -> tuple:
    parts = tuple(int(t) for t in text.replace(",", " ").split())
    if not parts or min(parts) < 1:
        raise UsageError(f"not a partition: {text!r}")
    return parts


def cmd_psi(args) -> int:
    lam = _partition(" ".join(args.partition))
    _emit({"partition": list(sorted(lam, reverse=True)), "psi": psi(lam)}
          if args.format == "json" else psi(lam), args.format)
    return EXIT_OK


def cmd_oracle_count(args) -> int:
    if args.filter is None and args.n is None:
        raise UsageError("oracle count needs --n or --filter")
    if args.filter is None:
        hist = oracle.pqn_histogram(args.n, allow_large=args.unsafe_order)
        rows = [{"p": p, "q": q, "n": args.n, "g": g, "count": c}
                for (p, q, g), c in sorted(hist.items(), key=lambda t: (t[0][2], t[0][0], t[0][1]))]
        _emit(rows, "json")
        return EXIT_OK
    flt = oracle.parse_filter(args.filter)
    if args.n is not None and flt.n != args.n:
        raise UsageError(f"--n {args.n} disagrees with the filter (n={flt.n})")
    val = oracle.count(flt, allow_large=args.unsafe_order)
    _emit({"filter": args.filter, "count": val} if args.format == "json" else val, args.format)
    return EXIT_OK


def cmd_appendix(args) -> int:
    order = _order(args)
    rec = appendix.reconcile(genus.truncation(order), errata=args.errata, variant=args.variant)
    print(rec.report())
    return EXIT_OK if rec.ok else EXIT_VERIFY


def _report(results, stream=None) -> int:
    stream = stream or sys.stdout
    failed = None
    for res in results:
        print(res.line(), file=stream)
        if not res.ok and failed is None:
            failed = res
    if failed is not None:
        print(f"FAILED: {failed.suite}: {failed.name}", file=stream)
        return EXIT_VERIFY
    print("all checks passed", file=stream)
    return EXIT_OK


def _check_max_n(args):
    if args.max_n < 2:
        raise UsageError("--max-n must be at least 2")
    if args.max_n > genus.MAX_SAFE_ORDER + 1 and not args.unsafe_order:
        raise UsageError(f"--max-n above {genus.MAX_SAFE_ORDER + 1} needs --unsafe-order")


def cmd_oracle_verify(args) -> int:
    _check_max_n(args)
    return _report(checks.run(args.max_n, ("psi", "oracle")))


def cmd_verify(args) -> int:
    _check_max_n(args)
    return _report(checks.run(args.max_n, args.suite or None))


# parser -----------------------------------------------------------------------

def _order_flags(p, default=genus.DEFAULT_ORDER):
    p.add_argument("--order", type=int, default=default,
                   help=f"series truncation order (default {default}, counts need n-1)")
    p.add_argument("--unsafe-order", action="store_true",
                   help=f"allow orders above {genus.MAX_SAFE_ORDER}")


def _path_flag(p, default="procedural"):
    p.add_argument("--path", choices=PATHS, default=default,
                   help=f"solution path (default {default})")


def _format_flag(p, choices=("text", "json")):
    p.add_argument("--format", choices=choices, default=choices[0])


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="dipole-atlas",
                 description="Exact counts of (p,q,n)-dipoles on orientable surfaces.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    count = sub.add_parser("count", help="a single count from the series")
    csub = count.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    pqn = csub.add_parser("pqn", help="(p,q,n)-dipoles of genus g")
    for name in ("p", "q", "n", "g"):
        pqn.add_argument(f"--{name}", type=int, required=True)
    abcd = csub.add_parser("abcd", help="(a,b,c,d)-dipoles of genus g")
    for name in ("a", "b", "c", "d", "g"):
        abcd.add_argument(f"--{name}", type=int, required=True)
    for p in (pqn, abcd):
        _order_flags(p)
        _path_flag(p)
        _format_flag(p)
        p.set_defaults(func=cmd_count)

    table = sub.add_parser("table", help="all (p,q,n,g) counts up to n-max, g-max")
    table.add_argument("--n-max", type=int, required=True)
    table.add_argument("--g-max", type=int, required=True)
    table.add_argument("--format", choices=("json", "csv"), default="json")
    _order_flags(table)
    _path_flag(table)
    table.set_defaults(func=cmd_table)

    series = sub.add_parser("series", help="series output")
    ssub = series.add_subparsers(dest="action", required=True, parser_class=_Parser)
    dump = ssub.add_parser("dump", help="print a genus slice as JSON terms")
    dump.add_argument("--which", choices=SERIES_CHOICES, required=True)
    dump.add_argument("--forget", action="store_true", help="apply the forgetting map first")
    dump.add_argument("--indent", type=int, default=None)
    _order_flags(dump)
    _path_flag(dump, default="closed")
    dump.set_defaults(func=cmd_series)

    ps = sub.add_parser("psi", help="rooted dipoles with face degrees 2*lambda")
    ps.add_argument("partition", nargs="+", help="parts, e.g. '3 1 1' or '3,1,1'")
    _format_flag(ps)
    ps.set_defaults(func=cmd_psi)

    orc = sub.add_parser("oracle", help="brute-force enumeration")
    osub = orc.add_subparsers(dest="action", required=True, parser_class=_Parser)
    oc = osub.add_parser("count", help="exhaustive count")
    oc.add_argument("--n", type=int)
    oc.add_argument("--filter", help="pqn:p,q,n,g | abcd:a,b,c,d,g | face:l1,l2,...")
    oc.add_argument("--unsafe-order", action="store_true",
                    help=f"allow n above {oracle.MAX_N}")
    _format_flag(oc)
    oc.set_defaults(func=cmd_oracle_count)
    ov = osub.add_parser("verify", help="oracle against the series")
    ov.add_argument("--max-n", type=int, default=8)
    ov.add_argument("--unsafe-order", action="store_true")
    ov.set_defaults(func=cmd_oracle_verify)

    app = sub.add_parser("appendix", help="compare the genus-2 coefficient tables with the recursion")
    app.add_argument("--errata", action="store_true", help="apply the shipped errata first")
    app.add_argument("--variant", action="store_true",
                     help="compare with the recursion driven by the B2 variant")
    _order_flags(app, default=checks.APPENDIX_ORDER)
    app.set_defaults(func=cmd_appendix)

    ver = sub.add_parser("verify", help="run the self-verification suites")
    ver.add_argument("--max-n", type=int, default=6)
    ver.add_argument("--suite", action="append", choices=tuple(checks.SUITES),
                     help="restrict to a suite (repeatable)")
    ver.add_argument("--unsafe-order", action="store_true")
    ver.set_defaults(func=cmd_verify)
    return ap


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ValueError, genus.UnsupportedGenusError, oracle.ResourceGuardError) as e:
        print(f"dipole-atlas: error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()

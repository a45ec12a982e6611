"""Command-line front end: every computation with JSON/plain output and a disk cache.

Exit codes: 0 success (or all checks passed), 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import __version__, acceptance
from .floer import eigen_verify, hilbert_compare, solve_subleading
from .poly import ALPHA, OMEGA, Poly
from .relations import GeneratorSet, igen, jgen_n1, rho_proj, rho_series, xi

USAGE_ERROR = 2


def default_cache_dir() -> str:
    env = os.environ.get("FLOER_CACHE_DIR")
    if env:
        return env
    return str(Path.home() / ".cache" / "floer")


class Cache:
    """One JSON file per key; atomic write-temp-then-rename; byte-stable payloads."""

    def __init__(self, directory: Optional[str], enabled: bool = True):
        self.directory = directory
        self.enabled = enabled and directory is not None

    def _path(self, key: str) -> str:
        safe = re.sub(r"[^A-Za-z0-9_.+-]", "_", key)
        return os.path.join(self.directory, safe + ".json")

    def get(self, key: str):
        if not self.enabled:
            return None
        path = self._path(key)
        if not os.path.exists(path):
            return None
        with open(path) as fh:
            entry = json.load(fh)
        return entry.get("payload")

    def put(self, key: str, payload) -> None:
        if not self.enabled:
            return
        os.makedirs(self.directory, exist_ok=True)
        path = self._path(key)
        entry = {"key": key, "tool_version": __version__, "payload": payload}
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(entry, fh, sort_keys=True, indent=1)
        os.replace(tmp, path)


def dump_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=1)


def _print_poly(p: Poly, args) -> None:
    if args.json:
        print(dump_json(p.to_json()))
    else:
        shown = p.change_coordinates(ALPHA if args.alpha_coords else OMEGA)
        print(shown)


def _print_genset(gs: GeneratorSet, args) -> None:
    if args.json:
        print(dump_json(gs.to_json()))
    else:
        print(f"# {gs.label}")
        for name, p in gs.gens:
            shown = p.change_coordinates(ALPHA if args.alpha_coords else OMEGA)
            print(f"{name} = {shown}")


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"malformed rational {text!r}")


def _odd_positive(text: str) -> int:
    value = int(text)
    if value < 1 or value % 2 == 0:
        raise argparse.ArgumentTypeError("n must be a positive odd integer")
    return value


def _odd_int(text: str) -> int:
    value = int(text)
    if value % 2 == 0:
        raise argparse.ArgumentTypeError("expected an odd integer")
    return value


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="floer",
        description="Exact computations with the relation families and quotient "
                    "models of one-manifold-times-surface instanton homology rings.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON documents")
    common.add_argument("--alpha-coords", action="store_true",
                        help="print polynomials in alpha-coordinates (default omega)")
    common.add_argument("--cache-dir", default=None,
                        help="cache directory (default $FLOER_CACHE_DIR or ~/.cache/floer)")
    common.add_argument("--no-cache", action="store_true", help="disable the disk cache")
    common.add_argument("--timestamps", action="store_true",
                        help="include a timestamp field in JSON output")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add_parser("xi", help="Mumford relation xi_{k,n}")
    p.add_argument("--k", type=_nonneg, required=True)
    p.add_argument("--n", type=_odd_int, required=True)

    p = add_parser("rho", help="rho_{k,r} in omega and beta")
    p.add_argument("--k", type=_nonneg, required=True)
    p.add_argument("--r", type=_odd_int, required=True)
    p.add_argument("--method", choices=["projection", "series"], default="projection")

    p = add_parser("igen", help="graded ideal generator set")
    p.add_argument("--g", type=_nonneg, required=True)
    p.add_argument("--n", type=_odd_positive, required=True)
    p.add_argument("--parity", choices=["even", "odd"], required=True)

    p = add_parser("jgen", help="one-point ideal generator set")
    p.add_argument("--g", type=_nonneg, required=True)
    p.add_argument("--sign", choices=["plus", "minus"], default="plus")
    p.add_argument("--local", action="store_true")

    p = add_parser("hilbert", help="graded dimensions against a closed formula")
    p.add_argument("--g", type=_nonneg, required=True)
    p.add_argument("--n", type=_odd_positive, required=True)
    p.add_argument("--source", choices=["ptgn", "total", "k"], required=True)
    p.add_argument("--max-degree", type=_nonneg, required=True)

    p = add_parser("eigen", help="spectral verification of a one-point model")
    p.add_argument("--g", type=_nonneg, required=True)
    p.add_argument("--sign", choices=["plus", "minus"], default="plus")
    p.add_argument("--theta", type=_parse_fraction, default=None,
                   help="rational local-coefficient specialization u = theta")

    p = add_parser("solve", help="sub-leading solver at three points")
    p.add_argument("--g", type=_nonneg, required=True)
    p.add_argument("--n", type=_odd_positive, default=3)

    p = add_parser("verify", help="run the verification suite")
    p.add_argument("--suite", default="all",
                   choices=["all"] + sorted(acceptance.SUITES))
    p.add_argument("--g-max", type=_nonneg, default=None)
    p.add_argument("--n-max", type=_odd_positive, default=None)
    return parser


def _sign(text: str) -> str:
    return "+" if text == "plus" else "-"


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    cache_dir = args.cache_dir or default_cache_dir()
    cache = Cache(cache_dir, enabled=not args.no_cache)

    def emit_cached(key: str, compute):
        payload = cache.get(key)
        if payload is None:
            payload = compute()
            cache.put(key, payload)
        doc = dict(payload)
        if args.timestamps:
            doc["timestamp"] = time.time()
        print(dump_json(doc))

    try:
        if args.command == "xi":
            _print_poly(xi(args.k, args.n), args)
        elif args.command == "rho":
            if args.method == "projection":
                if args.r < 1:
                    parser.error("projection method needs r >= 1")
                p = rho_proj(args.k, args.r, 0)
            else:
                p = rho_series(args.k, args.r)
            if args.json:
                print(dump_json(p.to_json()))
            else:
                print(p)
        elif args.command == "igen":
            gs = igen(args.g, args.n, args.parity)
            if args.json:
                emit_cached(f"igen_g{args.g}_n{args.n}_{args.parity}", gs.to_json)
            else:
                _print_genset(gs, args)
        elif args.command == "jgen":
            gs = jgen_n1(args.g, _sign(args.sign), local=args.local)
            if args.json:
                emit_cached(f"jgen_g{args.g}_{args.sign}_local{int(args.local)}",
                            gs.to_json)
            else:
                _print_genset(gs, args)
        elif args.command == "hilbert":
            rep = hilbert_compare(args.g, args.n, args.source, args.max_degree)
            if args.json:
                emit_cached(
                    f"hilbert_g{args.g}_n{args.n}_{args.source}_d{args.max_degree}",
                    rep.to_json)
            else:
                for d, c, f in rep.degrees:
                    if c or f or d % 2 == 0:
                        print(f"degree {d}: computed {c}, formula {f}")
                print("match" if rep.match else "MISMATCH")
            return 0 if rep.match else 1
        elif args.command == "eigen":
            if args.g < 1:
                parser.error("eigen needs g >= 1")
            rep = eigen_verify(args.g, _sign(args.sign), theta=args.theta)
            if args.json:
                theta_key = "1" if args.theta is None else str(args.theta)
                emit_cached(
                    f"eigen_g{args.g}_{args.sign}_theta{theta_key}", rep.to_json)
            else:
                print(f"subspace dim {rep.subspace_dim} of {rep.total_dim}")
                for t in rep.tuples:
                    print(f"  (alpha,beta,gamma,delta)=({t['alpha']},{t['beta']},"
                          f"{t['gamma']},{t['delta'][0]}) mult {t['gen_mult']}")
        elif args.command == "solve":
            if args.n != 3:
                parser.error("solver supports n = 3 only")
            gs = solve_subleading(args.g, 3)
            if args.json:
                emit_cached(f"solve_g{args.g}_n3", gs.to_json)
            else:
                _print_genset(gs, args)
        elif args.command == "verify":
            results = acceptance.run_suite(
                args.suite, g_max=args.g_max, n_max=args.n_max,
                cache_dir=cache_dir if not args.no_cache else None,
                no_cache=args.no_cache)
            return 0 if all(r.passed for r in results) else 1
    except AssertionError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except SystemExit as exc:  # parser.error inside a subcommand
        return USAGE_ERROR if exc.code not in (0, None) else 0
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

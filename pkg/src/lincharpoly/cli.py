"""Command-line front end.

Instances are ``key=value`` tokens separated by whitespace or newlines::

    # L = Z^343 + Z^49 + Z^7 + Z over F_49
    p=7 e=1 m=2
    t=1|1|1|1
    l=20

``t`` lists t_0 first; each coefficient is a comma-separated encoding over
the field directly below F_{q^m} (short encodings are zero-padded).

Exit status: 0 success, 2 bad input, 3 an internal consistency check failed.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from .errors import Falsification, InvalidInstance, LinCharpolyError, NotPrime, ParseError
from .ff import extend_field, make_field, parse_element
from .fastalg import fast_charpoly, make_plan
from .linmap import LinearizedPoly, charpoly_direct
from .recurrence import dumps

EXIT_OK, EXIT_INPUT, EXIT_FALSIFIED = 0, 2, 3

_KEYS = ("p", "e", "m", "t", "l")


@dataclass(frozen=True)
class InstanceSpec:
    p: int
    e: int
    m: int
    t: tuple  # coefficient encodings, as written
    ell: int | None
    L: LinearizedPoly

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def r(self) -> int:
        return self.L.r

    def text(self) -> str:
        out = f"p={self.p} e={self.e} m={self.m} t={'|'.join(self.t)}"
        return out + (f" l={self.ell}" if self.ell is not None else "")


def parse_instance(text: str) -> InstanceSpec:
    vals: dict = {}
    where: dict = {}
    for ln, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0]
        col = 0
        for tok in body.split():
            col = body.index(tok, col) + 1
            key, sep, val = tok.partition("=")
            if not sep or not val:
                raise ParseError(f"expected key=value, got {tok!r}", ln, col)
            if key not in _KEYS:
                raise ParseError(f"unknown key {key!r}", ln, col)
            if key in vals:
                raise ParseError(f"duplicate key {key!r}", ln, col)
            vals[key] = val
            where[key] = (ln, col)
            col += len(tok) - 1
    for key in ("p", "m", "t"):
        if key not in vals:
            raise ParseError(f"missing key {key!r}")
    ints = {}
    for key in ("p", "e", "m", "l"):
        if key in vals:
            try:
                ints[key] = int(vals[key])
            except ValueError:
                raise ParseError(f"{key} must be an integer", *where[key]) from None
            if ints[key] < 1:
                raise InvalidInstance(f"{key} must be positive")
    p, e, m = ints["p"], ints.get("e", 1), ints["m"]
    try:
        F = make_field(p, e)
    except NotPrime as exc:
        raise InvalidInstance(str(exc)) from None
    encs = tuple(vals["t"].split("|"))
    C = F if m == 1 else extend_field(F, m)
    try:
        coeffs = [parse_element(C, s) for s in encs]
    except ValueError as exc:
        raise ParseError(f"bad coefficient: {exc}", *where["t"]) from None
    L = LinearizedPoly(F, m, coeffs)
    return InstanceSpec(p, e, m, encs, ints.get("l"), L)


def _load(args) -> InstanceSpec:
    if args.text is not None:
        return parse_instance(args.text)
    if args.instance in (None, "-"):
        return parse_instance(sys.stdin.read())
    try:
        with open(args.instance, encoding="utf-8") as fh:
            return parse_instance(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {args.instance}: {exc.strerror}") from None


def cmd_charpoly(spec: InstanceSpec, mode: str = "fast", parallel: bool = False) -> str:
    if spec.ell is None:
        raise InvalidInstance("charpoly needs l=<level>")
    if mode == "baseline":
        f = charpoly_direct(spec.L, spec.ell)
    else:
        f = fast_charpoly(spec.L, spec.ell, parallel=parallel)
    return f.encode() + "\n"


def cmd_recurrence(spec: InstanceSpec) -> str:
    return dumps(make_plan(spec.L).recurrence, seeds=False)


def _add_instance_args(sp):
    sp.add_argument("instance", nargs="?", help="instance file ('-' or omitted: stdin)")
    sp.add_argument("--text", help="instance given inline instead of a file")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lincharpoly",
        description="Characteristic polynomials of q-linearized maps on finite fields.",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("charpoly", help="print C_L^(l) as 'c0;c1;...'")
    _add_instance_args(sp)
    sp.add_argument("--mode", choices=("fast", "baseline"), default="fast")
    sp.add_argument("--parallel", action="store_true", help="evaluate points in parallel")

    sp = sub.add_parser("recurrence", help="print the order and c_0..c_{d-1}")
    _add_instance_args(sp)

    sp = sub.add_parser("bench", help="time fast vs baseline over a grid, write CSV")
    sp.add_argument("--p", default="2", help="comma-separated primes")
    sp.add_argument("--e", default="1", help="comma-separated field exponents")
    sp.add_argument("--m", default="1")
    sp.add_argument("--r", default="2")
    sp.add_argument("--ells", default="128,256,512,1024,2048,4096,8192")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--cap", type=float, default=30.0, help="per-cell time cap in seconds")
    sp.add_argument("--repeat", type=int, default=3)
    sp.add_argument("--parallel", action="store_true")
    sp.add_argument("--out", default="-", help="CSV path ('-' for stdout)")
    sp.add_argument("--figure", help="also render a PNG of time against n")

    sp = sub.add_parser("selftest", help="run the embedded consistency checks")
    sp.add_argument("--mutate", action="store_true", help=argparse.SUPPRESS)
    return ap


def _ints(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise ParseError(f"expected comma-separated integers, got {s!r}") from None


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    try:
        if args.cmd == "charpoly":
            out.write(cmd_charpoly(_load(args), args.mode, args.parallel))
        elif args.cmd == "recurrence":
            out.write(cmd_recurrence(_load(args)))
        elif args.cmd == "bench":
            from .bench import BenchGrid, run_bench
            from .report import render_figure, write_csv

            grid = BenchGrid(
                primes=_ints(args.p), exps=_ints(args.e), ms=_ints(args.m), rs=_ints(args.r),
                ells=_ints(args.ells), seed=args.seed, cap=args.cap, repeat=args.repeat,
                parallel=args.parallel,
            )
            records = run_bench(grid)
            write_csv(records, out if args.out == "-" else args.out)
            if args.figure:
                render_figure(records, args.figure)
        elif args.cmd == "selftest":
            from .selftest import run_selftest

            return run_selftest(out, mutate=args.mutate)
    except Falsification as exc:
        print(f"falsified: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    except LinCharpolyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out.flush()
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

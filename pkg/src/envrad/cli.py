"""Command line entry point: ``envrad SESSION COMMAND ...``.

Results go to stdout as reduced Groebner bases, one generator per line.
Diagnostics go to stderr.  Exit codes: 1 parse error, 2 precondition or
invalid certificate, 3 oracle miss, 4 iteration limit.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from . import algebra
from .decomposition import (
    DEFAULT_KMAX,
    DecompositionOracle,
    closure,
    quasi_primary_split,
    verify_decomposition,
)
from .envelope import (
    DEFAULT_MAX_ITER,
    envelope,
    find_weak_counterexample,
    iterate_envelope,
    semiprime_spot_check,
    weakly_closure,
    weakly_radical,
)
from .errors import EnvradError, PreconditionError
from .groebner import Ideal
from .parser import parse_session, print_session

log = logging.getLogger("envrad")


def _default_max_iter():
    raw = os.environ.get("ENVRAD_MAX_ITER")
    if raw is None:
        return DEFAULT_MAX_ITER
    try:
        return int(raw)
    except ValueError:
        raise PreconditionError(f"ENVRAD_MAX_ITER must be an integer, got {raw!r}") from None


def render(sub):
    """Canonical text of a submodule or ideal."""
    if isinstance(sub, Ideal):
        return "\n".join(str(f) for f in sub.polys) if sub.gb else "0"
    return str(sub)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-iter", type=int, default=None,
                        help="envelope iteration limit (default 32 or $ENVRAD_MAX_ITER)")
    common.add_argument("--kmax", type=int, default=DEFAULT_KMAX,
                        help="largest k tried in the p^k M ⊆ Q check")
    common.add_argument("--oracle", action="append", default=[], metavar="FILE",
                        help="extra session file whose decompositions feed the oracle")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="envrad", description=__doc__.splitlines()[0])
    parser.add_argument("session", help="session file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="verify a decomposition certificate")
    p.add_argument("decomp")
    p = sub.add_parser("env", parents=[common], help="submodule generated by the envelope")
    p.add_argument("decomp")
    p.add_argument("--trace", action="store_true", help="print every summand")
    p = sub.add_parser("ue", parents=[common], help="union of iterated envelopes")
    p.add_argument("module")
    p = sub.add_parser("wcl", parents=[common], help="weakly p-closure of N + pM")
    p.add_argument("module")
    p.add_argument("-p", "--prime", required=True)
    p = sub.add_parser("wrad", parents=[common], help="weakly radical")
    p.add_argument("module")
    p.add_argument("-p", "--prime", action="append", default=None,
                   help="a minimal prime of (N:M), repeatable; computed when monomial")
    p = sub.add_parser("cl", parents=[common], help="p-closure from a decomposition")
    p.add_argument("decomp")
    p.add_argument("-p", "--prime", required=True)
    p = sub.add_parser("op", parents=[common], help="basic module operation")
    p.add_argument("kind", choices=["sum", "intersect", "colon", "sat", "ann", "prod"])
    p.add_argument("args", nargs="+")
    p = sub.add_parser("weakcheck", parents=[common], help="search for a weakly-prime violation")
    p.add_argument("module")
    p.add_argument("--bound", type=int, default=3)
    p = sub.add_parser("semicheck", parents=[common], help="search for a semiprime violation")
    p.add_argument("module")
    p.add_argument("--bound", type=int, default=2)
    p = sub.add_parser("split", parents=[common], help="quasi-primary split of a decomposition")
    p.add_argument("decomp")
    sub.add_parser("fmt", parents=[common], help="print the session in canonical form")
    return parser


def _oracle(session, args):
    fixtures = session.fixture_decompositions()
    for path in args.oracle:
        with open(path, encoding="utf-8") as fh:
            extra = parse_session(fh.read())
        if extra.ctx != session.ctx:
            raise PreconditionError(f"oracle file {path} uses a different ring or rank")
        fixtures.extend(extra.decomps.values())
    return DecompositionOracle(fixtures, automatic=True, kmax=args.kmax)


def run_command(session, args, err=None):
    """Execute a parsed command; returns ``(stdout text, exit code)``."""
    err = err or sys.stderr
    max_iter = args.max_iter if args.max_iter is not None else _default_max_iter()
    cmd = args.command
    if cmd == "fmt":
        return print_session(session).rstrip("\n"), 0
    if cmd == "verify":
        report = verify_decomposition(session.decomposition(args.decomp), args.kmax)
        return str(report), 0 if report.valid else 2
    if cmd == "env":
        trace = envelope(session.decomposition(args.decomp), kmax=args.kmax)
        if not args.trace:
            return render(trace.result), 0
        out = ["# N", render(trace.input), "# (" + "∩".join(
            f"p{i + 1}" for i in range(len(trace.decomposition.components))) + ")M",
            render(trace.radical_term)]
        for _, label, s in trace.summands:
            out += [f"# {label}", render(s)]
        out += ["# result", render(trace.result)]
        return "\n".join(out), 0
    if cmd == "ue":
        it = iterate_envelope(session.module(args.module), _oracle(session, args), max_iter)
        print(f"fixed point after {it.steps} step(s)", file=err)
        return render(it.fixed_point), 0
    if cmd == "wcl":
        N = session.module(args.module)
        p = session.parse_ideal(args.prime)
        return render(weakly_closure(N, p, _oracle(session, args), max_iter)), 0
    if cmd == "wrad":
        N = session.module(args.module)
        primes = [session.parse_ideal(t) for t in args.prime] if args.prime else None
        return render(weakly_radical(N, primes, _oracle(session, args), max_iter)), 0
    if cmd == "cl":
        D = session.decomposition(args.decomp)
        return render(closure(D, session.parse_ideal(args.prime))), 0
    if cmd == "op":
        return render(_op(session, args.kind, args.args)), 0
    if cmd == "weakcheck":
        verdict = find_weak_counterexample(session.module(args.module), args.bound)
        if verdict.witness is None:
            return f"no witness up to degree {args.bound}", 0
        a, b, m = verdict.witness
        return f"a={a} b={b} m={m}", 0
    if cmd == "semicheck":
        res = semiprime_spot_check(session.module(args.module), args.bound)
        if res.witness is None:
            return f"no violation up to degree {args.bound}", 0
        r, m, k = res.witness
        return f"r={r} m={m} k={k}", 0
    if cmd == "split":
        split = quasi_primary_split(session.decomposition(args.decomp))
        out = []
        for prime, f, D in split.groups:
            out += [f"# isolated prime {prime} separator {f}", render(D.target)]
        out += ["# remainder", render(split.remainder)]
        return "\n".join(out), 0
    raise PreconditionError(f"unknown command {cmd!r}")


def _op(session, kind, operands):
    need = {"sum": 2, "intersect": 2, "colon": 2, "sat": 2, "ann": 1, "prod": 2}[kind]
    if len(operands) != need:
        raise PreconditionError(f"op {kind} takes {need} argument(s)")
    if kind == "sum":
        return algebra.sum_modules(session.module(operands[0]), session.module(operands[1]))
    if kind == "intersect":
        return algebra.intersect(session.module(operands[0]), session.module(operands[1]))
    if kind == "colon":
        return algebra.colon_vector(session.module(operands[0]), session.parse_poly(operands[1]))
    if kind == "sat":
        return algebra.stable_quotient(session.module(operands[0]),
                                       session.parse_ideal(operands[1]))
    if kind == "ann":
        return algebra.colon_ideal_into_ideal(session.module(operands[0]))
    return algebra.ideal_module_product(session.parse_ideal(operands[0]),
                                        session.module(operands[1]))


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        with open(args.session, encoding="utf-8") as fh:
            session = parse_session(fh.read())
        out, code = run_command(session, args)
    except EnvradError as exc:
        print(f"envrad: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"envrad: {exc}", file=sys.stderr)
        return 2
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())

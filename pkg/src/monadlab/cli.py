"""monadlab command line.

Every subcommand prints one canonical JSON document on stdout. Exit codes:
0 success, 1 a verification check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from ._backend import set_threads
from .chern import (DEFAULT_M_RANGE, DEFAULT_N_RANGE, ComplexSpec, ComplexTerm, F2Params, chern_of_complex,
                    f2_complex_spec, solve_rank2_constraints)
from .classify import TheoremViolation, decide, explore_conjecture, witness_search
from .construct import ConstructionError, MonadShape, construct_monad
from .field import FieldSpec
from .io import (SCHEMA_VERSION, MatrixFileError, dumps, instance_to_json, read_instance,
                 search_report_to_json, write_instance)
from .verify import DEFAULT_BUDGET, BudgetExceeded, estimate_codimension, strata_counts, verify_lemma2, verify_monad

log = logging.getLogger("monadlab")

DEFAULT_PRIMES = [3, 5, 7, 11]
DEFAULT_TRIALS = 1000


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _primes(s: str):
    try:
        out = sorted({int(x) for x in s.split(",") if x.strip()})
        for q in out:
            FieldSpec.prime(q)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad prime list {s!r}: {exc}")
    return out


def _range(s: str):
    try:
        lo, hi = (int(x) for x in s.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {s!r}")
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {s!r}")
    return (lo, hi)


def _common(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--primes", type=_primes, default=list(DEFAULT_PRIMES), help="comma-separated primes")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max rank evaluations per enumeration")
    p.add_argument("--threads", type=int, default=None, help="kernel threads (default: MONADLAB_THREADS or all)")


def _shape_args(p):
    for name in "abck":
        p.add_argument(f"--{name}", type=int, required=True)


def _field_args(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--q", type=int, default=None, help="prime field F_q")
    g.add_argument("--rational", action="store_true", help="work over Q (default)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="monadlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("decide", help="evaluate the existence criterion for a shape")
    _shape_args(p)
    _common(p)

    p = sub.add_parser("construct", help="build a monad of the given shape")
    _shape_args(p)
    _field_args(p)
    _common(p)
    p.add_argument("--out", type=Path, default=None, help="matrix file to write")

    p = sub.add_parser("verify", help="verify a monad matrix file")
    p.add_argument("path", type=Path)
    _common(p)
    p.set_defaults(trials=64)

    p = sub.add_parser("strata", help="rank-drop point counts of a matrix or of the base complex")
    p.add_argument("path", type=Path, nargs="?")
    p.add_argument("--matrix", choices=["A", "B"], default="A")
    p.add_argument("--base", type=int, nargs=3, metavar=("R", "N", "M"), help="strata of the base complex A")
    _common(p)

    p = sub.add_parser("chern-eval", help="Chern classes of a line-bundle complex")
    p.add_argument("--r", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--terms", type=str, default=None, help="DEG:TWIST:RANK,... instead of --r/--m/--n")
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("--signed", action="store_true", help="accept negative ranks (shift across an arrow)")
    _common(p)

    p = sub.add_parser("chern-solve", help="(m, n) with c_3 = c_4 = 0 for the F2 complex")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--m-range", type=_range, default=DEFAULT_M_RANGE, help="LO:HI (default -3:15)")
    p.add_argument("--n-range", type=_range, default=DEFAULT_N_RANGE, help="LO:HI (default -3:30)")
    p.add_argument("--dim", type=int, default=4)
    _common(p)

    p = sub.add_parser("search", help="randomized witness search over F_q")
    _shape_args(p)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--max-witnesses", type=int, default=1)
    _common(p)

    p = sub.add_parser("explore", help="witness search for the codimension-2 complexes")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--max-witnesses", type=int, default=1)
    p.add_argument("--bound", type=int, default=10)
    _common(p)
    p.set_defaults(primes=[3, 5, 7])
    return parser


def _config(args) -> dict:
    cfg = {"seed": args.seed, "primes": args.primes, "trials": args.trials, "budget": args.budget}
    for extra in ("m_range", "n_range"):
        if hasattr(args, extra):
            cfg[extra] = list(getattr(args, extra))
    return cfg


def _shape(args) -> MonadShape:
    try:
        return MonadShape(args.a, args.b, args.c, args.k)
    except ValueError as exc:
        raise UsageError(str(exc))


def _field(args) -> FieldSpec:
    if args.q is None:
        return FieldSpec.rational()
    try:
        return FieldSpec.prime(args.q)
    except ValueError as exc:
        raise UsageError(str(exc))


def cmd_decide(args):
    return decide(_shape(args)).to_json() | {"shape": dict(zip("abck", _shape(args).as_tuple()))}, 0


def cmd_construct(args):
    M = construct_monad(_shape(args), _field(args), seed=args.seed)
    doc = {"shape": dict(zip("abck", M.shape.as_tuple())), "field": str(M.field),
           "route": M.provenance[0].get("route")}
    if args.out is not None:
        write_instance(M, args.out)
        doc["out"] = str(args.out)
    else:
        doc["instance"] = instance_to_json(M)
    return doc, 0


def cmd_verify(args):
    M = read_instance(args.path)
    rep = verify_monad(M, args.primes, trials=args.trials, seed=args.seed, budget=args.budget)
    return rep.to_json() | {"path": str(args.path)}, 0 if rep.is_monad else 1


def cmd_strata(args):
    if args.base is not None:
        r, n, m = args.base
        if r < 0 or n < 0 or m < 0:
            raise UsageError("--base values must be non-negative")
        rep = verify_lemma2(r, n, m, args.primes, args.budget)
        return {"base": rep.to_json()}, 0 if rep.ok else 1
    if args.path is None:
        raise UsageError("give a matrix file or --base R N M")
    M = read_instance(args.path)
    mat = M.A if args.matrix == "A" else M.B
    primes = [M.field.q] if M.field.q is not None else args.primes
    per_prime = {}
    for q in primes:
        mq = mat if M.field.q is not None else mat.reduce_mod(q)
        per_prime[q] = strata_counts(mq, q, budget=args.budget)
    full = min(mat.shape)
    ests = [estimate_codimension([per_prime[q][d - 1] for q in primes], M.shape.k).to_json()
            for d in range(1, full + 1)]
    return {"path": str(args.path), "matrix": args.matrix, "full_rank": full, "ambient_dim": M.shape.k,
            "counts": {str(q): [c.to_json() for c in cs] for q, cs in per_prime.items()},
            "estimates": ests}, 0


def _parse_terms(s: str):
    terms = []
    for chunk in s.split(","):
        try:
            d, t, rk = (int(x) for x in chunk.split(":"))
        except ValueError:
            raise UsageError(f"bad term {chunk!r}; expected DEG:TWIST:RANK")
        terms.append(ComplexTerm(d, t, rk))
    return terms


def cmd_chern_eval(args):
    try:
        if args.terms:
            spec = ComplexSpec(args.dim, tuple(_parse_terms(args.terms)))
            params = None
        else:
            if None in (args.r, args.m, args.n):
                raise UsageError("give --r, --m and --n, or --terms")
            params = F2Params(args.r, args.m, args.n)
            spec = f2_complex_spec(params, args.dim, signed=args.signed)
        cv = chern_of_complex(spec, signed=args.signed)
    except ValueError as exc:
        raise UsageError(str(exc))
    doc = {"dim": spec.dim, "terms": [[t.degree, t.twist, t.rank] for t in spec.terms],
           "rank": cv.rank, "chern": [str(x) for x in cv.c]}
    if params is not None:
        doc["params"] = {"r": params.r, "m": params.m, "n": params.n}
    return doc, 0


def cmd_chern_solve(args):
    sols = solve_rank2_constraints(args.r, args.m_range, args.n_range, args.dim)
    return {"r": args.r, "dim": args.dim, "solutions": [list(s) for s in sols]}, 0


def cmd_search(args):
    try:
        FieldSpec.prime(args.q)
    except ValueError as exc:
        raise UsageError(str(exc))
    try:
        rep = witness_search(_shape(args), args.q, args.trials, args.seed, args.max_witnesses, budget=args.budget)
    except TheoremViolation as exc:
        print(f"monadlab: THEOREM VIOLATION: {exc}", file=sys.stderr)
        return search_report_to_json(exc.report) | {"theorem_violation": True}, 1
    return search_report_to_json(rep), 0


def cmd_explore(args):
    try:
        FieldSpec.prime(args.q)
    except ValueError as exc:
        raise UsageError(str(exc))
    try:
        rep = explore_conjecture(args.k, args.r, args.n, args.q, args.trials, args.seed, args.primes,
                                 args.bound, args.max_witnesses, budget=args.budget)
    except ValueError as exc:
        raise UsageError(str(exc))
    return search_report_to_json(rep), 0


COMMANDS = {
    "decide": cmd_decide,
    "construct": cmd_construct,
    "verify": cmd_verify,
    "strata": cmd_strata,
    "chern-eval": cmd_chern_eval,
    "chern-solve": cmd_chern_solve,
    "search": cmd_search,
    "explore": cmd_explore,
}


def run(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="monadlab: %(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    set_threads(args.threads)
    try:
        doc, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"monadlab: usage error: {exc}", file=sys.stderr)
        return 2
    except MatrixFileError as exc:
        print(f"monadlab: malformed matrix file: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"monadlab: budget exceeded: {exc}", file=sys.stderr)
        return 2
    except ConstructionError as exc:
        print(f"monadlab: construction failed: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"monadlab: I/O error: {exc}", file=sys.stderr)
        return 2
    out = {"schema_version": SCHEMA_VERSION, "command": args.command, "config": _config(args)}
    out.update(doc)
    sys.stdout.write(dumps(out))
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

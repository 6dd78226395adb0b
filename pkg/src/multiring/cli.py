"""Command-line interface.

Exit codes: 0 success, 1 failed axiom or negative decision, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import sys
import warnings

from . import bridges, constructions
from .axioms import AX2_CONVENTIONS, PROFILES, check
from .core import ConstructionError, FiniteMultiring, RejectedInput, UsageError
from .corpus import format_rows, verify_corpus
from .fileio import load_structure, serialize_structure
from .forms import MODES, failure_reason, iso_decide, parse_form


def _names(A, text: str) -> list[int]:
    if not text.strip():
        return []
    return [A.index(p.strip()) for p in text.split(",")]


def _multiring(path) -> FiniteMultiring:
    s = load_structure(path)
    if not isinstance(s, FiniteMultiring):
        raise UsageError(f"{path}: expected a multiring file")
    return s


def _emit(s, args) -> None:
    text = serialize_structure(s)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_check(args) -> int:
    s = load_structure(args.file)
    opts = {}
    if args.presentation:
        if args.profile not in ("prs", "rs"):
            raise UsageError("--presentation applies to prs and rs only")
        opts["presentation"] = args.presentation
    if args.ax2:
        if args.profile != "ars":
            raise UsageError("--ax2 applies to ars only")
        opts["ax2"] = args.ax2
    report = check(s, args.profile, **opts)
    print(report)
    return 0 if report else 1


def cmd_construct(args) -> int:
    what = args.what
    rest = args.args
    if what == "q2":
        _arity(rest, 0, "construct q2")
        s = constructions.build_q2()
    elif what == "power":
        _arity(rest, 2, "construct power K FILE")
        try:
            k = int(rest[0])
        except ValueError:
            raise UsageError(f"power exponent must be an integer, got {rest[0]!r}") from None
        if k < 1:
            raise UsageError("power exponent must be positive")
        s = constructions.power(_multiring(rest[1]), k)
    elif what == "qred":
        _arity(rest, 1, "construct qred FILE")
        s, _ = constructions.q_red(_multiring(rest[0]))
    elif what == "mquot":
        _arity(rest, 1, "construct mquot FILE --s-set ...")
        if args.s_set is None:
            raise UsageError("mquot needs --s-set")
        A = _multiring(rest[0])
        s, _ = constructions.marshall_quotient(A, _names(A, args.s_set))
    elif what == "zsign":
        _arity(rest, 0, "construct zsign --bound N")
        if args.bound is None:
            raise UsageError("zsign needs --bound")
        s = constructions.z_sign_quotient(args.bound)
    elif what == "gt":
        _arity(rest, 1, "construct gt FILE [--gens ...]")
        A = _multiring(rest[0])
        T = None if args.gens is None else constructions.preorder_closure(A, _names(A, args.gens))
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            s, _ = constructions.g_T(A, T)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
    else:
        raise UsageError(f"unknown construction {what!r}")
    _emit(s, args)
    return 0


def _arity(rest, k, usage):
    if len(rest) != k:
        raise UsageError(f"usage: {usage}")


def cmd_sper(args) -> int:
    A = _multiring(args.file)
    points = constructions.sper(A)
    Q = constructions.build_q2()
    print(f"{len(points)} signature(s) of {A.name or args.file}")
    for i, s in enumerate(points):
        pairs = ", ".join(f"{A.elems[a]}->{Q.elems[s.map[a]]}" for a in range(A.n))
        print(f"  s{i}: {pairs}")
    return 0


def cmd_translate(args) -> int:
    s = load_structure(args.file)
    _emit(bridges.translate(s, args.to), args)
    return 0


def cmd_iso(args) -> int:
    A = _multiring(args.file)
    phi, psi = parse_form(A, args.lhs), parse_form(A, args.rhs)
    ok, witness = iso_decide(phi, psi, args.mode)
    if ok:
        print(f"{phi} ~{args.mode} {psi}: isometric")
        if args.witness:
            print(witness.render(A))
        return 0
    print(f"{phi} ~{args.mode} {psi}: not isometric ({failure_reason(phi, psi, args.mode)})")
    return 1


def cmd_duality(args) -> int:
    report = bridges.duality_check(load_structure(args.file))
    print(report)
    return 0 if report else 1


def cmd_corpus(args) -> int:
    rows = verify_corpus(args.dir)
    print(format_rows(rows))
    return 0 if all(r.ok for r in rows) else 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="multiring", description="Finite multiring and real semigroup workbench.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="check a structure against an axiom profile")
    c.add_argument("file")
    c.add_argument("--profile", required=True, choices=PROFILES)
    c.add_argument("--presentation", choices=("RS", "DT"))
    c.add_argument("--ax2", choices=AX2_CONVENTIONS)
    c.set_defaults(run=cmd_check)

    c = sub.add_parser("construct", help="build a structure file")
    c.add_argument("what", choices=("q2", "power", "qred", "mquot", "zsign", "gt"))
    c.add_argument("args", nargs="*")
    c.add_argument("--s-set", dest="s_set", help="comma-separated elements of S")
    c.add_argument("--bound", type=int)
    c.add_argument("--gens", help="comma-separated preorder generators")
    c.add_argument("-o", "--output")
    c.set_defaults(run=cmd_construct)

    c = sub.add_parser("sper", help="list the signatures into Q2")
    c.add_argument("file")
    c.set_defaults(run=cmd_sper)

    c = sub.add_parser("translate", help="translate between presentations")
    c.add_argument("file")
    c.add_argument("--to", required=True, choices=("mr", "prs", "rs", "ars"))
    c.add_argument("-o", "--output")
    c.set_defaults(run=cmd_translate)

    c = sub.add_parser("iso", help="decide isometry of two forms")
    c.add_argument("file")
    c.add_argument("--lhs", required=True)
    c.add_argument("--rhs", required=True)
    c.add_argument("--mode", choices=MODES, default="strong")
    c.add_argument("--witness", action="store_true")
    c.set_defaults(run=cmd_iso)

    c = sub.add_parser("duality", help="instance-level duality check")
    c.add_argument("file")
    c.set_defaults(run=cmd_duality)

    c = sub.add_parser("corpus", help="verify the bundled corpus")
    c.add_argument("--dir", help="use another corpus directory")
    c.set_defaults(run=cmd_corpus)
    return p


def run_cli(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.run(args)
    except SystemExit as e:  # --help
        return int(e.code or 0)
    except RejectedInput as e:
        print(f"rejected: {e}")
        if e.report is not None:
            print(e.report)
        return 1
    except (UsageError, ConstructionError, OSError) as e:
        print(f"multiring: error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli())

"""Command line front end.

Exit codes: 0 success, 1 a validation or check failed, 2 an internal
invariant was violated, 3 the input could not be read or parsed.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from ..diagrams import validate_3x3, validate_dses
from ..gen import GenConfig, random_3x3, random_dses, random_general_dses
from ..k1 import NotInF, check_relation_3x3, dses_class_free, dses_class_general, relation_sides
from ..resolution import ConstructionFault, phi_auto, resolution_chain
from .fileformat import ParseError, Workspace, load, parse_ring, serialize

EXIT_OK, EXIT_FAIL, EXIT_FAULT, EXIT_IO = 0, 1, 2, 3
DEFAULT_SEED = 7


class CheckFailed(Exception):
    pass


def _emit(w: Workspace, path: str | None):
    text = serialize(w)
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as e:
        raise ParseError(f"cannot write {path}: {e.strerror}") from None


def _get(table: dict, name: str, what: str):
    if name not in table:
        raise ParseError(f"no {what} named {name!r}")
    return table[name]


def _valid_dses(w: Workspace, name: str):
    d = _get(w.dses, name, "double sequence")
    rep = validate_dses(d, name)
    if not rep.ok:
        raise CheckFailed(str(rep))
    return d


# ---------------------------------------------------------------------------
# subcommands

def cmd_validate(args) -> int:
    w = load(args.file)
    issues = []
    for n, m in w.morphisms.items():
        if not m.is_well_defined():
            issues.append(f"morphism {n}: not well defined on the presentation")
    for n, d in w.dses.items():
        issues += [f"{where}: {what}" for where, what in validate_dses(d, f"dses {n}").issues]
    for n, D in w.diagrams.items():
        issues += [f"diagram {n} {where}: {what}" for where, what in validate_3x3(D).issues]
    for line in issues:
        print(line)
    total = len(w.morphisms) + len(w.dses) + len(w.diagrams)
    print(f"{total} entities checked, {len(issues)} problems")
    return EXIT_OK if not issues else EXIT_FAIL


def cmd_class(args) -> int:
    w = load(args.file)
    d = _valid_dses(w, args.dses)
    if args.general:
        c = dses_class_general(d)
    else:
        try:
            c = dses_class_free(d)
        except NotInF as e:
            print(f"{e}; use --general to go through the resolution", file=sys.stderr)
            return EXIT_FAIL
    print(c)
    return EXIT_OK


def cmd_phi(args) -> int:
    w = load(args.file)
    d = _valid_dses(w, args.dses)
    r = phi_auto(d)
    out = Workspace(w.ring)
    out.add_dses("input", d)
    out.add_dses("output", r.output)
    out.add_diagram("witness", r.witness3x3)
    k, s, a = r.output.objects
    print(f"phi: k has {k.generators} generators, a'⊕p has {s.generators}, a has {a.generators}")
    if args.emit:
        _emit(out, args.emit)
    return EXIT_OK


def cmd_resolve(args) -> int:
    w = load(args.file)
    d = _valid_dses(w, args.dses)
    steps = resolution_chain(d)
    res = steps[-1].output
    c = dses_class_free(res)
    out = Workspace(w.ring)
    out.add_dses("input", d)
    out.add_dses("resolved", res)
    _emit(out, args.emit)
    print(f"class of resolved sequence: {c}")
    print(f"class of input: {c.inverse()}")
    return EXIT_OK


def cmd_check3x3(args) -> int:
    w = load(args.file)
    D = _get(w.diagrams, args.diagram, "diagram")
    rep = validate_3x3(D)
    if not rep.ok:
        print(f"invalid diagram: {rep}")
        return EXIT_FAIL
    lhs, rhs = relation_sides(D)
    ok = check_relation_3x3(D)
    print(f"rows {lhs}, columns {rhs}: {'relation holds' if ok else 'relation fails'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_gen(args) -> int:
    ring = parse_ring(args.ring)
    cfg = GenConfig(ring=ring, seed=args.seed)
    w = Workspace(ring)
    if args.kind == "dses":
        w.add_dses("d", random_dses(cfg))
    elif args.kind == "dses-general":
        if ring.modulus is not None:
            print("dses-general needs --ring Z", file=sys.stderr)
            return EXIT_FAIL
        w.add_dses("d", random_general_dses(cfg))
    else:
        w.add_diagram("D", random_3x3(cfg, args.kind[-1]))
    _emit(w, args.emit)
    return EXIT_OK


def cmd_selftest(args) -> int:
    from ..acceptance import run_all
    seed = args.seed
    if seed is None:
        env = os.environ.get("K1WB_SEED")
        seed = int(env) if env else DEFAULT_SEED
    results = run_all(args.cases, seed)
    if args.json:
        print(json.dumps([{"id": r.id, "status": "pass" if r.passed else "fail",
                           "details": r.details} for r in results], indent=2))
    else:
        for r in results:
            print(r.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # bad usage is an input error; exit code 2 is reserved for internal faults
        self.print_usage(sys.stderr)
        self.exit(EXIT_IO, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="k1wb", description="Double short exact sequences, "
                                 "3x3 diagrams and their determinant classes.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check every entity in a workspace file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("class", help="print the class of a double sequence")
    p.add_argument("file")
    p.add_argument("--dses", required=True)
    p.add_argument("--general", action="store_true", help="route through the resolution chain")
    p.set_defaults(func=cmd_class)

    p = sub.add_parser("phi", help="apply one phi step with the default cover")
    p.add_argument("file")
    p.add_argument("--dses", required=True)
    p.add_argument("--emit")
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("resolve", help="apply the three phi steps")
    p.add_argument("file")
    p.add_argument("--dses", required=True)
    p.add_argument("--emit", required=True)
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("check3x3", help="validate a diagram and test its class relation")
    p.add_argument("file")
    p.add_argument("--diagram", required=True)
    p.set_defaults(func=cmd_check3x3)

    p = sub.add_parser("gen", help="emit a generated value")
    p.add_argument("--ring", required=True, help="Z or gf<p>")
    p.add_argument("--kind", required=True,
                   choices=["dses", "dses-general", "3x3-a", "3x3-b", "3x3-c", "3x3-d"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--emit", default="-")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.add_argument("--cases", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except CheckFailed as e:
        print(f"check failed: {e}", file=sys.stderr)
        return EXIT_FAIL
    except (ConstructionFault, AssertionError, ArithmeticError) as e:
        print(f"internal fault: {e}", file=sys.stderr)
        return EXIT_FAULT


if __name__ == "__main__":
    sys.exit(main())

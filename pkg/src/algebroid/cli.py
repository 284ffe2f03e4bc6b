"""Command-line front end.

Exit codes: 0 when every requested check passes, 1 when one fails (the
first counterexample is printed), 2 on usage errors.
"""

import argparse
import json
import random
import sys
from pathlib import Path

from . import reproduce as repro
from .caps import DegreeCapError, check_degree, degree_cap
from .differentiation import differentiate
from .enveloping import (
    build_enveloping,
    check_cocommutative,
    confluence_failures,
    primitives,
    random_element,
)
from .examples import CATALOG, ExampleError, example_kind, make_example, parse_spec
from .finite_dual import finite_dual, lift_lr_morphism
from .hopf_algebroid import AxiomReport, format_presentation, parse_presentation
from .lie_rinehart import check_lie_rinehart, identity_morphism
from .separability import bundled_morphism, bundled_morphisms, separability_report
from .symbolic_core import PresentationError
from .symbolic_core.parser import ParseError


class UsageError(Exception):
    pass


def _load(args, default=None):
    """The object named by --example or by a presentation file."""
    if getattr(args, "path", None):
        if args.example:
            raise UsageError("give either a presentation file or --example, not both")
        try:
            text = Path(args.path).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {args.path}: {exc.strerror}") from None
        try:
            return "hopf", parse_presentation(text, name=Path(args.path).stem)
        except (PresentationError, ParseError) as exc:
            raise UsageError(f"{args.path}: {exc}") from None
    spec = args.example or default
    if spec is None:
        raise UsageError("no input: give a presentation file or --example NAME[:PARAM]")
    try:
        name = parse_spec(spec)[0]
        return example_kind(name), make_example(spec, verify=False)
    except ExampleError as exc:
        raise UsageError(str(exc)) from None


def _emit(args, data, text):
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _fail_line(report):
    f = report.failures()[0]
    return f"FAIL {f.name}: counterexample {f.counterexample}: {f.detail}"


def _finish(args, report, data, text):
    _emit(args, data, text)
    if not report.passed:
        print(_fail_line(report), file=sys.stderr)
        return 1
    return 0


# subcommands


def cmd_verify(args):
    kind, obj = _load(args)
    if kind == "hopf":
        rep = obj.check_axioms()
    elif kind == "lie_rinehart":
        rep = check_lie_rinehart(obj)
    else:
        rep = obj.check()
    return _finish(args, rep, {"object": obj.name, "axioms": rep.to_json(), "passed": rep.passed}, rep.table())


def _as_lie_rinehart(args, kind, obj):
    if kind == "hopf":
        return differentiate(obj, args.flavor)
    if kind == "lie_rinehart":
        return obj
    raise UsageError("this command needs a Hopf algebroid or a Lie-Rinehart algebra")


def _lr_text(L):
    lines = [f"{L.name}: free of rank {L.rank} over {L.base.name}[{', '.join(L.base.variables)}]"]
    lines.append("basis: " + ", ".join(L.basis))
    for e in L.basis:
        imgs = ", ".join(f"{x} -> {v}" for x, v in L.anchor[e].items())
        lines.append(f"anchor({e}): {imgs}")
    for i in range(L.rank):
        for j in range(i + 1, L.rank):
            lines.append(f"[{L.basis[i]}, {L.basis[j]}] = {L.format(L.structure[(i, j)])}")
    return "\n".join(lines)


def cmd_differentiate(args):
    kind, obj = _load(args)
    if kind != "hopf":
        raise UsageError("differentiate needs a Hopf algebroid")
    L = differentiate(obj, args.flavor)
    rep = check_lie_rinehart(L)
    data = {"flavor": args.flavor, "rank": L.rank, **L.to_json(), "axioms": rep.to_json()}
    return _finish(args, rep, data, _lr_text(L) + "\n\n" + rep.table())


def cmd_envelope(args):
    kind, obj = _load(args, default="weyl_lr")
    L = _as_lie_rinehart(args, kind, obj)
    cap = degree_cap(args.degree_cap)
    U = build_enveloping(L)
    rng = random.Random(args.seed)
    samples = [random_element(U, rng, degree=min(3, cap)) for _ in range(args.samples)]
    rep = check_cocommutative(U, samples)
    rep.add("confluence", confluence_failures(U, words=args.words, degree=cap, seed=args.seed))
    prims = primitives(U, min(2, cap), cap)
    gens = [U.letter(i) for i in range(U.rank)]
    data = {
        "lie_rinehart": L.to_json(),
        "pbw_words": [U.format_word(w) for w in U.pbw_words(min(2, cap))],
        "coproduct": {str(g): str(U.coproduct(g)) for g in gens},
        "translation": {str(g): str(U.translation(g)) for g in gens},
        "primitives": [str(p) for p in prims],
        "checks": rep.to_json(),
        "seed": args.seed,
    }
    lines = [f"V({L.name}) with PBW basis over {L.base.name}[{', '.join(L.base.variables)}]"]
    for g in gens:
        lines.append(f"Delta({g}) = {U.coproduct(g)}")
        lines.append(f"T({g}) = {U.translation(g)}")
    lines.append("primitives of degree <= 2: " + ", ".join(str(p) for p in prims))
    lines.append("")
    lines.append(rep.table())
    return _finish(args, rep, data, "\n".join(lines))


def cmd_dual(args):
    kind, obj = _load(args, default="group_algebra:2")
    if kind != "finite":
        raise UsageError("dual needs a finite cocommutative Hopf algebroid such as group_algebra:3")
    D = finite_dual(obj)
    text = format_presentation(D.hopf) + "\n" + D.report.table()
    return _finish(args, D.report, D.to_json(), text)


def cmd_lift(args):
    kind, obj = _load(args, default="malgrange:2")
    if kind != "hopf":
        raise UsageError("lift needs a Hopf algebroid; the identity of its Lie-Rinehart algebra is lifted")
    check_degree(args.degree, args.degree_cap)
    L = differentiate(obj)
    res = lift_lr_morphism(L, obj, identity_morphism(L), degree_cap=args.degree, cap=args.degree_cap)
    rep = AxiomReport()
    for kind_name in ("unit", "product", "ring_map"):
        rep.add(kind_name, [(f"{v[1]} at {v[2]} {v[3]}".strip(), v[4]) for v in res.violations if v[0] == kind_name])
    words = res.words[: min(len(res.words), 6)]
    data = {
        "words": len(res.words),
        "checked": res.checked,
        "violations": [list(v) for v in res.violations],
        "table": res.lifted.table(words),
    }
    lines = [f"lift of id on {L.name}: {len(res.words)} PBW words, {res.checked} checks"]
    for w, vals in res.lifted.table(words).items():
        lines.append(f"sigma({w}): " + ", ".join(f"{g} -> {v}" for g, v in vals.items()))
    lines.append("")
    lines.append(rep.table())
    return _finish(args, rep, data, "\n".join(lines))


def cmd_separability(args):
    names = [args.morphism] if args.morphism else list(bundled_morphisms())
    if args.morphism and args.morphism not in bundled_morphisms():
        raise UsageError(f"unknown morphism {args.morphism!r}; choose from {', '.join(bundled_morphisms())}")
    reports = [separability_report(bundled_morphism(n)) for n in names]
    rep = AxiomReport()
    rep.add("verdicts_agree", [(r.name, str(r.verdicts)) for r in reports if not r.consistent])
    text = "\n\n".join(r.format() for r in reports)
    return _finish(args, rep, [r.to_json() for r in reports], text)


def cmd_reproduce(args):
    only = set(args.only) if args.only else None
    rows = repro.run(only, seed=args.seed)
    data = [
        {"criterion": n, "title": t, "passed": ok, "detail": d, "seconds": round(s, 3)} for n, t, ok, d, s in rows
    ]
    _emit(args, data, repro.format_table(rows))
    return 0 if all(r[2] for r in rows) else 1


def cmd_catalog(args):
    data = {
        "examples": {name: {"kind": kind, "parameters": doc} for name, (_, doc, kind) in CATALOG.items()},
        "morphisms": list(bundled_morphisms()),
    }
    lines = [f"{name:20s} {kind:13s} {doc}" for name, (_, doc, kind) in CATALOG.items()]
    lines.append("")
    lines.append("morphisms for separability: " + ", ".join(bundled_morphisms()))
    _emit(args, data, "\n".join(lines))
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--degree-cap", type=int, default=None, help="cap on word degrees (default 4, or ALGEBROID_DEGREE_CAP)")
    common.add_argument("--flavor", choices=("s", "t"), default="s", help="derivations killing the source or the target")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")

    parser = argparse.ArgumentParser(prog="algebroid", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, source=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if source:
            p.add_argument("path", nargs="?", help="presentation file")
            p.add_argument("--example", help="catalog example, e.g. malgrange:3")
        p.set_defaults(func=fn)
        return p

    add("verify", cmd_verify, "check the axioms of an algebroid or Lie-Rinehart algebra")
    add("differentiate", cmd_differentiate, "compute the Lie-Rinehart algebra of a Hopf algebroid")
    p = add("envelope", cmd_envelope, "build the enveloping algebroid and check its identities")
    p.add_argument("--samples", type=int, default=50, help="random elements for the identity checks")
    p.add_argument("--words", type=int, default=200, help="random words for confluence fuzzing")
    add("dual", cmd_dual, "finite dual of a finite cocommutative Hopf algebroid")
    p = add("lift", cmd_lift, "lift the identity of L(H) to the enveloping algebroid")
    p.add_argument("--degree", type=int, default=3, help="PBW degree to check (default 3)")
    p = add("separability", cmd_separability, "separability verdicts for bundled morphisms", source=False)
    p.add_argument("--morphism", help="one bundled morphism (default: all)")
    p = add("reproduce", cmd_reproduce, "run the acceptance suite", source=False)
    p.add_argument("--only", type=int, nargs="+", help="criterion numbers to run")
    add("catalog", cmd_catalog, "list examples and bundled morphisms", source=False)
    return parser


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DegreeCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"FAIL {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()

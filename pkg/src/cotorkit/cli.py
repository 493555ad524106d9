"""Command-line front end.

Exit codes: 0 success, 2 bad model, 3 cobar/twisted mismatch, 4 degeneration
mismatch, 5 rep-table cross-check failure; ``verify`` exits with the number
of failed suites (at most 100).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import catalog
from .cotor import (
    CobarSizeError,
    DifferentialError,
    acyclicity_report,
    check_twisting_identity,
    cotor_cobar,
    cotor_twisted,
    twisting_cochain_for,
)
from .hopf import HOPF_BY_FLAVOR, ComoduleAlgebra, Report, check_comodule_axioms, check_hopf_axioms
from .poly import BiDegree, GradedVariable, Poly, PolyAlgebra
from .toda import (
    bar_generators,
    build_b,
    build_y,
    check_bar_generators,
    check_d1_squared,
    check_split,
    find_sharp,
    index_sets,
    is_primitive_report,
)

EXIT_MODEL = 2
EXIT_ORACLE = 3
EXIT_DEGENERACY = 4
EXIT_REP_TABLE = 5
MAX_VERIFY_EXIT = 100


class ModelError(ValueError):
    pass


# model files


def _flavor(name: str) -> str:
    key = name.strip().lower().replace("-", "_")
    aliases = {"singz2": "sing_z2", "singgm": "sing_gm"}
    key = aliases.get(key, key)
    if key not in HOPF_BY_FLAVOR:
        raise ModelError(f"unknown hopf flavor {name!r}")
    return key


def model_from_json(doc: dict, name: str = "") -> ComoduleAlgebra:
    """Build a comodule algebra from ``{hopf, variables, coaction}``."""
    try:
        hopf = HOPF_BY_FLAVOR[_flavor(doc["hopf"])]()
        vs = []
        for v in doc["variables"]:
            a, b = v["deg"]
            vs.append(GradedVariable(v["name"], BiDegree(int(a), int(b)), v.get("cap")))
        alg = PolyAlgebra(vs)
        coaction = {}
        for gen, pairs in doc["coaction"].items():
            if gen not in alg.index:
                raise ModelError(f"coaction given for unknown generator {gen!r}")
            coaction[gen] = [(hopf.algebra.mono_from_pairs(lam), alg.mono_from_pairs(a)) for lam, a in pairs]
        missing = [n for n in alg.names if n not in coaction]
        if missing:
            raise ModelError(f"no coaction for {', '.join(missing)}")
        return ComoduleAlgebra(hopf, alg, coaction, name or doc.get("name", "custom"))
    except ModelError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelError(f"malformed model file: {exc}") from exc


def model_to_json(ca: ComoduleAlgebra) -> dict:
    alg = ca.algebra
    variables = []
    for i, n in enumerate(alg.names):
        entry = {"name": n, "deg": [alg.degrees[i].a, alg.degrees[i].b]}
        if alg.caps[i] is not None:
            entry["cap"] = alg.caps[i]
        variables.append(entry)
    coaction = {}
    for n in alg.names:
        pairs = sorted(ca.coaction_mono(alg.var_mono(n)))
        coaction[n] = [[ca.hopf.algebra.mono_pairs(lam), alg.mono_pairs(a)] for lam, a in pairs]
    return {"name": ca.name, "hopf": ca.hopf.flavor, "variables": variables, "coaction": coaction}


def load_model(model_id: str | None, model_file: str | None, check_total: int | None = None) -> ComoduleAlgebra:
    if bool(model_id) == bool(model_file):
        raise ModelError("give exactly one of --model and --model-file")
    if model_file:
        try:
            doc = json.loads(Path(model_file).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ModelError(f"cannot read {model_file}: {exc}") from exc
        ca = model_from_json(doc, Path(model_file).stem)
        if check_total is not None:
            rep = check_comodule_axioms(ca, check_total)
            if not rep.ok:
                raise ModelError(rep.summary() + "\n" + "\n".join(rep.failures[:10]))
        return ca
    try:
        return catalog.model(model_id)
    except ValueError as exc:
        raise ModelError(str(exc)) from exc


# output helpers


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _reports_json(reports: Sequence[Report]) -> str:
    doc = [{"suite": r.name, "ok": r.ok, "checked": r.checked, "failures": r.failures} for r in reports]
    return json.dumps(doc, indent=2)


def _reports_text(reports: Sequence[Report]) -> str:
    lines = []
    for r in reports:
        lines.append(r.summary())
        lines.extend(f"  - {f}" for f in r.failures[:20])
    return "\n".join(lines) + "\n"


# commands


def cmd_cotor(args) -> int:
    try:
        ca = load_model(args.model, args.model_file, check_total=args.max_total)
    except ModelError as exc:
        print(f"model error: {exc}", file=sys.stderr)
        return EXIT_MODEL
    tables = {}
    try:
        if args.method in ("twisted", "both"):
            tables["twisted"] = cotor_twisted(None, ca, args.max_total, threads=args.threads)
        if args.method in ("cobar", "both"):
            tables["cobar"] = cotor_cobar(ca, args.max_total, threads=args.threads)
    except CobarSizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DifferentialError as exc:
        print(f"model error: {exc}", file=sys.stderr)
        return EXIT_MODEL
    table = tables.get("twisted") or tables["cobar"]
    _emit(table.to_json() if args.output == "json" else table.to_csv(), args.out)
    if len(tables) == 2:
        diff = tables["twisted"].differences(tables["cobar"])
        if diff:
            for t, a, b in diff:
                print(f"mismatch at {t}: twisted {a}, cobar {b}", file=sys.stderr)
            return EXIT_ORACLE
        print(f"twisted and cobar tables agree through total degree {args.max_total}", file=sys.stderr)
    return 0


def _suite_axioms(args) -> list[Report]:
    n = args.max_total if args.max_total is not None else 12
    reps = [check_hopf_axioms(HOPF_BY_FLAVOR[f](), 16) for f in sorted(HOPF_BY_FLAVOR)]
    for rep in reps:
        rep.name = f"Hopf axioms and primitive generators, {rep.name}"
    for rep in catalog.axiom_reports(n):
        rep.name = f"coassociative, counital coaction: {rep.name}"
        reps.append(rep)
    for k in (1, 2, 3):
        rep = catalog.check_bj(k, min(n, 10))
        rep.name = f"restriction c_2h -> q_h commutes with coactions: {rep.name}"
        reps.append(rep)
    for r in (1, 2, 3):
        rep = catalog.check_o2r_square(2 * r, min(n, 10))
        rep.name = f"restriction to (O_2)^r commutes with coactions: {rep.name}"
        reps.append(rep)
    rep = catalog.check_psi(n)
    rep.name = f"x1^e x2^i -> z^(2i+e) is a coalgebra isomorphism to degree {n}"
    reps.append(rep)
    return reps


def _suite_theta(args) -> list[Report]:
    n = args.max_total if args.max_total is not None else 32
    reps = []
    for f in ("lambda1", "lambda2"):
        rep = check_twisting_identity(twisting_cochain_for(HOPF_BY_FLAVOR[f](), n), n)
        rep.name = f"theta is a twisting cochain (mu (theta x theta) Delta = 0) over {f}, to degree {n}"
        reps.append(rep)
    m = min(n, 12)
    for f, mid in (("lambda1", "gm"), ("lambda2", "mu2")):
        ca = catalog.model(mid)
        rep = acyclicity_report(twisting_cochain_for(ca.hopf, m), ca, m)
        rep.name = f"d^2 = 0 and R (x)_theta {f} is acyclic, to degree {m}"
        reps.append(rep)
    return reps


def toda_reports(ca: ComoduleAlgebra, max_total: int) -> list[Report]:
    sharp = find_sharp(ca)
    rep = Report(f"distinguished element a# of {ca.name}")
    rep.checked += 1
    if sharp is None:
        rep.fail("no element with d_q(a#) = 1 was found")
        return [rep]
    reps = [rep, check_split(ca, sharp, max_total)]
    if sharp.q != 2:
        return reps
    bar = bar_generators(ca, sharp)
    reps.append(check_bar_generators(ca, sharp, bar))
    reps.append(check_d1_squared(ca, sharp, max_total))
    top = max(bar.even) if bar.even else 1
    classes = {f"b{h}": build_b(ca, sharp, bar, h) for h in range(2, top + 1)}
    m = (top - 1) // 2
    for I in index_sets(m):
        if all(i in bar.even for i in I):
            classes["y" + "_".join(map(str, I))] = build_y(ca, sharp, bar, I)
    reps.append(is_primitive_report(ca, classes, f"b_h and y_I of {ca.name} are primitive"))
    known = catalog.KNOWN_LIFTS.get(ca.name)
    if known:
        kr = Report(f"lifts of {ca.name} match the closed forms")
        for name, text in known.items():
            kr.checked += 1
            want = catalog.parse_poly(ca.algebra, text)
            if bar[name] != want:
                kr.fail(f"lift of {name} is {bar[name]}, expected {want}")
        reps.append(kr)
    return reps


def _suite_toda(args) -> list[Report]:
    ids = [args.model] if args.model else ["gl:6", "so:6"]
    n = args.max_total if args.max_total is not None else 12
    reps = []
    for mid in ids:
        reps.extend(toda_reports(catalog.model(mid), n))
    return reps


def _suite_relations(args) -> list[Report]:
    groups = [args.group] if args.group else ["pgl", "pso"]
    m = args.m if args.m is not None else 1
    reps = []
    for g in groups:
        rep = catalog.check_relations(g, m)
        rep.name = f"{g} m={m}: y_I products satisfy the presentation relations"
        reps.append(rep)
        reps.append(catalog.check_cotor_relations(g, m))
    return reps


SUITES: dict[str, Callable] = {
    "axioms": _suite_axioms,
    "theta": _suite_theta,
    "toda": _suite_toda,
    "relations": _suite_relations,
}


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reps: list[Report] = []
    failed = 0
    for name in names:
        try:
            got = SUITES[name](args)
        except ValueError as exc:
            got = [Report(name, 1, [str(exc)])]
        reps.extend(got)
        failed += any(not r.ok for r in got)
    _emit(_reports_json(reps) if args.output == "json" else _reports_text(reps), args.out)
    return min(failed, MAX_VERIFY_EXIT)


def cmd_degeneracy(args) -> int:
    try:
        res = catalog.degeneration_check(args.group, args.m, args.max_total, threads=args.threads)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.output == "json":
        doc = {
            "group": res.group,
            "m": res.m,
            "rows": [
                {"total": d, res.left_label: a, res.right_label: b, "equal": ok} for d, a, b, ok in res.rows()
            ],
            "ok": res.ok,
        }
        text = json.dumps(doc, indent=2)
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["total", res.left_label, res.right_label, "verdict"])
        for d, a, b, ok in res.rows():
            w.writerow([d, a, b, "equal" if ok else "MISMATCH"])
        text = buf.getvalue()
    _emit(text, args.out)
    print(res.summary(), file=sys.stderr)
    return 0 if res.ok else EXIT_DEGENERACY


def cmd_rep_table(args) -> int:
    g, m, imax, jmax = args.group, args.m, args.i_max, args.j_max
    problems: list[str] = []
    if g not in catalog.GROUPS:
        print(f"error: unknown group {g!r}", file=sys.stderr)
        return 1
    table = catalog.rep_table(g, m, imax, jmax, threads=args.threads)
    if g == "pgl":
        for (i, j), d in table.items():
            if j >= 1 and d != catalog.pgl_counting_formula(m, i, j):
                problems.append(f"cell ({i},{j}): table {d}, counting formula {catalog.pgl_counting_formula(m, i, j)}")
    elif g == "pso":
        # the non-pure s = 0 part of the table is exactly the non-pure primitives
        nonpure = catalog.pso_nonpure_table(m, 2 * imax + jmax)
        s0 = catalog.hodge_region_table(catalog.group_model(g, m), imax, jmax, threads=args.threads).row(0)
        for D, d in s0.items():
            if D.b > D.a and nonpure.get((D.a, D.b - D.a), 0) != d:
                problems.append(f"cell ({D.a},{D.b - D.a}): cotor row {d}, primitives {nonpure.get((D.a, D.b - D.a), 0)}")
    for (i, j), d in table.items():
        if i < j and j >= 1 and d:
            problems.append(f"cell ({i},{j}) is {d} although i < j")
    if args.output == "json":
        text = json.dumps(
            {"group": g, "m": m, "cells": [{"i": i, "j": j, "dim": d} for (i, j), d in sorted(table.items())]},
            indent=2,
        )
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i"] + [f"j={j}" for j in range(jmax + 1)])
        for i in range(imax + 1):
            w.writerow([i] + [table[(i, j)] for j in range(jmax + 1)])
        text = buf.getvalue()
    _emit(text, args.out)
    for p in problems:
        print(f"cross-check failed: {p}", file=sys.stderr)
    return EXIT_REP_TABLE if problems else 0


def cmd_toda(args) -> int:
    try:
        ca = load_model(args.model, args.model_file, check_total=args.max_total)
    except ModelError as exc:
        print(f"model error: {exc}", file=sys.stderr)
        return EXIT_MODEL
    sharp = find_sharp(ca)
    doc: dict = {"model": ca.name}
    if sharp is None:
        doc["sharp"] = None
    else:
        doc["sharp"] = {"element": sharp.element.to_json(), "q": sharp.q}
        if sharp.q == 2:
            bar = bar_generators(ca, sharp)
            doc["bar"] = {n: bar[n].to_json() for n in ca.algebra.names}
            top = max(bar.even) if bar.even else 1
            doc["b"] = {str(h): build_b(ca, sharp, bar, h).to_json() for h in range(2, top + 1)}
            doc["y"] = {
                ",".join(map(str, I)): build_y(ca, sharp, bar, I).to_json()
                for I in index_sets((top - 1) // 2)
                if all(i in bar.even for i in I)
            }
    if args.output == "json":
        text = json.dumps(doc, indent=2)
    else:
        lines = [f"model {ca.name}"]
        if sharp is None:
            lines.append("no distinguished element found")
        else:
            lines.append(f"a# = {sharp.element}  (q = {sharp.q})")
            for key, label in (("bar", "lift of "), ("b", "b_"), ("y", "y_")):
                for k, v in doc.get(key, {}).items():
                    lines.append(f"{label}{k} = {Poly.from_json(ca.algebra, v)}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cotorkit", description="Cotor of comodule algebras over GF(2).")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, threads: bool = True):
        sp.add_argument("--output", choices=("csv", "json"), default="csv")
        sp.add_argument("--out", help="write to this file instead of stdout")
        if threads:
            sp.add_argument("--threads", type=int, default=1)

    c = sub.add_parser("cotor", help="compute a Cotor table")
    c.add_argument("--model")
    c.add_argument("--model-file")
    c.add_argument("--method", choices=("twisted", "cobar", "both"), default="twisted")
    c.add_argument("--max-total", type=int, required=True)
    common(c)
    c.set_defaults(func=cmd_cotor)

    v = sub.add_parser("verify", help="run property suites")
    v.add_argument("suite", choices=("axioms", "theta", "toda", "relations", "all"))
    v.add_argument("--model")
    v.add_argument("--group", choices=("pgl", "pso"))
    v.add_argument("--m", type=int)
    v.add_argument("--max-total", type=int)
    common(v, threads=False)
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("degeneracy", help="compare Poincare series")
    d.add_argument("group", choices=catalog.GROUPS)
    d.add_argument("m", type=int)
    d.add_argument("max_total", type=int)
    common(d)
    d.set_defaults(func=cmd_degeneracy)

    r = sub.add_parser("rep-table", help="dim H^j(G, Sym^i) table")
    r.add_argument("group", choices=catalog.GROUPS)
    r.add_argument("m", type=int)
    r.add_argument("i_max", type=int)
    r.add_argument("j_max", type=int)
    common(r)
    r.set_defaults(func=cmd_rep_table)

    t = sub.add_parser("toda", help="print a#, lifts, b_h and y_I")
    t.add_argument("--model")
    t.add_argument("--model-file")
    t.add_argument("--max-total", type=int, default=12)
    common(t, threads=False)
    t.set_defaults(func=cmd_toda)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "max_total", None) is not None and args.max_total < 0:
        print("error: max total must be non-negative", file=sys.stderr)
        return 1
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return 1
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

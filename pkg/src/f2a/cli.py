"""Command-line interface: ``f2a <verb> --field <name> ...``.

Exit codes: 0 success or pass, 1 negative verdict (not Frobenius, failed
check, no catalog match), 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import canon, census
from .core import NotAssociativeError, SingularMatrixError, automorphism_group, parse_matrix, parse_msc
from .fields import FieldError, field_names, get_field
from .forms import DegenerateFormError, GroupDescriptor, ShapeMismatchError, canonicalize_form
from .frobenius import is_frobenius_pair, solve_frobenius_forms

VERBS = ("classify-algebra", "classify-pair", "check-frobenius", "frobenius-forms",
         "automorphisms", "enumerate", "verify-theorem", "canonicalize-form")
THEOREMS = ("algebra", "automorphisms", "pairs", "frobenius") + tuple(f"forms-g{i}" for i in range(1, 9))


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", required=True, choices=field_names())
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", help="also write the output to this file")

    parser = argparse.ArgumentParser(prog="f2a", description="Two-dimensional Frobenius algebra toolkit")
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb in VERBS:
        p = sub.add_parser(verb, parents=[common])
        if verb in ("classify-algebra", "classify-pair", "check-frobenius", "frobenius-forms", "automorphisms"):
            p.add_argument("--msc", required=True)
        if verb in ("classify-pair", "check-frobenius", "canonicalize-form"):
            p.add_argument("--form", required=True)
        if verb == "canonicalize-form":
            p.add_argument("--group", required=True, choices=[f"g{i}" for i in range(1, 9)])
            p.add_argument("--beta1")
        if verb in ("enumerate", "verify-theorem"):
            p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
            p.add_argument("--allow-large", action="store_true")
        if verb == "verify-theorem":
            p.add_argument("--theorem", required=True, choices=THEOREMS)
    return parser


def _emit(payload, text_lines, args):
    if args.format == "json":
        out = json.dumps(payload, indent=2, sort_keys=True)
    else:
        out = "\n".join(text_lines)
    print(out)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out + "\n")


def _check_lines(checks):
    lines = []
    for c in checks:
        lines.append(f"{c.id}: {c.status.upper()}")
        lines.extend(f"  - {d}" for d in c.discrepancies)
        lines.extend(f"  * {n}" for n in c.notes)
    return lines


def cmd_classify_algebra(F, args):
    A = parse_msc(args.msc, F)
    try:
        res = canon.classify_algebra(A)
    except (canon.CatalogMatchError, canon.TrivialAlgebraError) as exc:
        _emit({"error": str(exc), "matched": False}, [f"no match: {exc}"], args)
        return 1
    _emit(res.to_json(), [f"{res.label.text()}  witness ({res.witness})  representative ({res.representative})"],
          args)
    return 0


def cmd_classify_pair(F, args):
    A, S = parse_msc(args.msc, F), parse_matrix(args.form, F)
    try:
        res = canon.classify_pair(A, S)
    except (canon.CatalogMatchError, canon.TrivialAlgebraError, canon.ItemMatchError) as exc:
        _emit({"error": str(exc), "matched": False}, [f"no match: {exc}"], args)
        return 1
    _emit(res.to_json(), [f"{res.lemma} item {res.item} for {res.algebra.text()};"
                          f" canonical form ({res.canonical_form}), witness ({res.witness})"], args)
    return 0


def cmd_check_frobenius(F, args):
    A, S = parse_msc(args.msc, F), parse_matrix(args.form, F)
    if not is_frobenius_pair(A, S):
        if S.is_invertible():
            res = canon.classify_frobenius_pair(A, S).to_json()
        else:
            res = {"frobenius": False, "first_nonzero_residual": None, "defect": [], "reason": "degenerate form"}
        _emit(res, [f"not Frobenius (first nonzero residual: {res['first_nonzero_residual']})"], args)
        return 1
    try:
        res = canon.classify_frobenius_pair(A, S)
    except (canon.ItemMatchError, canon.CatalogMatchError, canon.TrivialAlgebraError, FieldError) as exc:
        _emit({"frobenius": True, "item": None, "error": str(exc)}, [f"Frobenius; no printed item: {exc}"], args)
        return 1
    _emit(res.to_json(), [f"Frobenius: item {res.item} ({res.char_class}) for {res.algebra.text()};"
                          f" canonical form ({res.canonical_form})"], args)
    return 0


def cmd_frobenius_forms(F, args):
    sol = solve_frobenius_forms(parse_msc(args.msc, F))
    _emit(sol.to_json(), [f"dimension {sol.dimension}; basis " + "; ".join(f"({b})" for b in sol.basis),
                          f"nondegenerate solution: {'yes' if sol.has_nondegenerate else 'no'}"], args)
    return 0 if sol.has_nondegenerate else 1


def cmd_automorphisms(F, args):
    A = parse_msc(args.msc, F)
    group = automorphism_group(A)
    payload = {"msc": str(A), "order": len(group), "elements": [str(g) for g in group]}
    _emit(payload, [f"|Aut| = {len(group)}"] + [f"  ({g})" for g in group], args)
    return 0


def cmd_enumerate(F, args):
    report = census.enumerate_algebras(F, args.jobs, args.allow_large)
    lines = [f"{report.field}: {report.counts['total']} MSCs, {report.counts['associative']} associative,"
             f" {len(report.classes)} nonzero classes ({report.elapsed:.2f} s)"]
    lines += [f"  {c.label:32s} orbit {c.orbit_size:6d}  |Aut| {c.aut_order:4d}  rep {c.rep}" for c in report.classes]
    _emit(report.to_json(), lines, args)
    return 1 if any(c.label == "UNMATCHED" for c in report.classes) else 0


def cmd_verify_theorem(F, args):
    th = args.theorem
    if th in ("algebra", "automorphisms"):
        report = census.enumerate_algebras(F, args.jobs, args.allow_large)
        fn = census.verify_algebra_theorem if th == "algebra" else census.verify_automorphism_theorem
        chk = fn(F, args.jobs, args.allow_large, report=report)
        report.checks.append(chk)
        payload = report.to_json()
    else:
        if th == "pairs":
            chk = census.verify_pair_lemma(F)
        elif th == "frobenius":
            chk = census.verify_frobenius_theorem(F)
        else:
            chk = census.verify_forms_theorem(th.split("-")[1].upper(), F)
        payload = {"schema": census.SCHEMA, "field": F.name, "checks": [chk.to_json()]}
    _emit(payload, [f"{F.name}"] + _check_lines([chk]), args)
    return 0 if chk.passed else 1


def cmd_canonicalize_form(F, args):
    S = parse_matrix(args.form, F)
    tag = args.group.upper()
    if tag == "G6":
        if args.beta1 is None:
            raise UsageError("g6 needs --beta1")
        desc = GroupDescriptor(tag, F.parse(args.beta1))
    else:
        desc = GroupDescriptor(tag)
    try:
        res = canonicalize_form(S, desc)
    except ShapeMismatchError as exc:
        _emit({"error": str(exc), "form": str(exc.canonical)}, [f"no shape: {exc}"], args)
        return 1
    _emit(res.to_json(), [f"canonical ({res.form}) via ({res.witness}); {res.shape}"], args)
    return 0


HANDLERS = {
    "classify-algebra": cmd_classify_algebra,
    "classify-pair": cmd_classify_pair,
    "check-frobenius": cmd_check_frobenius,
    "frobenius-forms": cmd_frobenius_forms,
    "automorphisms": cmd_automorphisms,
    "enumerate": cmd_enumerate,
    "verify-theorem": cmd_verify_theorem,
    "canonicalize-form": cmd_canonicalize_form,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    F = get_field(args.field)
    try:
        return HANDLERS[args.verb](F, args)
    except (UsageError, FieldError, NotAssociativeError, DegenerateFormError, SingularMatrixError,
            census.BudgetExceededError, ValueError) as exc:
        print(f"f2a: error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

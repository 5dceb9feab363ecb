"""Run every census check over a list of fields and write one JSON report per field."""

import argparse
import os
import sys
import time

from f2a import census
from f2a.fields import FieldError, get_field
from f2a.forms import GROUP_TAGS, GroupDescriptor


def checks_for(F, jobs):
    rep = census.enumerate_algebras(F, jobs)
    rep.checks.append(census.verify_algebra_theorem(F, jobs, report=rep))
    rep.checks.append(census.verify_automorphism_theorem(F, jobs, report=rep))
    for fn in (census.verify_pair_lemma, census.verify_frobenius_theorem):
        try:
            rep.checks.append(fn(F))
        except census.BudgetExceededError as exc:
            print(f"  skipped {fn.__name__}: {exc}")
    for tag in GROUP_TAGS:
        if GroupDescriptor(tag, F.zero if tag == "G6" else None).compatible(F):
            rep.checks.append(census.verify_forms_theorem(tag, F))
    return rep


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("fields", nargs="*", default=["gf2", "gf3", "gf4", "gf5", "gf7"])
    ap.add_argument("--out-dir", default="reports")
    ap.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--timing", action="store_true", help="include elapsed seconds in the reports")
    args = ap.parse_args(argv)

    os.makedirs(args.out_dir, exist_ok=True)
    failed = False
    for name in args.fields:
        try:
            F = get_field(name)
        except FieldError as exc:
            ap.error(str(exc))
        t0 = time.perf_counter()
        print(f"{name}:")
        rep = checks_for(F, args.jobs)
        path = os.path.join(args.out_dir, f"{name}.json")
        census.save_report(rep, path, timing=args.timing)
        for chk in rep.checks:
            print(f"  {chk.id:22s} {chk.status.upper():4s} ({len(chk.discrepancies)} discrepancies)")
            failed |= not chk.passed
        print(f"  {len(rep.classes)} classes, {time.perf_counter() - t0:.1f} s -> {path}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())

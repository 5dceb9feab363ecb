"""Exhaustive census of two-dimensional algebras over a finite field.

Enumerates all q^8 structure matrices with numpy (lookup-table arithmetic,
progressive filtering on the sixteen associativity equations), partitions the
associative ones into GL(2, F) orbits, and diffs the result against the
catalogs in :mod:`f2a.canon`.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import product

import numpy as np

from . import canon
from .canon import CatalogMatchError, catalog, classify_algebra, form_orbit, item_index, items_met
from .core import Matrix2, StructureMatrix, automorphism_group, find_unit, gl2, is_associative, transform
from .fields import FieldError, get_field
from .forms import (
    GroupDescriptor,
    _descriptor_group,
    _shape_index,
    canonicalize_form,
    group_elements,
    is_closed,
    is_nondegenerate,
    orbit_of_form,
)
from .frobenius import annihilator, is_frobenius_pair, is_frobenius_via_functional, one_sided_ideals, solve_frobenius_forms

SCHEMA = 1
DEFAULT_MAX_Q = 9
LARGE_MAX_Q = 13


class BudgetExceededError(RuntimeError):
    pass


class ReportError(ValueError):
    pass


@dataclass
class TheoremCheck:
    id: str
    discrepancies: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)

    @property
    def status(self) -> str:
        return "pass" if not self.discrepancies else "fail"

    @property
    def passed(self) -> bool:
        return not self.discrepancies

    def to_json(self):
        return {"id": self.id, "status": self.status, "discrepancies": list(self.discrepancies),
                "notes": list(self.notes)}

    @classmethod
    def from_json(cls, d):
        chk = cls(d["id"], list(d["discrepancies"]), list(d.get("notes", [])))
        if chk.status != d["status"]:
            raise ReportError(f"check {chk.id}: status inconsistent with discrepancies")
        return chk


@dataclass
class ClassRecord:
    label: str  # catalog label or "UNMATCHED"
    orbit_size: int
    aut_order: int
    rep: str

    def to_json(self):
        return {"label": self.label, "orbit_size": self.orbit_size, "aut_order": self.aut_order, "rep": self.rep}


@dataclass
class CensusReport:
    field: str
    counts: dict
    classes: list
    checks: list = dc_field(default_factory=list)
    elapsed: float = 0.0

    def to_json(self, timing: bool = False):
        out = {"schema": SCHEMA, "field": self.field, "counts": dict(self.counts),
               "classes": [c.to_json() for c in self.classes],
               "checks": [c.to_json() for c in self.checks]}
        if timing:
            out["elapsed"] = round(self.elapsed, 3)
        return out

    def check(self, cid):
        return next((c for c in self.checks if c.id == cid), None)

    def validate(self):
        total = sum(c.orbit_size for c in self.classes)
        if total != self.counts.get("nonzero_associative"):
            raise ReportError(f"orbit sizes sum to {total}, expected {self.counts.get('nonzero_associative')}")


# ---------------------------------------------------------------------------
# vectorized enumeration


def budget(allow_large: bool = False) -> int:
    env = os.environ.get("F2A_BUDGET")
    if env:
        return int(env)
    return (LARGE_MAX_Q if allow_large else DEFAULT_MAX_Q) ** 8


def _check_budget(F, allow_large):
    if not F.is_finite:
        raise FieldError("the census needs a finite field")
    if F.order ** 8 > budget(allow_large):
        raise BudgetExceededError(
            f"{F.name}: {F.order ** 8} candidates exceed the budget {budget(allow_large)}"
            " (use --allow-large or F2A_BUDGET)")


def _equations():
    """For each (i, j, k, m): coordinate m of (e_i e_j) e_k - e_i (e_j e_k) as index recipes."""
    eqs = []
    for i, j, k in product(range(2), repeat=3):
        for m in range(2):
            eqs.append((i, j, k, m))
    return eqs


def _associative_chunk(name: str, lead: int, lead_len: int):
    """Codes of associative MSCs whose leading ``lead_len`` digits encode ``lead``."""
    F = get_field(name)
    q = F.order
    add = np.asarray([[F.add(x, y) for y in range(q)] for x in range(q)], dtype=np.int16)
    mul = np.asarray([[F.mul(x, y) for y in range(q)] for x in range(q)], dtype=np.int16)
    neg = np.asarray([F.neg(x) for x in range(q)], dtype=np.int16)
    rest = 8 - lead_len
    codes = lead * q ** rest + np.arange(q ** rest, dtype=np.int64)
    # digits of the code: entry 0 (alpha1) is most significant
    digits = [(codes // q ** (7 - n)) % q for n in range(8)]
    ent = [d.astype(np.int16) for d in digits]
    for i, j, k, m in _equations():
        c_ij, c_jk = 2 * i + j, 2 * j + k
        u0, u1 = ent[c_ij], ent[4 + c_ij]  # e_i e_j
        v0, v1 = ent[c_jk], ent[4 + c_jk]  # e_j e_k
        left = add[mul[u0, ent[4 * m + k]], mul[u1, ent[4 * m + 2 + k]]]
        right = add[mul[v0, ent[4 * m + 2 * i]], mul[v1, ent[4 * m + 2 * i + 1]]]
        keep = add[left, neg[right]] == 0
        ent = [e[keep] for e in ent]
        codes = codes[keep]
        if codes.size == 0:
            break
    return codes.tolist()


def associative_codes(F, jobs: int | None = None, allow_large: bool = False) -> list:
    """Sorted codes of all associative MSCs over F (zero included)."""
    _check_budget(F, allow_large)
    q = F.order
    lead_len = 0 if q ** 8 <= 2 * 10 ** 6 else (1 if q ** 7 <= 2 * 10 ** 6 else 2)
    leads = range(q ** lead_len)
    jobs = jobs or os.cpu_count() or 1
    if jobs <= 1 or lead_len == 0:
        parts = [_associative_chunk(F.name, lead, lead_len) for lead in leads]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_associative_chunk, [F.name] * len(leads), leads, [lead_len] * len(leads)))
    out = []
    for part in parts:  # leads ascend, so concatenation is already sorted
        out.extend(part)
    return out


def associative_mscs(F, jobs=None, allow_large=False) -> list:
    return [StructureMatrix.from_code(F, c) for c in associative_codes(F, jobs, allow_large)]


@dataclass
class Orbit:
    rep: StructureMatrix
    members: frozenset  # codes

    @property
    def size(self):
        return len(self.members)


def orbits(F, codes) -> list:
    """GL(2, F) orbits of the given nonzero associative codes, by ascending minimal code."""
    seen = set()
    out = []
    G = gl2(F)
    for code in codes:
        if code in seen:
            continue
        A = StructureMatrix.from_code(F, code)
        members = frozenset(transform(A, g).code() for g in G)
        seen |= members
        out.append(Orbit(A, members))
    return out


@lru_cache(maxsize=None)
def _census(name, jobs, allow_large):
    F = get_field(name)
    t0 = time.perf_counter()
    codes = associative_codes(F, jobs, allow_large)
    nonzero = [c for c in codes if c != 0]
    orbs = orbits(F, nonzero)
    return F, codes, orbs, time.perf_counter() - t0


def enumerate_algebras(F, jobs=None, allow_large=False) -> CensusReport:
    """Census of all q^8 MSCs: counts, orbits and their catalog labels."""
    _check_budget(F, allow_large)
    F, codes, orbs, elapsed = _census(F.name, jobs if jobs and jobs > 1 else 1, allow_large)
    t0 = time.perf_counter()
    entries = catalog(F)
    G = len(gl2(F))
    classes = []
    for orb in orbs:
        hits = [e for e in entries if e.msc.code() in orb.members]
        label = str(hits[0].label()) if len(hits) == 1 else "UNMATCHED"
        classes.append(ClassRecord(label, orb.size, G // orb.size, str(orb.rep)))
    counts = {"total": F.order ** 8, "associative": len(codes), "nonzero_associative": len(codes) - 1}
    rep = CensusReport(F.name, counts, classes, elapsed=elapsed + time.perf_counter() - t0)
    rep.validate()
    return rep


# ---------------------------------------------------------------------------
# theorem checks


def verify_algebra_theorem(F, jobs=None, allow_large=False, report=None) -> TheoremCheck:
    """Completeness and disjointness of the expanded catalog against the census."""
    report = report or enumerate_algebras(F, jobs, allow_large)
    _, codes, orbs, _ = _census(F.name, jobs if jobs and jobs > 1 else 1, allow_large)
    chk = TheoremCheck("algebra-theorem")
    entries = catalog(F)
    for e in entries:
        if e.msc.is_zero():
            chk.discrepancies.append(f"{e}: representative is the zero algebra")
        if not is_associative(e.msc):
            chk.discrepancies.append(f"{e}: printed representative {e.msc} is not associative")
    realized = {}
    for orb, rec in zip(orbs, report.classes):
        hits = [e for e in entries if e.msc.code() in orb.members]
        if not hits:
            chk.discrepancies.append(f"orbit of {orb.rep} (size {orb.size}) matches no catalog entry")
        elif len(hits) > 1:
            chk.discrepancies.append(
                f"orbit of {orb.rep} contains several catalog entries: {', '.join(map(str, hits))}")
        for e in hits:
            realized.setdefault(str(e), []).append(str(orb.rep))
        # second code path: classify_algebra on the orbit minimum
        try:
            other = str(classify_algebra(orb.rep).label)
        except CatalogMatchError:
            other = "UNMATCHED"
        if other != rec.label:
            chk.discrepancies.append(f"orbit of {orb.rep}: census label {rec.label} but classifier says {other}")
    for e in entries:
        if str(e) not in realized:
            chk.discrepancies.append(f"{e}: catalog entry not found among associative MSCs")
    chk.notes.append(f"{len(orbs)} nonzero classes; {len(entries)} expanded catalog entries")
    return chk


def verify_automorphism_theorem(F, jobs=None, allow_large=False, report=None) -> TheoremCheck:
    """Brute-force stabilizers against the printed automorphism groups, plus orbit-stabilizer."""
    chk = TheoremCheck("automorphism-theorem")
    G = len(gl2(F))
    for e in catalog(F):
        true = sorted(automorphism_group(e.msc), key=Matrix2.sort_key)
        printed = e.printed_automorphisms()
        if true != printed:
            ts, ps = set(true), set(printed)
            missing = sorted(ts - ps, key=Matrix2.sort_key)
            extra = sorted(ps - ts, key=Matrix2.sort_key)
            chk.discrepancies.append(
                f"{e}: |Aut| = {len(true)} but printed set has {len(printed)} elements"
                f" ({e.aut_case().template}); missing {_short(missing)}; not automorphisms {_short(extra)}")
    if F.order ** 8 <= budget(allow_large):
        report = report or enumerate_algebras(F, jobs, allow_large)
        for c in report.classes:
            if c.orbit_size * c.aut_order != G:
                chk.discrepancies.append(f"class {c.label}: orbit {c.orbit_size} x aut {c.aut_order} != {G}")
        _, _, orbs, _ = _census(F.name, jobs if jobs and jobs > 1 else 1, allow_large)
        for orb in orbs:
            n = len(automorphism_group(orb.rep))
            if n * orb.size != G:
                chk.discrepancies.append(f"orbit of {orb.rep}: stabilizer {n} x orbit {orb.size} != {G}")
    return chk


def _short(ms, limit=6):
    text = ", ".join(f"({m})" for m in ms[:limit])
    if len(ms) > limit:
        text += f", ... ({len(ms)} total)"
    return "[" + text + "]"


def _check_pair_q(F):
    if not F.is_finite or F.order > 7:
        raise BudgetExceededError("pair checks run over finite fields with q <= 7")


def _nondegenerate_forms(F):
    return [S for S in (Matrix2(F, e) for e in product(F.elements(), repeat=4)) if is_nondegenerate(S)]


def _form_orbits(forms, group):
    seen, out = set(), []
    for S in forms:
        if S in seen:
            continue
        orb = form_orbit(S, group)
        seen |= set(orb)
        out.append(orb)
    return out


def verify_pair_lemma(F) -> TheoremCheck:
    """Every (representative, nondegenerate form) orbit meets exactly one printed pair item."""
    _check_pair_q(F)
    chk = TheoremCheck("pair-lemma")
    idx = item_index("pairs", F)
    vidx = item_index("pairs", F, verbatim=True)
    forms = _nondegenerate_forms(F)
    for pos, entry in enumerate(idx.entries):
        aut = tuple(automorphism_group(entry.msc))
        for orb in _form_orbits(forms, aut):
            canon_form = min(orb, key=Matrix2.sort_key)
            met = items_met(idx, pos, orb)
            vmet = items_met(vidx, pos, orb)
            where = f"({entry}, {canon_form})"
            if not met:
                chk.discrepancies.append(f"{where}: no printed item covers this pair class")
            elif len(met) > 1:
                chk.discrepancies.append(f"{where}: items {sorted(met)} are isomorphic here")
            if set(met) != set(vmet) or len(vmet) != 1:
                chk.notes.append(f"verbatim reading: {where} meets items {sorted(vmet)}"
                                 f" (corrected reading: {sorted(met)})")
    for item, params in idx.degenerate:
        chk.discrepancies.append(f"item {item} admits a degenerate form at {_fmt(F, params)}")
    for item, params in vidx.degenerate:
        chk.notes.append(f"verbatim reading: item {item} admits a degenerate form at {_fmt(F, params)}")
    for item, v in idx.non_associative:
        chk.discrepancies.append(f"item {item}: algebra at parameter {v} is not a catalog algebra")
    corrected = [it.describe(True) + "  ->  " + it.describe() for it in canon.pair_items(F) if it.corrected]
    chk.notes.extend("corrected reading: " + c for c in corrected)
    return chk


def _fmt(F, params):
    return "{" + ", ".join(f"{k}={F.format(v)}" for k, v in sorted(params.items())) + "}"


def verify_frobenius_theorem(F) -> TheoremCheck:
    """Checks (i)-(iv) of the Frobenius list against brute force."""
    _check_pair_q(F)
    chk = TheoremCheck("frobenius-theorem")
    idx = item_index("frobenius", F)

    # (i) every printed instance is a Frobenius pair
    n_inst = 0
    for item, insts in sorted(idx.instances.items()):
        for v, params, A, S in insts:
            n_inst += 1
            if not is_frobenius_pair(A, S):
                chk.discrepancies.append(f"(i) item {item} at {_fmt(F, params)}: ({A}, {S}) is not Frobenius")
    for item, params in idx.degenerate:
        chk.discrepancies.append(f"(i) item {item} admits a degenerate form at {_fmt(F, params)}")
    chk.notes.append(f"(i) {n_inst} printed instances checked over {len(canon.frobenius_items(F))} items")
    # (ii) every Frobenius pair meets exactly one item; (iii) absent algebras; (iv) oracle agreement
    covered = set(idx.forms)
    for pos, entry in enumerate(idx.entries):
        A = entry.msc
        sol = solve_frobenius_forms(A)
        functional = is_frobenius_via_functional(A)
        if sol.has_nondegenerate != (functional is not None):
            chk.discrepancies.append(
                f"(iv) {entry}: nondegenerate compatible form {sol.has_nondegenerate},"
                f" ideal-free functional {functional is not None}")
        if pos not in covered:
            if sol.has_nondegenerate:
                chk.discrepancies.append(f"(iii) {entry} is absent from the list but admits a Frobenius form")
            else:
                chk.notes.append(f"(iii) {entry} absent and confirmed non-Frobenius")
        frob = [S for S in sol.elements() if is_nondegenerate(S)]
        aut = tuple(automorphism_group(A))
        for orb in _form_orbits(frob, aut):
            canon_form = min(orb, key=Matrix2.sort_key)
            met = items_met(idx, pos, orb)
            if not met:
                chk.discrepancies.append(f"(ii) Frobenius pair ({entry}, {canon_form}) matches no printed item")
            elif len(met) > 1:
                chk.discrepancies.append(
                    f"(ii) Frobenius pair ({entry}, {canon_form}) matches items {sorted(met)}")
    return chk


def verify_forms_theorem(tag: str, F) -> TheoremCheck:
    """Shape coverage and orbit constancy for one printed group over F (all beta1 for G6)."""
    if not F.is_finite:
        raise FieldError("form checks need a finite field")
    chk = TheoremCheck(f"forms-{tag.lower()}")
    base = GroupDescriptor.parse(tag, 0 if tag.upper() == "G6" else None)
    if not base.compatible(F):
        raise FieldError(f"{base.tag} is not defined in characteristic {F.characteristic}")
    descs = [GroupDescriptor(base.tag, b) for b in F.elements()] if base.tag == "G6" else [base]
    forms = _nondegenerate_forms(F)
    for desc in descs:
        printed = group_elements(desc, F)
        if not is_closed(printed):
            gen = _descriptor_group(desc, F)
            chk.discrepancies.append(
                f"{desc}: printed set ({len(printed)} elements) is not closed under products;"
                f" generated group has {len(gen)} elements")
        group = _descriptor_group(desc, F)
        seen = set()
        for S in forms:
            if S in seen:
                continue
            orb = orbit_of_form(S, group)
            seen |= set(orb)
            met = _shapes(orb, desc, F)
            canon_form = min(orb, key=Matrix2.sort_key)
            if not met:
                chk.discrepancies.append(f"{desc}: orbit of {canon_form} ({len(orb)} forms) meets no shape")
            elif len(met) > 1:
                labels = ", ".join(desc.shape_label(i) for i in sorted(met))
                chk.discrepancies.append(f"{desc}: orbit of {canon_form} meets several shapes: {labels}")
            # constancy of canonicalization on the orbit
            if met:
                ref = canonicalize_form(S, desc)
                for T in orb:
                    if canonicalize_form(T, desc).form != ref.form:
                        chk.discrepancies.append(f"{desc}: canonical form not constant on orbit of {canon_form}")
                        break
    return chk


def _shapes(orbit, desc, F):
    index = _shape_index(desc, F)
    met = set()
    for T in orbit:
        for i, _ in index.get(T.entries, ()):
            met.add(i)
    return met


# ---------------------------------------------------------------------------
# cross-checks between the form and ideal characterizations of Frobenius algebras


def oracle_disagreements(mscs) -> list:
    """MSCs where the compatible-form oracle and the functional oracle disagree."""
    out = []
    for A in mscs:
        has = solve_frobenius_forms(A).has_nondegenerate
        if has != (is_frobenius_via_functional(A) is not None):
            out.append(A)
    return out


def duality_failures(mscs, unital_only: bool = False) -> list:
    """(A, ideal, reason) for Frobenius A violating l(r(L)) = L or r(l(R)) = R with complementary dims."""
    out = []
    for A in mscs:
        if unital_only and find_unit(A) is None:
            continue
        if not solve_frobenius_forms(A).has_nondegenerate:
            continue
        left, right = one_sided_ideals(A)
        for L in left:
            r = annihilator(A, L, "right")
            if annihilator(A, r, "left") != L or r.dimension + L.dimension != 2:
                out.append((A, L, "left"))
        for R in right:
            l = annihilator(A, R, "left")
            if annihilator(A, l, "right") != R or l.dimension + R.dimension != 2:
                out.append((A, R, "right"))
    return out


# ---------------------------------------------------------------------------
# persistence


def save_report(report: CensusReport, path, timing: bool = False):
    with open(path, "w") as fh:
        json.dump(report.to_json(timing), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_report(path, expected_field: str | None = None) -> CensusReport:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ReportError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(data, dict) or data.get("schema") != SCHEMA:
        raise ReportError(f"{path}: schema {data.get('schema') if isinstance(data, dict) else None!r}"
                          f" is not {SCHEMA}")
    try:
        report = CensusReport(
            data["field"], dict(data["counts"]),
            [ClassRecord(c["label"], int(c["orbit_size"]), int(c["aut_order"]), c["rep"]) for c in data["classes"]],
            [TheoremCheck.from_json(c) for c in data["checks"]],
            float(data.get("elapsed", 0.0)))
    except (KeyError, TypeError) as exc:
        raise ReportError(f"{path}: malformed report ({exc})") from exc
    if expected_field is not None and report.field != expected_field:
        raise ReportError(f"{path}: report is for {report.field}, expected {expected_field}")
    report.validate()
    return report

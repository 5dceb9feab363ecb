"""Catalogs of two-dimensional associative algebras, their automorphism groups,
pair representatives and Frobenius representatives, stored as data, plus the
classifiers that map arbitrary inputs onto them.

Every catalog record is a template evaluated by :mod:`f2a.expr`, so the
brute-force census can diff the printed lists against exhaustive enumeration
without any special-casing in code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache

from . import expr
from .core import (
    Matrix2,
    NotAssociativeError,
    StructureMatrix,
    automorphism_group,
    find_unit,
    gl2,
    identity,
    is_associative,
    transform,
)
from .expr import ANY, NONZERO, MatrixTemplate
from .fields import (
    FieldError,
    affine_square_raw,
    artin_schreier_raw,
    normalize_square_free,
    square_class_raw,
)
from .forms import DegenerateFormError, congruence, is_nondegenerate
from .frobenius import frobenius_defect, is_frobenius_pair

__all__ = [
    "TrivialAlgebraError",
    "CatalogMatchError",
    "ItemMatchError",
    "Family",
    "AutCase",
    "CatalogItem",
    "CatalogEntry",
    "CanonicalLabel",
    "AlgebraClassification",
    "PairLabel",
    "FrobeniusLabel",
    "NotFrobenius",
    "char_class",
    "families",
    "catalog",
    "catalog_collisions",
    "entry_for",
    "form_orbit",
    "normalize_parameter",
    "classify_algebra",
    "classify_pair",
    "classify_frobenius_pair",
    "pair_items",
    "frobenius_items",
    "item_index",
    "items_met",
]

NOT23, CHAR2, CHAR3 = "not23", "char2", "char3"


class TrivialAlgebraError(ValueError):
    """The zero multiplication is not part of any catalog."""


class CatalogMatchError(LookupError):
    """An associative algebra matched no catalog entry."""

    def __init__(self, msg, msc=None):
        super().__init__(msg)
        self.msc = msc


class ItemMatchError(LookupError):
    """A pair matched no printed pair representative."""

    def __init__(self, msg, msc=None, form=None):
        super().__init__(msg)
        self.msc = msc
        self.form = form


def char_class(F) -> str:
    p = F.characteristic
    if p == 2:
        return CHAR2
    if p == 3:
        return CHAR3
    return NOT23


# ---------------------------------------------------------------------------
# algebra families and automorphism descriptors


@dataclass(frozen=True)
class AutCase:
    """Printed automorphism set, valid when ``when`` holds for the family parameter."""

    template: str
    params: tuple = ()
    when: str | None = None


@dataclass(frozen=True)
class Family:
    tag: str
    msc: str
    param: str | None = None
    rule: str | None = None  # square-class | artin-schreier | affine-square
    aut: tuple = ()
    unit: str | None = None


_T = (("t", NONZERO),)
_ST = (("s", ANY), ("t", NONZERO))
_PS = (("p", NONZERO), ("s", ANY))

_FAMILIES = {
    NOT23: (
        Family("A3(1,0,0)", "1,0,0,0;0,0,0,0", aut=(AutCase("1,0;0,t", _T),)),
        Family("A3(1,0,1)", "1,0,0,0;0,1,0,0", aut=(AutCase("1,0;s,t", _ST),)),
        Family("A3(1/2,0,0)", "1/2,0,0,0;0,0,1/2,0", aut=(AutCase("1,0;s,t", _ST),)),
        Family("A3(1/2,alpha4,1/2)", "1/2,0,0,alpha4;0,1/2,1/2,0", "alpha4", "square-class",
               (AutCase("1,0;0,t", _T, "alpha4 == 0"),
                AutCase("1,0;0,e", (("e", ("1", "-1")),), "alpha4 != 0")),
               unit="2,0"),
        Family("A13", "0,0,0,0;1,0,0,0", aut=(AutCase("p,0;s,p**2", _PS),)),
    ),
    CHAR2: (
        Family("A3,2(1,0,0)", "1,0,0,0;0,0,0,0", aut=(AutCase("1,0;0,t", _T),)),
        Family("A3,2(1,0,1)", "1,0,0,0;0,1,0,0", aut=(AutCase("1,0;s,t", _ST),)),
        Family("A4,2(1,beta1,0)", "1,1,1,0;beta1,0,0,1", "beta1", "artin-schreier",
               (AutCase("p,0;s,1", _PS, "beta1 == 0"),
                AutCase("1,0;s,1", (("s", ANY),), "beta1 != 0")),
               unit="0,1"),
        Family("A6,2(1,0)", "1,0,0,0;0,0,1,0", aut=(AutCase("1,0;0,1"),)),
        Family("A11,2(beta1)", "0,1,1,0;beta1,0,0,1", "beta1", "affine-square",
               (AutCase("p,0;beta1*(p-1),1", (("p", NONZERO),)),),
               unit="0,1"),
        Family("A12,2", "0,0,0,0;1,0,0,0", aut=(AutCase("p,0;s,p**2", _PS),)),
    ),
    CHAR3: (
        Family("A3,3(1,0,0)", "1,0,0,0;0,0,0,0", aut=(AutCase("1,0;0,t", _T),)),
        Family("A3,3(1,0,1)", "1,0,0,0;0,1,0,0", aut=(AutCase("1,0;s,t", _ST),)),
        Family("A3,3(2,0,0)", "2,0,0,0;0,0,2,0", aut=(AutCase("1,0;1+2*t,t", _T),)),
        Family("A3,3(2,alpha4,2)", "2,0,0,alpha4;0,2,2,0", "alpha4", "square-class",
               (AutCase("1,0;0,1", (), "alpha4 == 0"),
                AutCase("1,0;s,1", (("s", ANY),), "alpha4 != 0")),
               unit="2,0"),
        Family("A13,3", "0,0,0,0;1,0,0,0", aut=(AutCase("p,0;s,2*p**2", _PS),)),
    ),
}


def families(F) -> tuple:
    return _FAMILIES[char_class(F)]


def family_by_tag(tag: str) -> Family:
    for fams in _FAMILIES.values():
        for fam in fams:
            if fam.tag == tag:
                return fam
    raise KeyError(tag)


def normalize_parameter(rule: str, value, F):
    """Minimum of the parameter's orbit (square-free part over the rationals)."""
    if not F.is_finite:
        if rule != "square-class":
            raise FieldError(f"rule {rule!r} is not available over the rationals")
        return normalize_square_free(_wrap(F, value)).value
    orbit = {
        "square-class": square_class_raw,
        "artin-schreier": artin_schreier_raw,
        "affine-square": affine_square_raw,
    }[rule](F, value)
    return min(orbit, key=F.sort_key)


def _wrap(F, v):
    from .fields import FieldElement

    return v if isinstance(v, FieldElement) else FieldElement(F, v)


@dataclass(frozen=True)
class CatalogEntry:
    """One family instantiated at one (orbit-minimal) parameter value."""

    family: Family
    field: object
    value: object = None  # raw parameter value, None for non-parametric families

    @property
    def env(self):
        return {} if self.family.param is None else {self.family.param: self.value}

    @property
    def msc(self) -> StructureMatrix:
        return StructureMatrix(self.field, MatrixTemplate(self.family.msc).instantiate(self.field, self.env))

    def label(self) -> "CanonicalLabel":
        return CanonicalLabel(char_class(self.field), self.family.tag, self.field,
                              self.family.param, self.value)

    def printed_unit(self):
        if self.family.unit is None:
            return None
        return tuple(expr.evaluate(t, self.field) for t in self.family.unit.split(","))

    def aut_case(self) -> AutCase:
        for case in self.family.aut:
            if case.when is None or expr.evaluate(case.when, self.field, self.env):
                return case
        raise LookupError(f"no automorphism descriptor for {self.label()}")

    def printed_automorphisms(self) -> list:
        """The printed automorphism set instantiated over the field (distinct, scan order)."""
        F = self.field
        case = self.aut_case()
        tpl = MatrixTemplate(case.template)
        out = {Matrix2(F, tpl.instantiate(F, env)) for env in expr.assignments(F, case.params, self.env)}
        return sorted(out, key=Matrix2.sort_key)

    def __str__(self):
        return str(self.label())


def catalog(F) -> list:
    """Expanded catalog: each parametric family yields one entry per parameter orbit."""
    out = []
    for fam in families(F):
        if fam.param is None:
            out.append(CatalogEntry(fam, F))
            continue
        if not F.is_finite:
            raise FieldError("parametric families cannot be expanded over the rationals")
        reps = sorted({normalize_parameter(fam.rule, v, F) for v in F.elements()}, key=F.sort_key)
        out.extend(CatalogEntry(fam, F, v) for v in reps)
    return out


# ---------------------------------------------------------------------------
# labels


_SHORT = {"alpha4": "a4", "beta1": "b1"}


@dataclass(frozen=True)
class CanonicalLabel:
    char_class: str
    family: str
    field: object
    param: str | None = None
    value: object = None

    @property
    def params(self) -> dict:
        return {} if self.param is None else {self.param: self.field.format(self.value)}

    def text(self) -> str:
        """Notation in the style of the printed theorems, e.g. A_3(1/2, a4=2, 1/2)."""
        name, _, args = self.family.partition("(")
        num = name[1:]
        head = f"A_{{{num}}}" if "," in num else f"A_{num}"
        if not args:
            return head
        parts = []
        for a in args.rstrip(")").split(","):
            if a == self.param:
                parts.append(f"{_SHORT.get(a, a)}={self.field.format(self.value)}")
            else:
                parts.append(a)
        return f"{head}({', '.join(parts)})"

    def __str__(self):
        if self.param is None:
            return self.family
        return f"{self.family}[{self.param}={self.field.format(self.value)}]"


@dataclass(frozen=True)
class AlgebraClassification:
    label: CanonicalLabel
    witness: Matrix2
    representative: StructureMatrix

    def to_json(self):
        return {"family": self.label.family, "params": self.label.params,
                "char_class": self.label.char_class, "witness": str(self.witness),
                "representative": str(self.representative), "text": self.label.text()}


# ---------------------------------------------------------------------------
# algebra classification


@lru_cache(maxsize=None)
def _rep_table(F):
    """MSC -> (entry position, g with transform(rep, g) == MSC), plus collisions."""
    entries = catalog(F)
    table, collisions = {}, []
    for pos, entry in enumerate(entries):
        R = entry.msc
        for g in gl2(F):
            B = transform(R, g)
            if B in table:
                if table[B][0] != pos:
                    collisions.append((table[B][0], pos))
                continue
            table[B] = (pos, g)
    return tuple(entries), table, tuple(sorted(set(collisions)))


def catalog_collisions(F):
    """Pairs of expanded entries whose orbits intersect (should be empty)."""
    return _rep_table(F)[2]


def classify_algebra(A: StructureMatrix) -> AlgebraClassification:
    """Catalog label of A with a witness g such that transform(A, g) is the representative."""
    if not is_associative(A):
        raise NotAssociativeError(f"{A} is not associative")
    if A.is_zero():
        raise TrivialAlgebraError("the zero algebra is excluded from the catalogs")
    F = A.field
    if not F.is_finite:
        return _classify_rational(A)
    entries, table, _ = _rep_table(F)
    hit = table.get(A)
    if hit is None:
        raise CatalogMatchError(f"{A} matches no catalog entry over {F.name}", A)
    pos, g = hit
    entry = entries[pos]
    return AlgebraClassification(entry.label(), g.inverse(), entry.msc)


def _match_template(fam: Family, A: StructureMatrix):
    """Parameter value if A is literally an instance of the family template."""
    F = A.field
    cells = MatrixTemplate(fam.msc).cells
    env = {}
    for cell, x in zip(cells, A.entries):
        if fam.param is not None and cell == fam.param:
            env[fam.param] = x
    if fam.param is not None and fam.param not in env:
        return None
    inst = MatrixTemplate(fam.msc).instantiate(F, env)
    if inst != A.entries:
        return None
    return env.get(fam.param) if fam.param else None, True


def _classify_rational(A: StructureMatrix) -> AlgebraClassification:
    F = A.field
    for fam in families(F):
        m = _match_template(fam, A)
        if m is None:
            continue
        value, _ = m
        if fam.param is None:
            return AlgebraClassification(CatalogEntry(fam, F).label(), identity(F), A)
        s = normalize_parameter(fam.rule, value, F)
        if s == 0:
            entry = CatalogEntry(fam, F, s)
            return AlgebraClassification(entry.label(), identity(F), entry.msc)
        # value = s * t^2; diag(1, 1/t) rescales alpha4 by 1/t^2
        ratio = Fraction(value) / Fraction(s)
        t = Fraction(math.isqrt(ratio.numerator), math.isqrt(ratio.denominator))
        g = Matrix2(F, (F.one, F.zero, F.zero, F.inv(t)))
        entry = CatalogEntry(fam, F, s)
        return AlgebraClassification(entry.label(), g, entry.msc)
    raise CatalogMatchError(f"{A} is not in template shape; unclassified over Q", A)


def entry_for(label: CanonicalLabel) -> CatalogEntry:
    fam = family_by_tag(label.family)
    return CatalogEntry(fam, label.field, label.value)


# ---------------------------------------------------------------------------
# pair and Frobenius representatives


@dataclass(frozen=True)
class CatalogItem:
    """One printed (algebra, form) representative family.

    ``form``/``conditions`` hold the reading used for verdicts; the verbatim
    printed reading is kept alongside whenever the two differ.
    """

    group: str  # L1 | L2 | L3 | F-not23 | F-char2 | F-char3
    index: int
    family: str
    form: str
    conditions: tuple = ()
    family_domain: object = ANY
    verbatim_form: str | None = None
    verbatim_conditions: tuple | None = None

    @property
    def corrected(self) -> bool:
        return self.verbatim_form is not None or self.verbatim_conditions is not None

    def reading(self, verbatim: bool = False):
        if verbatim:
            return (self.verbatim_form or self.form,
                    self.conditions if self.verbatim_conditions is None else self.verbatim_conditions)
        return self.form, self.conditions

    def params(self, verbatim: bool = False) -> list:
        form, conds = self.reading(verbatim)
        names = MatrixTemplate(form).names()
        for c in conds:
            names |= expr.names_in(c)
        fam = family_by_tag(self.family)
        names.discard(fam.param)
        return sorted(names)

    def describe(self, verbatim: bool = False) -> str:
        form, conds = self.reading(verbatim)
        text = f"{self.group} item {self.index}: ({self.family}, ({form.replace(';', '; ')}))"
        if conds:
            text += " where " + ", ".join(conds)
        return text


def _items(group, family, rows):
    out = []
    for i, row in enumerate(rows, 1):
        if row is None:
            continue
        out.append(CatalogItem(group, i, family if isinstance(family, str) else family[i], *row))
    return out


_A3H = "A3(1/2,alpha4,1/2)"
_AD = ("a*d != 0",)


def _lemma1():
    fam = {}
    rows = []

    def add(f, *row):
        rows.append(row)
        fam[len(rows)] = f

    add("A3(1,0,0)", "a,1;c,d", ("a*d - c != 0",))
    add("A3(1,0,0)", "a,0;1,d", _AD)
    add("A3(1,0,0)", "a,0;0,d", _AD)
    add("A3(1,0,1)", "a,0;1,d", _AD)
    add("A3(1,0,1)", "a,0;0,d", _AD)
    add("A3(1,0,1)", "0,1;c,0", ("c != 0", "c + 1 != 0"))
    add("A3(1,0,1)", "a,1;-1,0", ())
    add("A3(1/2,0,0)", "a,0;1,d", _AD)
    add("A3(1/2,0,0)", "a,0;0,d", _AD)
    add("A3(1/2,0,0)", "0,1;c,0", ("c != 0", "c + 1 != 0"))
    add("A3(1/2,0,0)", "a,1;-1,0", ())
    add(_A3H, "a,1;c,d", ("a*d - c != 0",), ("0",))
    add(_A3H, "a,0;1,d", _AD, ("0",))
    add(_A3H, "a,0;0,d", _AD, ("0",))
    add(_A3H, "a,b;c,d", ("alpha4 != 0", "a*d - b*c != 0"))
    add("A13", "a,0;c,d", _AD)
    add("A13", "0,b;c,0", ("b*c != 0", "b + c != 0"), ANY, None, ("b*c != 0",))
    add("A13", "a,b;-b,0", ("b**2 != 0",))
    return _items("L1", fam, rows)


def _lemma2():
    fam = {}
    rows = []

    def add(f, *row):
        rows.append(row)
        fam[len(rows)] = f

    a11, a4 = "A11,2(beta1)", "A4,2(1,beta1,0)"
    add("A12,2", "a,0;c,d", _AD)
    add("A12,2", "0,b;c,0", ("b*c != 0", "b + c != 0"), ANY, None, ("b*c != 0",))
    add("A12,2", "a,b;-b,0", ("b**2 != 0",))
    add(a11, "a,0;c,d", _AD)
    add(a11, "a,-beta1*d;0,d", _AD)
    add(a11, "a,-beta1*d;-beta1*d,d", ("a*d - beta1**2*d**2 != 0",))
    add(a11, "a,1;c,0", ("c != 0",))
    add("A6,2(1,0)", "a,b;c,d", ("a*d - b*c != 0",))
    add(a4, "a,0;1,d", _AD, ("0",))
    add(a4, "a,0;0,d", _AD, ("0",))
    add(a4, "0,1;c,0", ("c != 0", "c + 1 != 0"), ("0",))
    add(a4, "a,1;-1,0", (), ("0",))
    add(a4, "a,0;c,d", ("beta1 != 0", "a*d != 0"))
    add(a4, "0,b;c,0", ("beta1 != 0", "b*c != 0", "b + c != 0"), ANY, "0,b;c*a,0")
    add(a4, "a,b;-b,0", ("beta1 != 0", "b != 0"))
    add("A3,2(1,0,0)", "a,1;c,d", ("a*d - c != 0",))
    add("A3,2(1,0,0)", "a,0;1,d", _AD)
    add("A3,2(1,0,0)", "a,0;0,d", _AD)
    add("A3,2(1,0,1)", "a,0;1,d", _AD)
    add("A3,2(1,0,1)", "a,0;0,d", _AD)
    add("A3,2(1,0,1)", "0,1;c,0", ("c != 0", "c + 1 != 0"))
    add("A3,2(1,0,1)", "a,1;-1,0", ())
    return _items("L2", fam, rows)


def _lemma3():
    fam = {}
    rows = []

    def add(f, *row):
        rows.append(row)
        fam[len(rows)] = f

    a3h = "A3,3(2,alpha4,2)"
    add("A13,3", "a,0;c,d", _AD)
    add("A13,3", "0,b;c,0", ("b + c != 0", "b*c != 0"))
    add("A13,3", "a,b;-b,0", ("b**2 != 0",))
    add("A3,3(1,0,1)", "a,0;1,d", _AD)
    add("A3,3(1,0,1)", "a,0;0,d", _AD)
    add("A3,3(1,0,1)", "0,1;c,0", ("c != 0", "c + 1 != 0"))
    add("A3,3(1,0,1)", "a,1;-1,0", ())
    add("A3,3(1,0,0)", "a,1;c,d", ("a*d - c != 0",))
    add("A3,3(1,0,0)", "a,0;1,d", _AD)
    add("A3,3(1,0,0)", "a,0;0,d", _AD)
    add("A3,3(2,0,0)", "a,0;c,d", _AD)
    add("A3,3(2,0,0)", "a,-d;0,d", _AD)
    add("A3,3(2,0,0)", "a,-d;-d,d", ("d*(a - d) != 0",))
    add("A3,3(2,0,0)", "a,1;c,0", ("c != 0",))
    add(a3h, "a,b;c,d", ("a*d - b*c != 0",), ("0",))
    add(a3h, "a,0;c,d", ("alpha4 != 0", "a*d != 0"))
    add(a3h, "0,b;c,0", ("alpha4 != 0", "b*c != 0", "b + c != 0"))
    add(a3h, "a,b;-b,0", ("alpha4 != 0", "b != 0"))
    return _items("L3", fam, rows)


def _frobenius_lists():
    f0 = [
        CatalogItem("F-not23", 1, "A3(1,0,0)", "a,0;0,d", _AD),
        CatalogItem("F-not23", 2, _A3H, "a,1;1,0", (), ("0",)),
        CatalogItem("F-not23", 3, _A3H, "a,b;b,2*alpha4*a", ("2*alpha4*a**2 - b**2 != 0", "alpha4 != 0")),
        CatalogItem("F-not23", 4, "A13", "0,b;b,0", ("b != 0",)),
    ]
    a4, a11 = "A4,2(1,beta1,0)", "A11,2(beta1)"
    f2 = [
        CatalogItem("F-char2", 1, "A3,2(1,0,0)", "a,0;0,d", _AD),
        CatalogItem("F-char2", 2, a4, "1,1;-1,0", (), ("0",)),
        CatalogItem("F-char2", 3, a4, "beta1*d,0;0,d", ("beta1*d != 0",)),
        CatalogItem("F-char2", 4, a4, "b,b;-b,0", ("beta1 != 0", "b != 0")),
        CatalogItem("F-char2", 5, a11, "beta1*d,0;0,d", ("beta1*d**2 != 0",)),
        CatalogItem("F-char2", 6, a11, "beta1*d,-beta1*d;-beta1*d,d", ("beta1*d**2*(1 - beta1) != 0",)),
        CatalogItem("F-char2", 7, a11, "0,1;1,0", ()),
        CatalogItem("F-char2", 8, "A12,2", "0,b;b,0", ("b != 0",)),
    ]
    a3h = "A3,3(2,alpha4,2)"
    f3 = [
        CatalogItem("F-char3", 1, "A3,3(1,0,0)", "a,0;0,d", _AD),
        CatalogItem("F-char3", 2, a3h, "a,b;b,0", ("b != 0",), ("0",)),
        CatalogItem("F-char3", 3, a3h, "a,0;0,2*alpha4*a", ("alpha4*a != 0",)),
        CatalogItem("F-char3", 4, a3h, "0,b;b,0", ("alpha4 != 0", "b != 0")),
        CatalogItem("F-char3", 5, "A13,3", "0,b;b,0", ("b != 0",)),
    ]
    return {NOT23: tuple(f0), CHAR2: tuple(f2), CHAR3: tuple(f3)}


_PAIR_ITEMS = {NOT23: tuple(_lemma1()), CHAR2: tuple(_lemma2()), CHAR3: tuple(_lemma3())}
_FROBENIUS_ITEMS = _frobenius_lists()


def pair_items(F) -> tuple:
    return _PAIR_ITEMS[char_class(F)]


def frobenius_items(F) -> tuple:
    return _FROBENIUS_ITEMS[char_class(F)]


@dataclass
class ItemIndex:
    """Item instances transported onto the expanded catalog representatives."""

    entries: tuple
    forms: dict  # entry position -> {form entries: [(item index, params)]}
    degenerate: list  # (item index, params) instances with det 0
    non_associative: list  # (item index, family value) whose algebra is not associative
    instances: dict  # item index -> list of (family value, params, A, S)


@lru_cache(maxsize=None)
def item_index(kind: str, F, verbatim: bool = False) -> ItemIndex:
    """Index of every instance of the pair (kind='pairs') or Frobenius (kind='frobenius') items."""
    if not F.is_finite:
        raise FieldError("item indexes are only built over finite fields")
    items = pair_items(F) if kind == "pairs" else frobenius_items(F)
    entries, table, _ = _rep_table(F)
    forms, degenerate, nonassoc, instances = {}, [], [], {}
    for item in items:
        fam = family_by_tag(item.family)
        form, conds = item.reading(verbatim)
        tpl = MatrixTemplate(form)
        values = expr.domain_values(F, item.family_domain) if fam.param else [None]
        names = item.params(verbatim)
        for v in values:
            fenv = {} if fam.param is None else {fam.param: v}
            A = StructureMatrix(F, MatrixTemplate(fam.msc).instantiate(F, fenv))
            if not is_associative(A) or A not in table:
                nonassoc.append((item.index, v))
                continue
            pos, g = table[A]
            w = g.inverse()
            for env in expr.assignments(F, [(n, ANY) for n in names], fenv):
                if not expr.holds(conds, F, env):
                    continue
                S = Matrix2(F, tpl.instantiate(F, env))
                params = {n: env[n] for n in names}
                if fam.param:
                    params[fam.param] = v
                if not is_nondegenerate(S):
                    degenerate.append((item.index, params))
                    continue
                instances.setdefault(item.index, []).append((v, params, A, S))
                T = congruence(S, w)
                forms.setdefault(pos, {}).setdefault(T.entries, []).append((item.index, params))
    return ItemIndex(entries, forms, degenerate, nonassoc, instances)


@lru_cache(maxsize=None)
def _aut(entry_msc: StructureMatrix):
    return tuple(automorphism_group(entry_msc))


def form_orbit(S: Matrix2, group) -> dict:
    out = {}
    for h in group:
        out.setdefault(congruence(S, h), h)
    return out


def items_met(index: ItemIndex, pos: int, orbit) -> dict:
    """item index -> (orbit-minimal form, params) for every item instance in the orbit."""
    table = index.forms.get(pos, {})
    met = {}
    for T in sorted(orbit, key=Matrix2.sort_key):
        for i, params in table.get(T.entries, ()):
            met.setdefault(i, (T, params))
    return met


@dataclass(frozen=True)
class PairLabel:
    lemma: str
    item: int
    params: dict
    algebra: CanonicalLabel
    canonical_form: Matrix2
    witness: Matrix2
    overlaps: tuple = ()

    def to_json(self):
        F = self.algebra.field
        return {"lemma": self.lemma, "item": self.item,
                "params": {k: F.format(v) for k, v in sorted(self.params.items())},
                "algebra": self.algebra.family, "algebra_params": self.algebra.params,
                "canonical_form": str(self.canonical_form), "witness": str(self.witness),
                "overlaps": list(self.overlaps)}


@dataclass(frozen=True)
class FrobeniusLabel:
    char_class: str
    item: int
    params: dict
    algebra: CanonicalLabel
    canonical_form: Matrix2
    witness: Matrix2
    overlaps: tuple = ()

    def to_json(self):
        F = self.algebra.field
        return {"frobenius": True, "char_class": self.char_class, "item": self.item,
                "params": {k: F.format(v) for k, v in sorted(self.params.items())},
                "algebra": self.algebra.family, "algebra_params": self.algebra.params,
                "canonical_form": str(self.canonical_form), "witness": str(self.witness),
                "overlaps": list(self.overlaps)}


@dataclass(frozen=True)
class NotFrobenius:
    residual: int | None  # 1-based index of the first failing equation; None if only det S = 0
    defect: tuple = dc_field(default=())

    def to_json(self):
        return {"frobenius": False, "first_nonzero_residual": self.residual, "defect": list(self.defect)}


def _transport(A, S):
    F = A.field
    if A.field != S.field:
        raise FieldError("MSC and form over different fields")
    if not F.is_finite:
        raise FieldError("pair classification needs a finite field")
    if not is_nondegenerate(S):
        raise DegenerateFormError(f"form {S} is degenerate")
    cls = classify_algebra(A)
    entries, table, _ = _rep_table(F)
    pos = table[cls.representative][0]
    S1 = congruence(S, cls.witness)
    orbit = form_orbit(S1, _aut(cls.representative))
    canon = min(orbit, key=Matrix2.sort_key)
    return cls, pos, orbit, canon, cls.witness @ orbit[canon]


def classify_pair(A: StructureMatrix, S: Matrix2) -> PairLabel:
    """Printed pair representative of (A, S) and a witness taking (A, S) to (rep, canonical form)."""
    cls, pos, orbit, canon, witness = _transport(A, S)
    index = item_index("pairs", A.field)
    met = items_met(index, pos, orbit)
    if not met:
        raise ItemMatchError(f"({A}, {S}) matches no printed pair representative", A, S)
    first = min(met)
    lemma = pair_items(A.field)[0].group
    others = tuple(sorted(i for i in met if i != first))
    return PairLabel(lemma, first, met[first][1], cls.label, canon, witness, others)


def classify_frobenius_pair(A: StructureMatrix, S: Matrix2):
    """FrobeniusLabel for Frobenius pairs, NotFrobenius (with first failing residual) otherwise."""
    if not is_associative(A):
        raise NotAssociativeError(f"{A} is not associative")
    if not is_nondegenerate(S):
        raise DegenerateFormError(f"form {S} is degenerate")
    if not is_frobenius_pair(A, S):
        d = frobenius_defect(A, S)
        return NotFrobenius(d.first_nonzero(), tuple(d.to_json()))
    cls, pos, orbit, canon, witness = _transport(A, S)
    index = item_index("frobenius", A.field)
    met = items_met(index, pos, orbit)
    if not met:
        raise ItemMatchError(f"Frobenius pair ({A}, {S}) matches no printed representative", A, S)
    first = min(met)
    others = tuple(sorted(i for i in met if i != first))
    return FrobeniusLabel(char_class(A.field), first, met[first][1], cls.label, canon, witness, others)


def unit_of(entry: CatalogEntry):
    return find_unit(entry.msc)

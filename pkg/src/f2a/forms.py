"""Bilinear forms S = (a, b; c, d) under the congruence action S -> g^T S g.

Forms reuse :class:`~f2a.core.Matrix2`.  The eight printed groups G1..G8 and
their canonical shapes are kept as data; a form's canonical representative is
the minimum of its orbit in the canonical element order, and its shape is the
first printed shape (in listing order) met anywhere on the orbit.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from . import expr
from .core import Matrix2, SingularMatrixError
from .expr import ANY, NONZERO, MatrixTemplate
from .fields import FieldError

BilinearForm = Matrix2
BasisChange = Matrix2

__all__ = [
    "BilinearForm",
    "DegenerateFormError",
    "ShapeMismatchError",
    "GroupDescriptor",
    "Shape",
    "GROUP_TAGS",
    "is_nondegenerate",
    "congruence",
    "group_elements",
    "generated_group",
    "orbit_of_form",
    "canonicalize_form",
    "CanonicalForm",
]


class DegenerateFormError(ValueError):
    pass


class ShapeMismatchError(ValueError):
    """The orbit meets none of the printed shapes."""

    def __init__(self, msg, form=None, canonical=None):
        super().__init__(msg)
        self.form = form
        self.canonical = canonical


@dataclass(frozen=True)
class Shape:
    template: str
    conditions: tuple = ()


# tag -> (matrix template, parameters, allowed characteristics test, shapes)
_GROUPS = {
    "G1": ("1,0;0,t", (("t", NONZERO),), None, (
        Shape("a,1;c,d", ("a*d - c != 0",)),
        Shape("a,0;1,d", ("a*d != 0",)),
        Shape("a,0;0,d", ("a*d != 0",)),
    )),
    "G2": ("1,0;s,t", (("s", ANY), ("t", NONZERO)), None, (
        Shape("a,0;1,d", ("a*d != 0",)),
        Shape("a,0;0,d", ("a*d != 0",)),
        Shape("0,1;c,0", ("c != 0", "c + 1 != 0")),
        Shape("a,1;-1,0"),
    )),
    "G3": ("1,0;s,1", (("s", ANY),), None, (
        Shape("a,0;c,d", ("a*d != 0",)),
        Shape("0,b;c,0", ("b*c != 0", "b + c != 0")),
        Shape("a,b;-b,0", ("b != 0",)),
    )),
    "G4": ("p,0;s,p**2", (("p", NONZERO), ("s", ANY)), ("!=", 3), (
        Shape("a,0;c,d", ("a*d != 0",)),
        Shape("0,b;c,0", ("b*c != 0", "b != -c")),
        Shape("a,b;-b,0", ("b**2 != 0",)),
    )),
    "G5": ("p,0;s,2*p**2", (("p", NONZERO), ("s", ANY)), ("==", 3), (
        Shape("a,0;c,d", ("a*d != 0",)),
        Shape("0,b;c,0", ("b*c != 0", "b != -c")),
        Shape("a,b;-b,0", ("b != 0",)),
    )),
    "G6": ("p,0;beta1*(p-1),1", (("p", NONZERO),), ("==", 2), (
        Shape("a,0;c,d", ("a*d != 0",)),
        Shape("a,-beta1*d;0,d", ("a*d != 0",)),
        Shape("a,-beta1*d;-beta1*d,d", ("a*d - beta1**2*d**2 != 0",)),
        Shape("a,1;c,0", ("c != 0",)),
    )),
    "G7": ("1,0;1+2*t,t", (("t", NONZERO),), ("==", 3), (
        Shape("a,0;c,d", ("a*d != 0",)),
        Shape("a,-d;0,d", ("a*d != 0",)),
        Shape("a,-d;-d,d", ("d*(a - d) != 0",)),
        Shape("a,1;c,0", ("c != 0",)),
    )),
    "G8": ("1,0;0,e", (("e", ("1", "-1")),), ("!=", 2), (
        Shape("a,b;c,d", ("a*d - b*c != 0",)),
    )),
}

GROUP_TAGS = tuple(_GROUPS)


@dataclass(frozen=True)
class GroupDescriptor:
    """One of the printed groups G1..G8; G6 carries its beta1 (a raw field value)."""

    tag: str
    beta1: object = None

    def __post_init__(self):
        if self.tag not in _GROUPS:
            raise FieldError(f"unknown group {self.tag!r}; expected G1..G8")
        if self.tag == "G6" and self.beta1 is None:
            raise FieldError("G6 needs a beta1 value")

    @classmethod
    def parse(cls, name: str, beta1=None):
        tag = name.strip().upper()
        return cls(tag, beta1 if tag == "G6" else None)

    @property
    def template(self) -> MatrixTemplate:
        return MatrixTemplate(_GROUPS[self.tag][0])

    @property
    def params(self):
        return _GROUPS[self.tag][1]

    @property
    def shapes(self) -> tuple:
        return _GROUPS[self.tag][3]

    def compatible(self, F) -> bool:
        rule = _GROUPS[self.tag][2]
        if rule is None:
            return True
        op, ch = rule
        return (F.characteristic == ch) if op == "==" else (F.characteristic != ch)

    def env(self):
        return {} if self.beta1 is None else {"beta1": self.beta1}

    def shape_label(self, i: int) -> str:
        text = self.shapes[i].template.replace(";", "; ")
        return f"{self.tag}-shape-{i + 1}: ({text})"

    def __str__(self):
        return self.tag if self.beta1 is None else f"{self.tag}(beta1={self.beta1})"


def is_nondegenerate(S: Matrix2) -> bool:
    return S.det() != S.field.zero


def congruence(S: Matrix2, g: Matrix2) -> Matrix2:
    """g^T S g."""
    if not g.is_invertible():
        raise SingularMatrixError(f"singular basis change {g}")
    return g.transpose() @ S @ g


def group_elements(desc: GroupDescriptor, F) -> list:
    """The printed parametric set instantiated over a finite field (distinct, scan order)."""
    if not F.is_finite:
        raise FieldError("group elements can only be listed over a finite field")
    if not desc.compatible(F):
        raise FieldError(f"{desc.tag} is not defined in characteristic {F.characteristic}")
    out = set()
    for env in expr.assignments(F, desc.params, desc.env()):
        out.add(Matrix2(F, desc.template.instantiate(F, env)))
    return sorted(out, key=Matrix2.sort_key)


def is_closed(elements) -> bool:
    s = set(elements)
    return all(g @ h in s for g in s for h in s)


def generated_group(elements) -> list:
    """Closure of a finite set of invertible matrices under products."""
    elements = list(elements)
    group = set(elements)
    frontier = list(group)
    while frontier:
        new = []
        for g in frontier:
            for h in elements:
                for x in (g @ h, h @ g):
                    if x not in group:
                        group.add(x)
                        new.append(x)
        frontier = new
    return sorted(group, key=Matrix2.sort_key)


@lru_cache(maxsize=None)
def _descriptor_group(desc: GroupDescriptor, F):
    return tuple(generated_group(group_elements(desc, F)))


def orbit_of_form(S: Matrix2, group) -> dict:
    """Map image form -> first group element (in the given order) producing it."""
    out = {}
    for g in group:
        out.setdefault(congruence(S, g), g)
    return out


@lru_cache(maxsize=None)
def _shape_index(desc: GroupDescriptor, F):
    """form entries -> [(shape index, params)] over all instances of every shape."""
    index = {}
    for i, shape in enumerate(desc.shapes):
        tpl = MatrixTemplate(shape.template)
        free = sorted(tpl.names() - {"beta1"})
        for env in expr.assignments(F, [(n, ANY) for n in free], desc.env()):
            if not expr.holds(shape.conditions, F, env):
                continue
            ent = tpl.instantiate(F, env)
            params = {n: env[n] for n in free}
            index.setdefault(ent, []).append((i, params))
    return index


@dataclass(frozen=True)
class CanonicalForm:
    form: Matrix2
    witness: Matrix2
    shape: str | None = None
    shape_index: int | None = None
    shape_params: dict = dc_field(default_factory=dict, compare=False)
    overlaps: tuple = ()

    def to_json(self):
        F = self.form.field
        return {"form": str(self.form), "witness": str(self.witness), "shape": self.shape,
                "shape_params": {k: F.format(v) for k, v in sorted(self.shape_params.items())},
                "overlaps": list(self.overlaps)}


def shapes_met(orbit_forms, desc: GroupDescriptor, F) -> dict:
    """shape index -> orbit-minimal (form, params) meeting it."""
    index = _shape_index(desc, F)
    met = {}
    for T in sorted(orbit_forms, key=Matrix2.sort_key):
        for i, params in index.get(T.entries, ()):
            met.setdefault(i, (T, params))
    return met


def canonicalize_form(S: Matrix2, group) -> CanonicalForm:
    """Orbit minimum of S under ``group`` (a GroupDescriptor or explicit matrices).

    For descriptors the orbit is taken under the group generated by the printed
    set, and the first printed shape met on the orbit is attached.
    """
    F = S.field
    if not F.is_finite:
        raise FieldError("canonical forms are only computed over finite fields")
    if not is_nondegenerate(S):
        raise DegenerateFormError(f"form {S} is degenerate")
    desc = group if isinstance(group, GroupDescriptor) else None
    elements = _descriptor_group(desc, F) if desc else tuple(group)
    orb = orbit_of_form(S, elements)
    canon = min(orb, key=Matrix2.sort_key)
    if desc is None:
        return CanonicalForm(canon, orb[canon])
    met = shapes_met(orb, desc, F)
    if not met:
        raise ShapeMismatchError(f"orbit of {S} under {desc} meets no printed shape", S, canon)
    first = min(met)
    others = tuple(desc.shape_label(i) for i in sorted(met) if i != first)
    return CanonicalForm(canon, orb[canon], desc.shape_label(first), first, met[first][1], others)

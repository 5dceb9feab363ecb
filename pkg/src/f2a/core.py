"""Two-dimensional algebras given by their 2x4 matrix of structure constants.

Column order of the MSC is (e1e1, e1e2, e2e1, e2e2); row 1 holds the e1
coordinates (alpha1..alpha4), row 2 the e2 coordinates (beta1..beta4).

A basis change g (invertible 2x2) takes the basis e to e.g, i.e. the new basis
vectors are the columns of g written in the old basis.  The MSC transforms as
A' = g^-1 A (g (x) g) and coordinates as x' = g^-1 x.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from . import linalg
from .fields import FieldElement, FieldError

__all__ = [
    "SingularMatrixError",
    "NotAssociativeError",
    "Matrix2",
    "StructureMatrix",
    "AssociativeAlgebra",
    "split_top",
    "parse_matrix",
    "parse_msc",
    "identity",
    "multiply",
    "is_associative",
    "find_unit",
    "transform",
    "gl2",
    "are_isomorphic",
    "automorphism_group",
    "orbit",
]

PAIRS = ((0, 0), (0, 1), (1, 0), (1, 1))


class SingularMatrixError(ValueError):
    pass


class NotAssociativeError(ValueError):
    pass


def _raw(F, x):
    if isinstance(x, FieldElement):
        if x.field != F:
            raise FieldError(f"element of {x.field!r} used with {F!r}")
        return x.value
    if isinstance(x, int):
        return F.from_int(x)
    return x


@dataclass(frozen=True)
class Matrix2:
    """2x2 matrix (m11, m12, m21, m22) of raw field values.

    Used both for basis changes g and for bilinear forms S = (a, b; c, d).
    """

    field: object
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != 4:
            raise ValueError("a 2x2 matrix has 4 entries")

    @classmethod
    def of(cls, F, entries):
        return cls(F, tuple(_raw(F, x) for x in entries))

    def det(self):
        F = self.field
        a, b, c, d = self.entries
        return F.sub(F.mul(a, d), F.mul(b, c))

    def is_invertible(self) -> bool:
        return self.det() != self.field.zero

    def inverse(self) -> "Matrix2":
        F = self.field
        det = self.det()
        if det == F.zero:
            raise SingularMatrixError(f"singular matrix {self}")
        a, b, c, d = self.entries
        inv = F.inv(det)
        return Matrix2(F, (F.mul(d, inv), F.neg(F.mul(b, inv)), F.neg(F.mul(c, inv)), F.mul(a, inv)))

    def transpose(self) -> "Matrix2":
        a, b, c, d = self.entries
        return Matrix2(self.field, (a, c, b, d))

    def __matmul__(self, other: "Matrix2") -> "Matrix2":
        F = self.field
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        add, mul = F.add, F.mul
        return Matrix2(F, (add(mul(a, e), mul(b, g)), add(mul(a, f), mul(b, h)),
                           add(mul(c, e), mul(d, g)), add(mul(c, f), mul(d, h))))

    def apply(self, v):
        F = self.field
        a, b, c, d = self.entries
        return (F.add(F.mul(a, v[0]), F.mul(b, v[1])), F.add(F.mul(c, v[0]), F.mul(d, v[1])))

    def code(self) -> int:
        q = self.field.order
        a, b, c, d = self.entries
        return ((a * q + b) * q + c) * q + d

    def sort_key(self):
        return tuple(self.field.sort_key(x) for x in self.entries)

    def __str__(self):
        f = self.field.format
        a, b, c, d = self.entries
        return f"{f(a)},{f(b)};{f(c)},{f(d)}"


@dataclass(frozen=True)
class StructureMatrix:
    field: object
    entries: tuple  # (alpha1..alpha4, beta1..beta4)

    def __post_init__(self):
        if len(self.entries) != 8:
            raise ValueError("an MSC has 8 entries")

    @classmethod
    def of(cls, F, entries):
        return cls(F, tuple(_raw(F, x) for x in entries))

    @classmethod
    def zero(cls, F):
        return cls(F, (F.zero,) * 8)

    def product(self, i: int, j: int):
        """Coordinates of e_i e_j (0-based indices)."""
        c = 2 * i + j
        return (self.entries[c], self.entries[4 + c])

    def is_zero(self) -> bool:
        return all(x == self.field.zero for x in self.entries)

    def code(self) -> int:
        q = self.field.order
        n = 0
        for x in self.entries:
            n = n * q + x
        return n

    @classmethod
    def from_code(cls, F, code: int):
        q = F.order
        digits = []
        for _ in range(8):
            digits.append(code % q)
            code //= q
        return cls(F, tuple(reversed(digits)))

    def sort_key(self):
        return tuple(self.field.sort_key(x) for x in self.entries)

    def element(self, i: int) -> FieldElement:
        return FieldElement(self.field, self.entries[i])

    def __str__(self):
        f = self.field.format
        e = [f(x) for x in self.entries]
        return ",".join(e[:4]) + ";" + ",".join(e[4:])


def split_top(text: str, sep: str):
    """Split on ``sep`` outside square brackets."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def _parse_rows(text, F, ncols):
    rows = split_top(text.strip(), ";")
    if len(rows) != 2:
        raise FieldError(f"expected two ';'-separated rows in {text!r}")
    vals = []
    for row in rows:
        items = split_top(row, ",")
        if len(items) != ncols:
            raise FieldError(f"expected {ncols} entries per row in {text!r}")
        vals.extend(F.parse(t) for t in items)
    return tuple(vals)


def parse_matrix(text: str, F) -> Matrix2:
    """Parse "m11,m12;m21,m22"."""
    return Matrix2(F, _parse_rows(text, F, 2))


def parse_msc(text: str, F) -> StructureMatrix:
    """Parse "a1,a2,a3,a4;b1,b2,b3,b4"."""
    return StructureMatrix(F, _parse_rows(text, F, 4))


def identity(F) -> Matrix2:
    return Matrix2(F, (F.one, F.zero, F.zero, F.one))


def _mul_raw(F, e, x, y):
    add, mul = F.add, F.mul
    t = (mul(x[0], y[0]), mul(x[0], y[1]), mul(x[1], y[0]), mul(x[1], y[1]))
    r0 = add(add(mul(e[0], t[0]), mul(e[1], t[1])), add(mul(e[2], t[2]), mul(e[3], t[3])))
    r1 = add(add(mul(e[4], t[0]), mul(e[5], t[1])), add(mul(e[6], t[2]), mul(e[7], t[3])))
    return (r0, r1)


def multiply(A: StructureMatrix, x, y):
    """xy = A (x (x) y) for coordinate vectors x, y."""
    F = A.field
    x = tuple(_raw(F, v) for v in x)
    y = tuple(_raw(F, v) for v in y)
    return _mul_raw(F, A.entries, x, y)


def basis(F):
    return ((F.one, F.zero), (F.zero, F.one))


def is_associative(A: StructureMatrix) -> bool:
    """(e_i e_j) e_k == e_i (e_j e_k) on all eight basis triples."""
    F = A.field
    e = basis(F)
    for i, j, k in product(range(2), repeat=3):
        left = _mul_raw(F, A.entries, _mul_raw(F, A.entries, e[i], e[j]), e[k])
        right = _mul_raw(F, A.entries, e[i], _mul_raw(F, A.entries, e[j], e[k]))
        if left != right:
            return False
    return True


def find_unit(A: StructureMatrix):
    """The two-sided unit as a coordinate vector, or None."""
    F = A.field
    ent = A.entries
    rows, rhs = [], []
    # u e_i = sum_l u_l e_l e_i and e_i u = sum_l u_l e_i e_l, one equation per output coordinate
    for i in range(2):
        target = basis(F)[i]
        for m in range(2):
            rows.append((ent[4 * m + 2 * 0 + i], ent[4 * m + 2 * 1 + i]))
            rhs.append(target[m])
            rows.append((ent[4 * m + 2 * i + 0], ent[4 * m + 2 * i + 1]))
            rhs.append(target[m])
    sol = linalg.solve(F, rows, rhs, 2)
    if sol is None:
        return None
    u, kernel = sol
    if kernel:
        raise ArithmeticError(f"unit of {A} is not unique")
    return u


def transform(A: StructureMatrix, g: Matrix2) -> StructureMatrix:
    """MSC of the same multiplication in the basis e.g."""
    F = A.field
    h = g.inverse()
    g11, g12, g21, g22 = g.entries
    cols = ((g11, g21), (g12, g22))
    new = [h.apply(_mul_raw(F, A.entries, cols[i], cols[j])) for i, j in PAIRS]
    return StructureMatrix(F, tuple(v[0] for v in new) + tuple(v[1] for v in new))


@lru_cache(maxsize=None)
def _gl2(F):
    out = []
    for ent in product(F.elements(), repeat=4):
        m = Matrix2(F, ent)
        if m.is_invertible():
            out.append(m)
    return tuple(out)


def gl2(F):
    """GL(2, F) in canonical scan order (lexicographic on (g11, g12, g21, g22))."""
    if not F.is_finite:
        raise FieldError("GL(2, Q) cannot be enumerated")
    return _gl2(F)


def are_isomorphic(A: StructureMatrix, B: StructureMatrix):
    """First g in scan order with transform(A, g) == B, or None."""
    if A.field != B.field:
        raise FieldError("algebras over different fields")
    for g in gl2(A.field):
        if transform(A, g) == B:
            return g
    return None


def automorphism_group(A: StructureMatrix) -> list:
    """Stabilizer of A in GL(2, F), in scan order."""
    return [g for g in gl2(A.field) if transform(A, g) == A]


def orbit(A: StructureMatrix) -> dict:
    """Map image MSC -> first g in scan order producing it."""
    out = {}
    for g in gl2(A.field):
        out.setdefault(transform(A, g), g)
    return out


class AssociativeAlgebra:
    """An associative MSC with its unit cached."""

    def __init__(self, msc: StructureMatrix):
        if not is_associative(msc):
            raise NotAssociativeError(f"{msc} is not associative")
        self.msc = msc
        self.unit = find_unit(msc)

    @property
    def is_unital(self) -> bool:
        return self.unit is not None

    def __repr__(self):
        return f"AssociativeAlgebra({self.msc})"

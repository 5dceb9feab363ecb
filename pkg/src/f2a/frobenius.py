"""Frobenius conditions for a pair (A, S): the eight-equation compatibility
system, its solution space, and the ideal-theoretic characterizations
(functional with ideal-free kernel, annihilator duality).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import linalg
from .core import Matrix2, NotAssociativeError, StructureMatrix, is_associative, multiply
from .fields import FieldError

__all__ = [
    "FrobeniusDefect",
    "SolutionSpace",
    "Subspace",
    "LinearFunctional",
    "frobenius_defect",
    "identity_residuals",
    "is_frobenius_pair",
    "solve_frobenius_forms",
    "subspaces",
    "lines",
    "is_left_ideal",
    "is_right_ideal",
    "one_sided_ideals",
    "is_frobenius_via_functional",
    "annihilator",
]


@dataclass(frozen=True)
class FrobeniusDefect:
    field: object
    residuals: tuple

    def is_zero(self) -> bool:
        return all(r == self.field.zero for r in self.residuals)

    def first_nonzero(self):
        """1-based index of the first failing equation, or None."""
        for i, r in enumerate(self.residuals, 1):
            if r != self.field.zero:
                return i
        return None

    def to_json(self):
        return [self.field.format(r) for r in self.residuals]


def frobenius_defect(A: StructureMatrix, S: Matrix2) -> FrobeniusDefect:
    """Left-hand sides of the compatibility system, in printed order.

    Residual k is the coefficient of the k-th monomial x_i y_j z_l in
    sigma(xy, z) - sigma(x, yz).
    """
    if A.field != S.field:
        raise FieldError("MSC and form over different fields")
    F = A.field
    add, sub, mul = F.add, F.sub, F.mul
    a1, a2, a3, a4, b1, b2, b3, b4 = A.entries
    a, b, c, d = S.entries

    def lin(x, y, u, v):  # x*y + u*v
        return add(mul(x, y), mul(u, v))

    res = (
        sub(lin(a1, a, b1, c), lin(a1, a, b1, b)),
        sub(lin(a2, a, b2, c), lin(a3, a, b3, b)),
        sub(lin(a3, a, b3, c), lin(a1, c, b1, d)),
        sub(lin(a4, a, b4, c), lin(a3, c, b3, d)),
        sub(lin(a1, b, b1, d), lin(a2, a, b2, b)),
        sub(lin(a2, b, b2, d), lin(a4, a, b4, b)),
        sub(lin(a3, b, b3, d), lin(a2, c, b2, d)),
        sub(lin(a4, b, b4, d), lin(a4, c, b4, d)),
    )
    return FrobeniusDefect(F, res)


def _sigma(S: Matrix2, x, y):
    F = S.field
    a, b, c, d = S.entries
    sx = (F.add(F.mul(x[0], a), F.mul(x[1], c)), F.add(F.mul(x[0], b), F.mul(x[1], d)))
    return F.add(F.mul(sx[0], y[0]), F.mul(sx[1], y[1]))


def identity_residuals(A: StructureMatrix, S: Matrix2) -> list:
    """sigma(xy, z) - sigma(x, yz) on the eight basis triples, straight from the definition."""
    F = A.field
    e = ((F.one, F.zero), (F.zero, F.one))
    out = []
    for i, j, k in product(range(2), repeat=3):
        x, y, z = e[i], e[j], e[k]
        out.append(F.sub(_sigma(S, multiply(A, x, y), z), _sigma(S, x, multiply(A, y, z))))
    return out


def _require_associative(A):
    if not is_associative(A):
        raise NotAssociativeError(f"{A} is not associative")


def is_frobenius_pair(A: StructureMatrix, S: Matrix2) -> bool:
    _require_associative(A)
    return S.is_invertible() and frobenius_defect(A, S).is_zero()


@dataclass(frozen=True)
class SolutionSpace:
    field: object
    basis: tuple  # of Matrix2
    has_nondegenerate: bool

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def elements(self):
        """All forms in the span (finite fields only)."""
        F = self.field
        for coeffs in product(F.elements(), repeat=len(self.basis)):
            yield _combine(F, self.basis, coeffs)

    def contains(self, S: Matrix2) -> bool:
        rows = [B.entries for B in self.basis]
        return linalg.rank(self.field, rows + [S.entries], 4) == len(rows)

    def to_json(self):
        return {"basis": [str(B) for B in self.basis], "dimension": self.dimension,
                "has_nondegenerate": self.has_nondegenerate}


def _combine(F, basis, coeffs):
    ent = [F.zero] * 4
    for B, t in zip(basis, coeffs):
        ent = [F.add(x, F.mul(t, y)) for x, y in zip(ent, B.entries)]
    return Matrix2(F, tuple(ent))


def defect_matrix(A: StructureMatrix):
    """8x4 coefficient matrix of the (linear in a, b, c, d) compatibility system."""
    F = A.field
    cols = []
    for k in range(4):
        unit = tuple(F.one if i == k else F.zero for i in range(4))
        cols.append(frobenius_defect(A, Matrix2(F, unit)).residuals)
    return [tuple(cols[k][r] for k in range(4)) for r in range(8)]


def solve_frobenius_forms(A: StructureMatrix) -> SolutionSpace:
    """Kernel of the compatibility system and whether it holds a nondegenerate form."""
    _require_associative(A)
    F = A.field
    basis = tuple(Matrix2(F, v) for v in linalg.nullspace(F, defect_matrix(A), 4))
    if F.is_finite:
        pool = F.elements()
    else:
        # det on the kernel has degree <= 2 in each coefficient; 3 points per variable decide it
        pool = [F.from_int(i) for i in range(3)]
    nondeg = any(_combine(F, basis, co).is_invertible() for co in product(pool, repeat=len(basis)))
    return SolutionSpace(F, basis, nondeg)


@dataclass(frozen=True)
class Subspace:
    field: object
    basis: tuple  # reduced echelon rows, leading coefficient 1

    @classmethod
    def span(cls, F, vectors):
        return cls(F, linalg.span_echelon(F, [tuple(v) for v in vectors], 2))

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def contains(self, v) -> bool:
        v = tuple(v)
        if all(x == self.field.zero for x in v):
            return True
        return linalg.rank(self.field, list(self.basis) + [v], 2) == self.dimension

    def __str__(self):
        f = self.field.format
        return "span(" + ", ".join(f"({f(v[0])},{f(v[1])})" for v in self.basis) + ")"


def lines(F) -> list:
    """The q+1 lines of F^2 in canonical order: span(0,1), span(1,0), span(1,1), ..."""
    if not F.is_finite:
        raise FieldError("lines of Q^2 cannot be enumerated")
    vecs = [(F.zero, F.one)] + [(F.one, m) for m in F.elements()]
    return [Subspace(F, (v,)) for v in vecs]


def subspaces(F) -> list:
    return [Subspace(F, ())] + lines(F) + [Subspace(F, ((F.one, F.zero), (F.zero, F.one)))]


def _basis_vectors(F):
    return ((F.one, F.zero), (F.zero, F.one))


def is_left_ideal(A: StructureMatrix, U: Subspace) -> bool:
    """A U within U."""
    return all(U.contains(multiply(A, e, u)) for e in _basis_vectors(A.field) for u in U.basis)


def is_right_ideal(A: StructureMatrix, U: Subspace) -> bool:
    """U A within U."""
    return all(U.contains(multiply(A, u, e)) for e in _basis_vectors(A.field) for u in U.basis)


def one_sided_ideals(A: StructureMatrix):
    """(left ideals, right ideals) among all subspaces of F^2."""
    _require_associative(A)
    subs = subspaces(A.field)
    return [U for U in subs if is_left_ideal(A, U)], [U for U in subs if is_right_ideal(A, U)]


@dataclass(frozen=True)
class LinearFunctional:
    field: object
    coeffs: tuple  # lambda(x) = l1 x1 + l2 x2

    def __call__(self, x):
        F = self.field
        return F.add(F.mul(self.coeffs[0], x[0]), F.mul(self.coeffs[1], x[1]))

    def kernel(self) -> Subspace:
        F = self.field
        l1, l2 = self.coeffs
        return Subspace.span(F, [(F.neg(l2), l1)])

    def __str__(self):
        f = self.field.format
        return f"({f(self.coeffs[0])},{f(self.coeffs[1])})"


def _normal(F, v):
    """Normal vector of a line with direction v, scaled to leading coefficient 1."""
    n = (F.neg(v[1]), v[0])
    lead = n[0] if n[0] != F.zero else n[1]
    inv = F.inv(lead)
    return (F.mul(n[0], inv), F.mul(n[1], inv))


def is_frobenius_via_functional(A: StructureMatrix):
    """First functional (by kernel line) whose kernel is neither a left nor a right ideal."""
    _require_associative(A)
    F = A.field
    for L in lines(F):
        if not is_left_ideal(A, L) and not is_right_ideal(A, L):
            return LinearFunctional(F, _normal(F, L.basis[0]))
    return None


def annihilator(A: StructureMatrix, U: Subspace, side: str) -> Subspace:
    """side='right': r(U) = {x : U x = 0}; side='left': l(U) = {x : x U = 0}."""
    F = A.field
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    rows = []
    for u in U.basis:
        e = _basis_vectors(F)
        # images of basis vectors give the columns of x -> u x (or x -> x u)
        imgs = [multiply(A, u, v) if side == "right" else multiply(A, v, u) for v in e]
        rows.append((imgs[0][0], imgs[1][0]))
        rows.append((imgs[0][1], imgs[1][1]))
    if not rows:
        return Subspace(F, _basis_vectors(F))
    return Subspace.span(F, linalg.nullspace(F, rows, 2))

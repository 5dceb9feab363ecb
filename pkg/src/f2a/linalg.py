"""Gaussian elimination over an exact field (raw values, see :mod:`f2a.fields`)."""

from __future__ import annotations


def rref(F, rows, ncols=None):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != F.zero), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != F.zero:
                f = m[i][c]
                m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(F, rows, ncols=None):
    return len(rref(F, rows, ncols)[1])


def nullspace(F, rows, ncols):
    """Basis of {x : rows . x = 0}, one vector per free column, in column order."""
    red, pivots = rref(F, rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero] * ncols
        v[fc] = F.one
        for row, pc in zip(red, pivots):
            v[pc] = F.neg(row[fc])
        basis.append(tuple(v))
    return basis


def solve(F, rows, rhs, ncols):
    """One solution of rows . x = rhs plus the homogeneous basis, or None if inconsistent."""
    aug = [tuple(r) + (b,) for r, b in zip(rows, rhs)]
    red, pivots = rref(F, aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [F.zero] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return tuple(x), nullspace(F, rows, ncols)


def span_echelon(F, vectors, ncols):
    """Canonical basis (reduced echelon, leading 1) of the span of ``vectors``."""
    red, _ = rref(F, vectors, ncols)
    return tuple(red)

"""Tiny exact expression language for the catalog templates.

Templates are written the way the matrices are printed, e.g. ``"a,-beta1*d;0,d"``
or ``"1/2,0,0,alpha4;0,1/2,1/2,0"``, and conditions as ``"a*d - c != 0"``.
Integers embed into the field, ``/`` is field division, ``**`` takes a
non-negative integer literal exponent.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .core import split_top


class ExprError(ValueError):
    pass


@lru_cache(maxsize=None)
def compile_expr(text: str):
    try:
        return ast.parse(text.strip(), mode="eval").body
    except SyntaxError as exc:
        raise ExprError(f"bad expression {text!r}") from exc


def _eval(node, F, env):
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return F.from_int(node.value)
    if isinstance(node, ast.Name):
        try:
            return env[node.id]
        except KeyError:
            raise ExprError(f"unbound name {node.id!r}") from None
    if isinstance(node, ast.UnaryOp):
        v = _eval(node.operand, F, env)
        if isinstance(node.op, ast.USub):
            return F.neg(v)
        if isinstance(node.op, ast.UAdd):
            return v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise ExprError("exponents must be integer literals")
            return F.power(_eval(node.left, F, env), node.right.value)
        x, y = _eval(node.left, F, env), _eval(node.right, F, env)
        if isinstance(node.op, ast.Add):
            return F.add(x, y)
        if isinstance(node.op, ast.Sub):
            return F.sub(x, y)
        if isinstance(node.op, ast.Mult):
            return F.mul(x, y)
        if isinstance(node.op, ast.Div):
            return F.div(x, y)
    if isinstance(node, ast.Compare) and len(node.ops) == 1:
        x, y = _eval(node.left, F, env), _eval(node.comparators[0], F, env)
        if isinstance(node.ops[0], ast.Eq):
            return x == y
        if isinstance(node.ops[0], ast.NotEq):
            return x != y
    if isinstance(node, ast.BoolOp):
        vals = [_eval(v, F, env) for v in node.values]
        return all(vals) if isinstance(node.op, ast.And) else any(vals)
    raise ExprError(f"unsupported syntax: {ast.dump(node)}")


def evaluate(text: str, F, env=None):
    return _eval(compile_expr(text), F, env or {})


def holds(conditions, F, env) -> bool:
    return all(evaluate(c, F, env) for c in conditions)


def names_in(text: str) -> set:
    return {n.id for n in ast.walk(compile_expr(text)) if isinstance(n, ast.Name)}


@dataclass(frozen=True)
class MatrixTemplate:
    """Printed matrix with expression entries, rows separated by ';'."""

    text: str

    @property
    def cells(self):
        cells = []
        for row in split_top(self.text, ";"):
            cells.extend(t.strip() for t in split_top(row, ","))
        return tuple(cells)

    def names(self) -> set:
        out = set()
        for c in self.cells:
            out |= names_in(c)
        return out

    def instantiate(self, F, env=None):
        return tuple(evaluate(c, F, env) for c in self.cells)

    def __str__(self):
        return self.text


NONZERO = "nonzero"
ANY = "any"


def domain_values(F, domain, env=None):
    """Raw values a parameter ranges over: ANY, NONZERO or a list of expressions."""
    if domain == ANY:
        return list(F.elements())
    if domain == NONZERO:
        return list(F.nonzero())
    vals = []
    for text in domain:
        v = evaluate(text, F, env)
        if v not in vals:
            vals.append(v)
    return vals


def assignments(F, params, fixed=None):
    """All environments for ``params`` (ordered (name, domain) pairs) over F, in scan order."""
    fixed = dict(fixed or {})
    names = [n for n, _ in params]
    pools = [domain_values(F, d, fixed) for _, d in params]
    for combo in product(*pools):
        env = dict(fixed)
        env.update(zip(names, combo))
        yield env

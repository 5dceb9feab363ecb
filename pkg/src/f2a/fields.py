"""Exact scalar arithmetic for GF(p), GF(4), GF(8), GF(9) and the rationals.

Field objects work on *raw* values: an ``int`` code in ``0..q-1`` for finite
fields (code = sum c_i p^i of the little-endian coefficient vector) and a
``fractions.Fraction`` for the rationals.  The code order is the canonical
total order used for tie-breaking everywhere in the package.
:class:`FieldElement` wraps a raw value together with its field for
scalar-level APIs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product

__all__ = [
    "FieldError",
    "FactorizationBoundError",
    "FiniteField",
    "Rationals",
    "FieldElement",
    "get_field",
    "field_names",
    "parse_element",
    "enumerate_elements",
    "square_class_orbit",
    "artin_schreier_orbit",
    "affine_square_orbit",
    "normalize_square_free",
]

PRIMES = (2, 3, 5, 7, 11, 13)

# little-endian coefficient lists of the pinned irreducible moduli (monic)
MODULI = {
    (2, 2): (1, 1, 1),     # t^2 + t + 1
    (2, 3): (1, 1, 0, 1),  # t^3 + t + 1
    (3, 2): (1, 0, 1),     # t^2 + 1
}

SQUARE_FREE_BOUND = 10**12


class FieldError(ValueError):
    """Malformed element text, mixed fields, or an operation the field cannot do."""


class FactorizationBoundError(FieldError):
    pass


@dataclass(frozen=True)
class FiniteField:
    p: int
    k: int = 1

    def __post_init__(self):
        if self.p not in PRIMES:
            raise FieldError(f"unsupported characteristic {self.p}")
        if self.k != 1 and (self.p, self.k) not in MODULI:
            raise FieldError(f"unsupported extension GF({self.p}^{self.k})")

    # -- basic facts ---------------------------------------------------
    is_finite = True

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def order(self) -> int:
        return self.p**self.k

    @property
    def modulus(self):
        return MODULI.get((self.p, self.k))

    @property
    def name(self) -> str:
        return f"gf{self.order}"

    def __repr__(self):
        return f"GF({self.order})"

    zero = 0
    one = 1

    # -- tables ----------------------------------------------------------
    def _coeffs(self, x):
        out = []
        for _ in range(self.k):
            out.append(x % self.p)
            x //= self.p
        return out

    def _code(self, coeffs):
        return sum(c * self.p**i for i, c in enumerate(coeffs))

    def _poly_mul(self, x, y):
        p, k = self.p, self.k
        a, b = self._coeffs(x), self._coeffs(y)
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
        mod = self.modulus
        for deg in range(2 * k - 2, k - 1, -1):
            c = prod[deg]
            if c:
                for i, mi in enumerate(mod):
                    prod[deg - k + i] = (prod[deg - k + i] - c * mi) % p
        return self._code(prod[:k])

    @cached_property
    def add_table(self):
        q = self.order
        return tuple(
            tuple(self._code([(a + b) % self.p for a, b in zip(self._coeffs(x), self._coeffs(y))])
                  for y in range(q))
            for x in range(q)
        )

    @cached_property
    def mul_table(self):
        q = self.order
        if self.k == 1:
            return tuple(tuple((x * y) % q for y in range(q)) for x in range(q))
        return tuple(tuple(self._poly_mul(x, y) for y in range(q)) for x in range(q))

    @cached_property
    def neg_table(self):
        return tuple(self._code([(-c) % self.p for c in self._coeffs(x)]) for x in range(self.order))

    @cached_property
    def inv_table(self):
        inv = [None] * self.order
        for x in range(1, self.order):
            for y in range(1, self.order):
                if self.mul_table[x][y] == 1:
                    inv[x] = y
                    break
        return tuple(inv)

    # -- raw arithmetic --------------------------------------------------
    def add(self, x, y):
        return self.add_table[x][y]

    def sub(self, x, y):
        return self.add_table[x][self.neg_table[y]]

    def neg(self, x):
        return self.neg_table[x]

    def mul(self, x, y):
        return self.mul_table[x][y]

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError(f"inverse of zero in {self!r}")
        return self.inv_table[x]

    def div(self, x, y):
        return self.mul_table[x][self.inv(y)]

    def power(self, x, n: int):
        if n < 0:
            x, n = self.inv(x), -n
        r = 1
        for _ in range(n):
            r = self.mul_table[r][x]
        return r

    def from_int(self, n: int):
        return n % self.p

    def sort_key(self, x):
        return x

    def elements(self):
        return range(self.order)

    def nonzero(self):
        return range(1, self.order)

    # -- text ----------------------------------------------------------
    def format(self, x) -> str:
        if self.k == 1:
            return str(x)
        return "[" + ",".join(str(c) for c in self._coeffs(x)) + "]"

    def parse(self, text: str):
        s = text.strip()
        if s.startswith("["):
            if not s.endswith("]"):
                raise FieldError(f"malformed element {text!r}")
            parts = [t.strip() for t in s[1:-1].split(",")]
            if len(parts) != self.k or not all(re.fullmatch(r"\d+", t) for t in parts):
                raise FieldError(f"expected {self.k} coefficients in {text!r}")
            return self._code([int(t) % self.p for t in parts])
        if re.fullmatch(r"[+-]?\d+", s):
            # integers land in the prime subfield
            return int(s) % self.p
        raise FieldError(f"malformed element {text!r} for {self!r}")


@dataclass(frozen=True)
class Rationals:
    is_finite = False
    characteristic = 0
    order = None
    name = "q"
    zero = Fraction(0)
    one = Fraction(1)

    def __repr__(self):
        return "Q"

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / x

    def div(self, x, y):
        if y == 0:
            raise ZeroDivisionError("division by zero in Q")
        return x / y

    def power(self, x, n: int):
        return x**n

    def from_int(self, n: int):
        return Fraction(n)

    def sort_key(self, x):
        return x

    def elements(self):
        raise FieldError("the rationals cannot be enumerated")

    nonzero = elements

    def format(self, x) -> str:
        return str(x)

    def parse(self, text: str):
        s = text.strip()
        m = re.fullmatch(r"([+-]?\d+)(?:/(\d+))?", s)
        if not m:
            raise FieldError(f"malformed rational {text!r}")
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise FieldError(f"zero denominator in {text!r}")
        return Fraction(int(m.group(1)), den)


QQ = Rationals()

_NAMES = {"gf2": (2, 1), "gf3": (3, 1), "gf4": (2, 2), "gf5": (5, 1), "gf7": (7, 1),
          "gf8": (2, 3), "gf9": (3, 2), "gf11": (11, 1), "gf13": (13, 1)}


def field_names():
    return list(_NAMES) + ["q"]


@lru_cache(maxsize=None)
def get_field(name: str):
    """Field from its CLI name (``gf2`` .. ``gf13``, ``q``)."""
    key = name.strip().lower()
    if key in ("q", "qq", "rationals"):
        return QQ
    if key not in _NAMES:
        raise FieldError(f"unknown field {name!r}; expected one of {', '.join(field_names())}")
    return FiniteField(*_NAMES[key])


@dataclass(frozen=True, eq=True)
class FieldElement:
    field: FiniteField | Rationals
    value: object

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"mixed fields {self.field!r} and {other.field!r}")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def _wrap(self, v):
        return FieldElement(self.field, v)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(o, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, n: int):
        return self._wrap(self.field.power(self.value, n))

    def inverse(self):
        return self._wrap(self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == self.field.zero

    def __lt__(self, other):
        return self.field.sort_key(self.value) < self.field.sort_key(self._other(other))

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"{self.field!r}({self})"


def parse_element(text: str, field) -> FieldElement:
    return FieldElement(field, field.parse(text))


def enumerate_elements(field) -> list[FieldElement]:
    return [FieldElement(field, x) for x in field.elements()]


def _require_finite(field, what):
    if not field.is_finite:
        raise FieldError(f"{what} needs a finite field")


def _require_char2(field, what):
    _require_finite(field, what)
    if field.characteristic != 2:
        raise FieldError(f"{what} is only defined in characteristic 2")


# raw-value orbit helpers; the FieldElement versions below wrap them

def square_class_raw(F, a) -> frozenset:
    _require_finite(F, "square_class_orbit")
    if a == 0:
        return frozenset([0])
    return frozenset(F.mul(F.mul(r, r), a) for r in F.nonzero())


def artin_schreier_raw(F, b) -> frozenset:
    _require_char2(F, "artin_schreier_orbit")
    return frozenset(F.add(b, F.add(r, F.mul(r, r))) for r in F.elements())


def affine_square_raw(F, b) -> frozenset:
    _require_char2(F, "affine_square_orbit")
    return frozenset(F.add(F.mul(F.mul(q, q), b), F.mul(r, r))
                     for q, r in product(F.nonzero(), F.elements()))


def square_class_orbit(a: FieldElement) -> set[FieldElement]:
    """{r^2 a : r != 0}."""
    return {FieldElement(a.field, x) for x in square_class_raw(a.field, a.value)}


def artin_schreier_orbit(b: FieldElement) -> set[FieldElement]:
    """{b + r + r^2 : r in F}; characteristic 2 only."""
    return {FieldElement(b.field, x) for x in artin_schreier_raw(b.field, b.value)}


def affine_square_orbit(b: FieldElement) -> set[FieldElement]:
    """{q^2 b + r^2 : q != 0, r in F}; characteristic 2 only."""
    return {FieldElement(b.field, x) for x in affine_square_raw(b.field, b.value)}


def _square_free_int(n: int) -> int:
    from sympy import factorint

    sign = -1 if n < 0 else 1
    out = 1
    for prime, e in factorint(abs(n)).items():
        if e % 2:
            out *= prime
    return sign * out


def normalize_square_free(a: FieldElement, bound: int = SQUARE_FREE_BOUND) -> FieldElement:
    """Square-free integer s with a = s * t^2, t rational."""
    if a.field.is_finite:
        raise FieldError("normalize_square_free works over Q; use square_class_orbit")
    x = a.value
    if x == 0:
        return a
    num, den = x.numerator, x.denominator
    if abs(num) > bound or den > bound:
        raise FactorizationBoundError(f"{x} exceeds the factorization bound {bound}")
    s = _square_free_int(_square_free_int(num) * _square_free_int(den))
    return FieldElement(a.field, Fraction(s))

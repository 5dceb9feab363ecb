import os
import sys

import pytest
from hypothesis import settings, strategies as st

from f2a.core import Matrix2, StructureMatrix, gl2
from f2a.fields import QQ, get_field

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

FINITE = ["gf2", "gf3", "gf4", "gf5", "gf7", "gf8", "gf9", "gf11", "gf13"]
SMALL = ["gf2", "gf3", "gf4", "gf5"]


@pytest.fixture(params=FINITE)
def finite_field(request):
    return get_field(request.param)


def elements(F):
    if F.is_finite:
        return st.integers(0, F.order - 1)
    return st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def field_and(draw, names=tuple(FINITE), n=1):
    F = get_field(draw(st.sampled_from(names)))
    return (F,) + tuple(draw(elements(F)) for _ in range(n))


def matrices(F, invertible=False):
    if invertible and F.is_finite:
        return st.sampled_from(gl2(F))
    m = st.tuples(*[elements(F)] * 4).map(lambda e: Matrix2(F, e))
    return m.filter(Matrix2.is_invertible) if invertible else m


def mscs(F):
    return st.tuples(*[elements(F)] * 8).map(lambda e: StructureMatrix(F, e))


ALL_FIELDS = [get_field(n) for n in FINITE] + [QQ]

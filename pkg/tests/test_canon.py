from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracle
from conftest import matrices
from f2a import canon
from f2a.core import Matrix2, NotAssociativeError, StructureMatrix, gl2, identity, parse_matrix, parse_msc, transform
from f2a.fields import QQ, get_field
from f2a.forms import DegenerateFormError, congruence
from f2a.frobenius import is_frobenius_pair

GF2, GF3, GF5 = get_field("gf2"), get_field("gf3"), get_field("gf5")


def tags(F):
    return [e.label().family for e in canon.catalog(F)]


def test_char_classes():
    assert canon.char_class(GF2) == canon.char_class(get_field("gf8")) == "char2"
    assert canon.char_class(get_field("gf9")) == "char3"
    assert canon.char_class(GF5) == canon.char_class(QQ) == "not23"


def test_catalog_expansion():
    assert len(canon.families(GF5)) == 5
    assert [e.value for e in canon.catalog(GF5) if e.family.param == "alpha4"] == [0, 1, 2]
    assert len(canon.families(GF2)) == 6
    assert [e.value for e in canon.catalog(GF2) if e.family.tag.startswith("A4,2")] == [0, 1]
    assert [e.value for e in canon.catalog(GF2) if e.family.tag.startswith("A11,2")] == [0]
    assert len(canon.families(GF3)) == 5
    assert [e.value for e in canon.catalog(GF3) if e.family.tag == "A3,3(2,alpha4,2)"] == [0, 1, 2]


@pytest.mark.parametrize("name", ["gf2", "gf3", "gf4", "gf5", "gf7"])
def test_catalog_orbits_disjoint(name):
    assert canon.catalog_collisions(get_field(name)) == ()


@pytest.mark.parametrize("rule,name,value,expected", [
    ("square-class", "gf5", "3", "2"), ("artin-schreier", "gf2", "1", "1"), ("square-class", "q", "8/9", "2"),
    ("affine-square", "gf2", "1", "0"), ("square-class", "gf7", "4", "1"),
])
def test_normalize_parameter(rule, name, value, expected):
    F = get_field(name)
    assert F.format(canon.normalize_parameter(rule, F.parse(value), F)) == expected


def test_classify_examples():
    A13 = parse_msc("0,0,0,0;1,0,0,0", GF5)
    res = canon.classify_algebra(A13)
    assert res.label.family == "A13" and res.witness == identity(GF5)
    res = canon.classify_algebra(transform(A13, Matrix2(GF5, (2, 1, 3, 0))))
    assert res.label.family == "A13"
    res = canon.classify_algebra(parse_msc("0,1,1,0;1,0,0,1", GF2))
    assert res.label.family == "A11,2(beta1)" and res.label.value == 0
    assert res.label.text() == "A_{11,2}(b1=0)"


def test_classify_errors():
    with pytest.raises(canon.TrivialAlgebraError):
        canon.classify_algebra(StructureMatrix.zero(GF5))
    with pytest.raises(NotAssociativeError):
        canon.classify_algebra(parse_msc("0,1,0,0;0,0,0,0", GF5))


@pytest.mark.parametrize("p", [2, 3])
def test_classify_every_associative_msc(p):
    F = get_field(f"gf{p}")
    for m in oracle.all_associative(p):
        if not any(m):
            continue
        A = StructureMatrix(F, m)
        res = canon.classify_algebra(A)
        assert transform(A, res.witness) == res.representative


@given(st.sampled_from(["gf3", "gf4", "gf5"]).map(get_field).flatmap(
    lambda F: st.tuples(st.sampled_from(canon.catalog(F)), matrices(F, True))))
def test_classification_invariant_on_orbits(data):
    entry, g = data
    res = canon.classify_algebra(transform(entry.msc, g))
    assert res.label == entry.label()


def test_rational_classification():
    A = parse_msc("1/2,0,0,8/9;0,1/2,1/2,0", QQ)
    res = canon.classify_algebra(A)
    assert res.label.value == 2
    assert transform(A, res.witness) == res.representative
    assert res.label.text() == "A_3(1/2, a4=2, 1/2)"
    with pytest.raises(canon.CatalogMatchError):
        canon.classify_algebra(transform(parse_msc("0,0,0,0;1,0,0,0", QQ), Matrix2(QQ, (Fraction(1), Fraction(1), Fraction(0), Fraction(1)))))


def test_printed_units():
    for F in (GF2, GF3, GF5, get_field("gf4"), get_field("gf7")):
        for e in canon.catalog(F):
            assert canon.unit_of(e) == e.printed_unit()


def test_pair_examples():
    res = canon.classify_pair(parse_msc("0,0,0,0;1,0,0,0", GF5), parse_matrix("0,1;1,0", GF5))
    assert (res.lemma, res.item, res.params) == ("L1", 17, {"b": 1, "c": 1})
    res = canon.classify_pair(parse_msc("1,0,0,0;0,0,0,0", GF5), parse_matrix("1,0;0,2", GF5))
    assert (res.lemma, res.item) == ("L1", 3)
    with pytest.raises(DegenerateFormError):
        canon.classify_pair(parse_msc("1,0,0,0;0,0,0,0", GF5), parse_matrix("1,2;2,4", GF5))


def test_pair_witness_is_valid():
    A = transform(parse_msc("3,0,0,1;0,3,3,0", GF5), Matrix2(GF5, (1, 2, 0, 3)))
    S = parse_matrix("2,1;4,3", GF5)
    res = canon.classify_pair(A, S)
    entry = canon.entry_for(res.algebra)
    assert transform(A, res.witness) == entry.msc
    assert congruence(S, res.witness) == res.canonical_form


def test_frobenius_examples():
    res = canon.classify_frobenius_pair(parse_msc("3,0,0,1;0,3,3,0", GF5), parse_matrix("1,1;1,2", GF5))
    assert res.params == {"a": 1, "b": 1, "alpha4": 1}
    out = canon.classify_frobenius_pair(parse_msc("1,0,0,0;0,1,0,0", GF5), parse_matrix("1,0;0,1", GF5))
    assert isinstance(out, canon.NotFrobenius) and out.residual is not None
    res = canon.classify_frobenius_pair(parse_msc("0,0,0,0;1,0,0,0", GF2), parse_matrix("0,1;1,0", GF2))
    assert res.char_class == "char2" and res.params == {"b": 1}
    assert res.algebra.family == "A12,2"


def test_every_frobenius_pair_over_gf5_has_an_item():
    for e in canon.catalog(GF5):
        for S in gl2(GF5)[::4]:
            if is_frobenius_pair(e.msc, S):
                res = canon.classify_frobenius_pair(e.msc, S)
                assert res.overlaps == ()


def test_corrected_items_keep_verbatim_reading():
    corrected = [it for it in canon.pair_items(GF5) + canon.pair_items(GF2) if it.corrected]
    assert {(it.group, it.index) for it in corrected} >= {("L1", 17), ("L2", 2), ("L2", 14)}
    for it in corrected:
        assert it.reading(verbatim=True) != it.reading()

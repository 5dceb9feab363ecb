from itertools import product

import pytest
from hypothesis import given, strategies as st

import oracle
from conftest import matrices
from f2a.core import Matrix2, NotAssociativeError, StructureMatrix, gl2, parse_matrix, parse_msc, transform
from f2a.fields import QQ, get_field
from f2a.forms import congruence
from f2a.frobenius import (
    Subspace,
    annihilator,
    frobenius_defect,
    identity_residuals,
    is_frobenius_pair,
    is_frobenius_via_functional,
    lines,
    one_sided_ideals,
    solve_frobenius_forms,
)

GF2, GF3, GF5 = get_field("gf2"), get_field("gf3"), get_field("gf5")
A13 = "0,0,0,0;1,0,0,0"
A3_100 = "1,0,0,0;0,0,0,0"
A3_101 = "1,0,0,0;0,1,0,0"


def test_defect_examples():
    assert frobenius_defect(parse_msc(A3_100, GF5), parse_matrix("2,0;0,3", GF5)).is_zero()
    d = frobenius_defect(parse_msc(A13, GF5), parse_matrix("1,1;0,1", GF5))
    assert d.first_nonzero() == 1 and d.residuals[0] == 4
    assert frobenius_defect(StructureMatrix.zero(GF5), parse_matrix("1,2;3,4", GF5)).is_zero()


def test_pair_examples():
    assert is_frobenius_pair(parse_msc(A13, GF5), parse_matrix("0,1;1,0", GF5))
    for a in range(5):
        assert is_frobenius_pair(parse_msc("3,0,0,0;0,3,3,0", GF5), parse_matrix(f"{a},1;1,0", GF5))
    A = parse_msc(A3_101, GF5)
    assert not any(is_frobenius_pair(A, S) for S in gl2(GF5))
    with pytest.raises(NotAssociativeError):
        is_frobenius_pair(parse_msc("0,1,0,0;0,0,0,0", GF5), parse_matrix("1,0;0,1", GF5))


@pytest.mark.parametrize("p", [2, 3])
def test_defect_agrees_with_definition_on_sample(p):
    F = get_field(f"gf{p}")
    forms = list(product(range(p), repeat=4))
    for m in list(product(range(p), repeat=8))[::97]:
        A = StructureMatrix(F, m)
        for s in forms:
            S = Matrix2(F, s)
            direct = identity_residuals(A, S)
            assert frobenius_defect(A, S).is_zero() == all(r == 0 for r in direct)


@pytest.mark.parametrize("p", [2, 3])
def test_compatibility_matches_oracle(p):
    F = get_field(f"gf{p}")
    for m in oracle.all_associative(p)[::3]:
        A = StructureMatrix(F, m)
        for s in list(product(range(p), repeat=4))[::2]:
            assert frobenius_defect(A, Matrix2(F, s)).is_zero() == oracle.compatible(m, s, p)


@pytest.mark.parametrize("p,expected", [(2, 22), (3, 105)])
def test_frobenius_algebra_counts(p, expected):
    # counts frozen from the oracle (zero MSC included there, never Frobenius here)
    F = get_field(f"gf{p}")
    alg = oracle.all_associative(p)
    ours = sum(solve_frobenius_forms(StructureMatrix(F, m)).has_nondegenerate for m in alg)
    assert ours == expected


@given(st.sampled_from(["gf2", "gf3", "gf5"]).map(get_field).flatmap(
    lambda F: st.tuples(st.sampled_from(oracle_cache(F.p)), matrices(F, True), matrices(F))))
def test_defect_invariant_under_isomorphism(data):
    m, g, S = data
    F = S.field
    A = StructureMatrix(F, m)
    assert frobenius_defect(A, S).is_zero() == frobenius_defect(transform(A, g), congruence(S, g)).is_zero()


_ALG = {}


def oracle_cache(p):
    if p not in _ALG:
        _ALG[p] = oracle.all_associative(p) if p < 5 else [
            (1, 0, 0, 0, 0, 0, 0, 0), (3, 0, 0, 1, 0, 3, 3, 0), (0, 0, 0, 0, 1, 0, 0, 0), (1, 0, 0, 0, 0, 1, 0, 0)]
    return _ALG[p]


def test_solution_space_examples():
    sol = solve_frobenius_forms(parse_msc(A13, GF5))
    assert [str(b) for b in sol.basis] == ["1,0;0,0", "0,1;1,0"] and sol.has_nondegenerate
    sol = solve_frobenius_forms(parse_msc(A3_101, GF5))
    assert [str(b) for b in sol.basis] == ["1,0;0,0", "0,1;0,0"] and not sol.has_nondegenerate
    sol = solve_frobenius_forms(parse_msc("3,0,0,1;0,3,3,0", GF5))
    for S in sol.elements():
        a, b, c, d = S.entries
        assert c == b and d == 2 * a % 5


@pytest.mark.parametrize("name", ["gf2", "gf3", "gf4"])
def test_solution_space_is_exact_kernel(name):
    F = get_field(name)
    forms = [Matrix2(F, e) for e in product(F.elements(), repeat=4)]
    for A in [parse_msc(A13, F), parse_msc(A3_100, F), parse_msc("0,1,1,0;0,0,0,1", F)]:
        sol = solve_frobenius_forms(A)
        members = {S for S in forms if frobenius_defect(A, S).is_zero()}
        assert set(sol.elements()) == members
        assert all(sol.contains(S) for S in members)
        assert sol.has_nondegenerate == any(S.is_invertible() for S in members)


def test_solution_space_over_rationals():
    sol = solve_frobenius_forms(parse_msc("1/2,0,0,3;0,1/2,1/2,0", QQ))
    assert sol.dimension == 2 and sol.has_nondegenerate
    assert not solve_frobenius_forms(parse_msc(A3_101, QQ)).has_nondegenerate


def test_ideal_examples():
    left, right = one_sided_ideals(StructureMatrix.zero(GF2))
    assert len(left) == len(right) == 5
    left, _ = one_sided_ideals(parse_msc(A3_101, GF2))
    assert all(L in left for L in lines(GF2))
    left, right = one_sided_ideals(parse_msc(A13, GF3))
    e1, e2 = Subspace.span(GF3, [(1, 0)]), Subspace.span(GF3, [(0, 1)])
    assert e2 in left and e2 in right
    assert e1 not in left and e1 not in right


def test_functional_examples():
    assert is_frobenius_via_functional(parse_msc(A3_101, GF2)) is None
    lam = is_frobenius_via_functional(parse_msc(A13, GF2))
    assert lam is not None and lam.kernel() == Subspace.span(GF2, [(1, 0)])
    assert is_frobenius_via_functional(StructureMatrix.zero(GF5)) is None


@pytest.mark.parametrize("p", [2, 3])
def test_functional_matches_oracle(p):
    F = get_field(f"gf{p}")
    for m in oracle.all_associative(p):
        assert (is_frobenius_via_functional(StructureMatrix(F, m)) is not None) == oracle.has_ideal_free_functional(m, p)


def test_annihilator_examples():
    full = Subspace.span(GF5, [(1, 0), (0, 1)])
    assert annihilator(parse_msc(A13, GF5), Subspace.span(GF5, [(0, 1)]), "right") == full
    assert annihilator(parse_msc(A3_100, GF5), Subspace.span(GF5, [(1, 0)]), "right") == Subspace.span(GF5, [(0, 1)])
    assert annihilator(parse_msc(A13, GF5), Subspace(GF5, ()), "left") == full
    with pytest.raises(ValueError):
        annihilator(parse_msc(A13, GF5), full, "middle")

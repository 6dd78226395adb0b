from itertools import product

import pytest

from multiring.axioms import check_qt
from multiring.constructions import diagonal, projection
from multiring.core import (
    ARSData,
    FiniteMultiring,
    RealSemigroupData,
    StructMorphism,
    UsageError,
    enumerate_morphisms,
    is_isomorphism,
    is_morphism,
    is_strong_embedding,
    plus_set,
    rep_D,
    rep_Dt,
    rs_rep_Dt,
)

from .oracles import all_maps, members, multiring_morphism, q2_sum


def S(A, *names):
    return frozenset(A.index(x) for x in names)


def test_q2_plus_set(q2):
    i = q2.index
    assert plus_set(q2, i("1"), i("0")) == S(q2, "1")
    assert plus_set(q2, i("1"), i("-1")) == S(q2, "-1", "0", "1")
    assert plus_set(q2, i("1"), i("1")) == S(q2, "1")


def test_q2_rep_D(q2):
    i = q2.index
    assert rep_D(q2, i("1"), i("1")) == S(q2, "0", "1")
    assert rep_D(q2, i("1"), i("-1")) == S(q2, "-1", "0", "1")
    assert rep_D(q2, i("0"), i("0")) == S(q2, "0")


def test_q2_rep_Dt(q2):
    i = q2.index
    assert rep_Dt(q2, i("1"), i("1")) == S(q2, "1")
    assert rep_Dt(q2, i("0"), i("1")) == S(q2, "1")
    assert rep_Dt(q2, i("1"), i("-1")) == S(q2, "-1", "0", "1")


def test_rs_rep_Dt_matches_multiring(q2, rq2):
    for a, b in product(range(3), repeat=2):
        assert rs_rep_Dt(rq2, a, b) == rep_Dt(q2, a, b)
    for a in range(3):
        assert rs_rep_Dt(rq2, rq2.zero, a) == {a}


def test_transversal_inside_D(q2, q2sq, K, z5):
    for A in (q2, q2sq, K, z5):
        for a, b in product(range(A.n), repeat=2):
            assert rep_Dt(A, a, b) <= rep_D(A, a, b)


def test_qt_tables(q2, q2sq, K):
    for A in (q2, q2sq, K):
        assert check_qt(A)
        for a, b in product(range(A.n), repeat=2):
            assert plus_set(A, a, b) == rep_Dt(A, a, b)
            # D(a, b) = union of x^2 a + y^2 b
            u = set()
            for x, y in product(range(A.n), repeat=2):
                u |= plus_set(A, A.mul[A.sq(x)][a], A.mul[A.sq(y)][b])
            assert rep_D(A, a, b) == u


def test_out_of_range_element(q2):
    with pytest.raises(UsageError):
        plus_set(q2, 0, 3)


def test_empty_sum_rejected():
    with pytest.raises(UsageError, match="empty sum"):
        FiniteMultiring(("0", "1"), ((1, 2), (2, 0)), ((0, 0), (0, 1)), (0, 1), 0, 1)


def test_duplicate_name_rejected():
    with pytest.raises(UsageError):
        FiniteMultiring(("0", "0"), ((1, 2), (2, 1)), ((0, 0), (0, 1)), (0, 1), 0, 1)


def test_identity_and_bad_map(q2):
    assert is_morphism(StructMorphism(q2, q2, (0, 1, 2)))
    one_to_zero = (0, 1, 1)
    assert not is_morphism(StructMorphism(q2, q2, one_to_zero))


def test_projection_and_diagonal(q2, q2sq):
    p1 = projection(q2sq, [q2, q2], 0)
    assert is_morphism(p1)
    assert not is_strong_embedding(p1)
    P, d = diagonal(q2, 2)
    assert P == q2sq
    assert is_morphism(d) and is_strong_embedding(d)
    ident = StructMorphism(q2sq, q2sq, tuple(range(9)))
    assert is_strong_embedding(ident) and is_isomorphism(ident)


def test_enumerate_q2_endomorphisms(q2):
    found = enumerate_morphisms(q2, q2)
    assert [f.map for f in found] == [(0, 1, 2)]
    brute = [f for f in all_maps(3, 3) if multiring_morphism(q2, q2, f)]
    assert brute == [(0, 1, 2)]


def test_enumerate_q2sq_to_q2_matches_brute_force(q2, q2sq):
    found = [f.map for f in enumerate_morphisms(q2sq, q2)]
    brute = [f for f in all_maps(9, 3) if multiring_morphism(q2sq, q2, f)]
    assert found == brute
    projections = [projection(q2sq, [q2, q2], i).map for i in (0, 1)]
    assert sorted(found) == sorted(projections)


def test_enumerate_iso(q2, q2sq):
    assert enumerate_morphisms(q2, q2sq, "iso") == []
    isos = enumerate_morphisms(q2sq, q2sq, "iso")
    # the coordinate swap and the identity
    assert len(isos) == 2
    assert all(is_isomorphism(f) for f in isos)


def test_enumerate_semigroups(rq2):
    found = enumerate_morphisms(rq2, rq2)
    assert [f.map for f in found] == [(0, 1, 2)]
    assert found[0].kind.startswith("semigroup")


def test_morphism_kind_and_shape(q2):
    f = StructMorphism(q2, q2, (0, 1, 2))
    assert f.kind == "multiring-morphism"
    assert f(2) == 2
    with pytest.raises(UsageError):
        StructMorphism(q2, q2, (0, 1))


def test_ars_value_sets():
    S1 = ARSData(("x",), ((-1,), (0,), (1,)))
    # one-point full ARS carries the Q2 sums up to renaming
    for a, b in product(range(3), repeat=2):
        sa, sb = S1.funcs[a][0], S1.funcs[b][0]
        want = {S1.find((c,)) for c in q2_sum(sa, sb)}
        assert members(S1.Dt[a][b]) == want


def test_semigroup_presentations_agree(rq2):
    dt = rq2.to_presentation("DT")
    assert dt.presentation == "DT"
    assert dt.rel == rq2.Dt
    back = dt.to_presentation("RS")
    assert back.rel == rq2.rel


def test_semigroup_validation():
    with pytest.raises(UsageError):
        RealSemigroupData(("a",), ((0,),), 0, 0, 0, ((0,),), presentation="XX")

from itertools import combinations, permutations, product

from hypothesis import given, settings
from hypothesis import strategies as st

from multiring.axioms import check_ars, check_multiring, check_real_reduced
from multiring.bridges import ars_to_mr, duality_check
from multiring.constructions import build_q2, power
from multiring.core import ARSData, FiniteMultiring, enumerate_morphisms, rep_D, rep_Dt
from multiring.fileio import parse_structure, serialize_structure
from multiring.forms import QForm, form_permute, iso_decide, replay

from .oracles import add_assoc_violations, all_maps, multiring_morphism

Q2 = build_q2()
Q2SQ = power(Q2, 2)
CELLS = [(a, b) for a in range(3) for b in range(a, 3)]


@st.composite
def sign_tables(draw):
    """Q2's product and negation with an arbitrary commutative sum table."""
    add = [[0] * 3 for _ in range(3)]
    for a, b in CELLS:
        add[a][b] = add[b][a] = draw(st.integers(1, 7))
    return FiniteMultiring(Q2.elems, tuple(map(tuple, add)), Q2.mul, Q2.neg, Q2.zero, Q2.one)


@given(sign_tables())
@settings(max_examples=150, deadline=None)
def test_assoc_counterexample_is_least(A):
    viol = add_assoc_violations(A)
    e = check_multiring(A).entry("MR-add-assoc")
    assert e.passed == (not viol)
    if viol:
        assert e.counterexample == A.names(viol[0])


@given(sign_tables())
@settings(max_examples=150, deadline=None)
def test_transversal_inside_D(A):
    for a, b in product(range(3), repeat=2):
        assert rep_Dt(A, a, b) <= rep_D(A, a, b)


@given(sign_tables())
@settings(max_examples=60, deadline=None)
def test_morphisms_into_q2_match_brute_force(A):
    found = [f.map for f in enumerate_morphisms(A, Q2)]
    assert found == [f for f in all_maps(3, 3) if multiring_morphism(A, Q2, f)]


@given(sign_tables())
@settings(max_examples=60, deadline=None)
def test_file_roundtrip(A):
    text = serialize_structure(A)
    assert parse_structure(text) == A
    assert serialize_structure(parse_structure(text)) == text


@st.composite
def closed_sign_sets(draw, k=3):
    """Sign functions on k points closed under products, with constants."""
    vecs = list(product((-1, 0, 1), repeat=k))
    G = {(c,) * k for c in (-1, 0, 1)}
    G |= set(draw(st.lists(st.sampled_from(vecs), max_size=6)))
    while True:
        grown = G | {tuple(x * y for x, y in zip(f, g)) for f in G for g in G}
        if grown == G:
            break
        G = grown
    return ARSData(tuple(f"x{i}" for i in range(k)), tuple(sorted(G)))


@given(closed_sign_sets())
@settings(max_examples=40, deadline=None)
def test_ars_translation_is_real_reduced(S):
    r = check_ars(S)
    if r:
        assert check_real_reduced(ars_to_mr(S))
        assert duality_check(S)
    if r.entry("AX1").passed:
        split = r.entry("AX3a").passed and r.entry("AX3b").passed
        assert split == r.entry("AX3").passed


def test_two_point_sign_sets_exhaustive():
    const = [(0, 0), (1, 1), (-1, -1)]
    rest = [v for v in product((-1, 0, 1), repeat=2) if v not in const]
    passing = 0
    for r in range(len(rest) + 1):
        for sub in combinations(rest, r):
            S = ARSData(("x", "y"), tuple(const) + sub)
            if check_ars(S):
                passing += 1
                assert check_real_reduced(ars_to_mr(S))
    assert passing == 6


forms2 = st.tuples(*[st.integers(0, 8)] * 2)
forms3 = st.tuples(*[st.integers(0, 8)] * 3)


@given(st.one_of(st.tuples(forms2, forms2), st.tuples(forms3, forms3)),
       st.sampled_from(["strong", "weak"]))
@settings(max_examples=150, deadline=None)
def test_iso_symmetric_with_valid_witness(pair, mode):
    phi, psi = (QForm(Q2SQ, p) for p in pair)
    ok, w = iso_decide(phi, psi, mode)
    ok2, w2 = iso_decide(psi, phi, mode)
    assert ok == ok2
    if ok:
        assert replay(Q2SQ, w) and replay(Q2SQ, w2)
        assert w.lhs == phi.entries and w2.lhs == psi.entries


@given(forms3, st.sampled_from(list(permutations(range(3)))))
@settings(max_examples=80, deadline=None)
def test_weak_permutation_q2sq(entries, sigma):
    phi = QForm(Q2SQ, entries)
    assert iso_decide(phi, form_permute(phi, sigma), "weak")[0]


"""The nine acceptance criteria, each under its time limit.

Every test records its verdict; the terminal summary prints one
pass/fail line per criterion.
"""

import time
import warnings
from contextlib import contextmanager
from itertools import product

import numpy as np

from multiring.axioms import (
    check_multiring,
    check_prs,
    check_qt,
    check_real_reduced,
    check_rs,
    real_reduced_prop_form,
    reduction_axiom,
    sums_of_squares,
)
from multiring.bridges import duality_check, mr_to_ars, mr_to_prs, prs_to_mr
from multiring.constructions import (
    build_q2,
    g_T,
    marshall_quotient,
    power,
    q_red,
    ring_mod,
    sper,
    z_sign_quotient,
)
from multiring.core import (
    ConstructionError,
    FiniteMultiring,
    RealSemigroupData,
    RejectedInput,
    enumerate_morphisms,
)
from multiring.corpus import load_corpus, manifest
from multiring.forms import QForm, all_forms, form_permute, iso_decide, iso_relation

from .conftest import ACCEPTANCE, override_add


@contextmanager
def criterion(k, limit):
    state = {"note": ""}
    t0 = time.perf_counter()
    ok = False
    try:
        yield state
        ok = True
    finally:
        secs = time.perf_counter() - t0
        if ok and secs >= limit:
            state["note"] = (state["note"] + " over time").strip()
            ok = False
        ACCEPTANCE[k] = (ok, secs, limit, state["note"])
    assert secs < limit, f"criterion {k} took {secs:.2f} s (limit {limit} s)"


def _iso(A, B):
    return bool(enumerate_morphisms(A, B, "iso"))


def _krasner():
    return marshall_quotient(ring_mod(5), range(1, 5))[0]


def test_criterion_1_q2_passes_everything():
    with criterion(1, 1.0):
        Q = build_q2()
        assert Q.n == 3
        assert check_multiring(Q)
        assert check_qt(Q)
        assert check_real_reduced(Q)
        assert check_rs(mr_to_prs(Q))


def test_criterion_2_characterizations_agree():
    with criterion(2, 10.0):
        Q = build_q2()
        corpus = load_corpus()
        items = [Q, power(Q, 2), power(Q, 3), _krasner(), corpus["broken-assoc"],
                 override_add(Q, Q.index("1"), Q.index("-1"), {Q.index("0")})]
        for A in items:
            r = check_real_reduced(A)
            assert r.entry("RR-consistency").passed
            # the definition read directly, independent of the itemized entries
            direct = bool(check_multiring(A)) and real_reduced_prop_form(A)
            assert bool(r) == direct, A.name
            if not sums_of_squares(A) >> A.minus_one & 1:
                try:
                    same = _iso(q_red(A)[0], A)
                except (ConstructionError, RejectedInput):
                    same = False
                assert bool(r) == same, A.name


def test_criterion_3_round_trips():
    with criterion(3, 5.0) as state:
        Q = build_q2()
        Q2, K = power(Q, 2), _krasner()
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UserWarning)
            gts = [g_T(Q)[0], g_T(Q2)[0], g_T(power(Q, 3))[0]]
        failures = []
        for label, G in [("R(Q2)", mr_to_prs(Q)), ("R(Q2^2)", mr_to_prs(Q2)),
                         ("R(K)", mr_to_prs(K))] + [(g.name, g) for g in gts]:
            try:
                if mr_to_prs(prs_to_mr(G)).rel != G.rel:
                    failures.append(f"rel {label}")
            except RejectedInput as e:
                failures.append(f"rel {label} rejected ({', '.join(e.report.failed_axioms())})")
        for A in (Q, Q2, K):
            try:
                if prs_to_mr(mr_to_prs(A)).add != A.add:
                    failures.append(f"add {A.name}")
            except RejectedInput as e:
                failures.append(f"add {A.name} rejected ({', '.join(e.report.failed_axioms())})")
        state["note"] = "; ".join(failures)
        assert not failures, failures


def test_criterion_4_local_global():
    with criterion(4, 10.0):
        Q = build_q2()
        qadd = np.array([[[bool(Q.add[a][b] >> c & 1) for c in range(3)]
                          for b in range(3)] for a in range(3)])
        for k in (1, 2, 3):
            A = power(Q, k)
            points = sper(A)
            assert len(points) == k
            n = A.n
            here = np.array([[[bool(A.add[a][b] >> c & 1) for c in range(n)]
                              for b in range(n)] for a in range(n)])
            there = np.ones((n, n, n), dtype=bool)
            for s in points:
                m = np.array(s.map)
                there &= qadd[m[:, None, None], m[None, :, None], m[None, None, :]]
            assert (here == there).all()


def test_criterion_5_duality_instances():
    with criterion(5, 30.0):
        Q = build_q2()
        for k in (1, 2, 3):
            assert len(sper(power(Q, k))) == k
        Q2 = power(Q, 2)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UserWarning)
            G = g_T(Q2)[0]
        for H in (mr_to_prs(Q), mr_to_prs(Q2), G):
            assert duality_check(H), H.name
        S = mr_to_ars(Q2)
        assert len(S.points) == 2
        assert sorted(S.funcs) == sorted(product((-1, 0, 1), repeat=2))


def test_criterion_6_marshall_quotient():
    with criterion(6, 5.0):
        K, _ = marshall_quotient(ring_mod(5), range(1, 5))
        assert K.n == 2
        assert K.add[K.one][K.one] == (1 << K.zero) | (1 << K.one)
        assert check_qt(K)
        r = check_real_reduced(K)
        assert not r and "RR-iv" in r.failed_axioms()
        assert _iso(z_sign_quotient(50), build_q2())


def test_criterion_7_prs_rs_separation():
    with criterion(7, 5.0) as state:
        RK = mr_to_prs(_krasner())
        notes = []
        for pres in ("RS", "DT"):
            prs = check_prs(RK, pres)
            rs = check_rs(RK, pres)
            if not prs:
                notes.append(f"check_prs {pres} fails {','.join(prs.failed_axioms())}")
            if rs.failed_axioms() != [reduction_axiom(RK, pres)]:
                notes.append(f"check_rs {pres} fails {','.join(rs.failed_axioms())}")
        corpus = load_corpus()
        semigroups = [s for s in corpus.values() if isinstance(s, RealSemigroupData)]
        semigroups += [mr_to_prs(s) for s in corpus.values()
                       if isinstance(s, FiniteMultiring) and check_qt(s)]
        for G in semigroups:
            if bool(check_prs(G, "RS")) != bool(check_prs(G, "DT")):
                notes.append(f"prs presentations disagree on {G.name}")
            if bool(check_rs(G, "RS")) != bool(check_rs(G, "DT")):
                notes.append(f"rs presentations disagree on {G.name}")
        state["note"] = "; ".join(notes)
        assert not notes, notes


def _relation_check(A, dims):
    for d in dims:
        forms = all_forms(A, d)
        rel = {m: iso_relation(A, d, m) for m in ("strong", "weak")}
        for mode, R in rel.items():
            for i, phi in enumerate(forms):
                for j, psi in enumerate(forms):
                    assert iso_decide(phi, psi, mode)[0] == bool(R[i, j]), (mode, phi, psi)
        assert not (rel["strong"] & ~rel["weak"]).any()


def test_criterion_8_forms():
    with criterion(8, 60.0):
        Q = build_q2()
        _relation_check(Q, (1, 2, 3))
        _relation_check(power(Q, 2), (1, 2))
        K = _krasner()
        sigmas = [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
        for A in (Q, K):
            forms = all_forms(A, 3)
            assert len(forms) == A.n ** 3
            for phi in forms:
                for s in sigmas:
                    assert iso_decide(phi, form_permute(phi, s), "weak")[0], (phi, s)


def test_criterion_9_negative_corpus():
    with criterion(9, 5.0):
        from multiring.axioms import check

        corpus = load_corpus()
        negatives = {"broken-assoc", "no-separation", "rs1-violation"}
        seen = set()
        for c in manifest()["checks"]:
            if c["file"] not in negatives or c.get("options"):
                continue
            seen.add(c["file"])
            r = check(corpus[c["file"]], c["profile"])
            got = {e.axiom: list(e.counterexample) for e in r.failures()}
            assert got == c["fails"], (c["file"], got)
        assert seen == negatives

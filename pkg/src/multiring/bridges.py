"""Translations between semigroup, multiring and spectral presentations.

Each translation re-checks its input profile and raises
:class:`~multiring.core.RejectedInput` with the failing report.
Morphisms are carried over unchanged as maps; only their laws are
re-verified in the target.
"""

from __future__ import annotations

from .axioms import check_ars, check_prs, check_qt, check_real_reduced, check_rs
from .constructions import Q2_SIGN, sper
from .core import (
    ARSData,
    FiniteMultiring,
    RealSemigroupData,
    RejectedInput,
    Report,
    ReportEntry,
    StructMorphism,
    UsageError,
    enumerate_morphisms,
    is_morphism,
)


def _require(report: Report, what: str) -> None:
    if not report:
        bad = ", ".join(report.failed_axioms())
        raise RejectedInput(f"{report.subject or 'input'} is not {what} (fails {bad})", report)


def semigroup_sum_table(G: RealSemigroupData) -> FiniteMultiring:
    """``a + b = Dt(a, b)`` with the monoid data of ``G``; no checks."""
    return FiniteMultiring(
        elems=G.elems,
        add=G.Dt,
        mul=G.mul,
        neg=G.neg,
        zero=G.zero,
        one=G.one,
        name=G.name,
    )


def prs_to_mr(G: RealSemigroupData) -> FiniteMultiring:
    _require(check_prs(G), "a pre-real semigroup")
    return semigroup_sum_table(G)


def mr_to_prs(A: FiniteMultiring) -> RealSemigroupData:
    """Semigroup with ``d in D(a, b)`` iff ``d in d^2 a + d^2 b``."""
    _require(check_qt(A), "quadratically tuned")
    return RealSemigroupData(
        elems=A.elems,
        mul=A.mul,
        one=A.one,
        zero=A.zero,
        minus_one=A.minus_one,
        rel=A.D,
        presentation="RS",
        name=A.name,
    )


def ars_to_mr(S: ARSData) -> FiniteMultiring:
    _require(check_ars(S), "an abstract real spectrum")
    k = len(S.points)
    funcs = S.funcs
    mul = tuple(
        tuple(S.find(tuple(x * y for x, y in zip(f, g))) for g in funcs) for f in funcs
    )
    return FiniteMultiring(
        elems=S.elems,
        add=S.Dt,
        mul=mul,
        neg=tuple(S.find(tuple(-x for x in f)) for f in funcs),
        zero=S.find((0,) * k),
        one=S.find((1,) * k),
        name=S.name,
    )


def mr_to_ars(A: FiniteMultiring) -> ARSData:
    """Signatures of ``A`` as points, ``a -> (sigma(a))_sigma`` as functions."""
    _require(check_real_reduced(A), "real reduced")
    points = sper(A)
    funcs = tuple(tuple(Q2_SIGN[s.map[a]] for s in points) for a in range(A.n))
    if len(set(funcs)) != len(funcs):
        raise RejectedInput("signatures do not separate the elements")
    return ARSData(
        points=tuple(f"s{i}" for i in range(len(points))),
        funcs=funcs,
        name=A.name,
    )


def translate(structure, target: str):
    """Dispatch used by the CLI: ``target`` in {mr, prs, rs, ars}."""
    if target == "mr":
        if isinstance(structure, RealSemigroupData):
            return prs_to_mr(structure)
        if isinstance(structure, ARSData):
            return ars_to_mr(structure)
    elif target in ("prs", "rs"):
        if isinstance(structure, ARSData):
            structure = ars_to_mr(structure)
        if isinstance(structure, FiniteMultiring):
            G = mr_to_prs(structure)
            if target == "rs":
                _require(check_rs(G), "a real semigroup")
            return G
    elif target == "ars":
        if isinstance(structure, RealSemigroupData):
            _require(check_rs(structure), "a real semigroup")
            structure = prs_to_mr(structure)
        if isinstance(structure, FiniteMultiring):
            return mr_to_ars(structure)
    else:
        raise UsageError(f"unknown translation target {target!r}")
    raise UsageError(f"cannot translate a {type(structure).__name__} to {target}")


def _attempt(fn, *args):
    try:
        return fn(*args)
    except RejectedInput:
        return None


def _label(s, i):
    return s.name or f"#{i}"


def roundtrip_report(corpus: list) -> Report:
    """Table-level checks of both round trips, the RS / real reduced faces
    and the action on morphisms, one entry per item."""
    entries = []
    qt_items = []
    for i, s in enumerate(corpus):
        label = _label(s, i)
        if isinstance(s, RealSemigroupData):
            A = _attempt(prs_to_mr, s)
            back = _attempt(mr_to_prs, A) if A is not None else None
            base = s.to_presentation("RS")
            ok = back is not None and back.rel == base.rel
            entries.append(ReportEntry(f"rel-recovery[{label}]", ok))
            if A is not None and check_rs(s):
                entries.append(ReportEntry(f"rs-face[{label}]", bool(check_real_reduced(A))))
        elif isinstance(s, FiniteMultiring):
            G = _attempt(mr_to_prs, s)
            back = _attempt(prs_to_mr, G) if G is not None else None
            ok = back is not None and back.add == s.add
            entries.append(ReportEntry(f"add-recovery[{label}]", ok))
            if G is None:
                continue
            qt_items.append((label, s))
            if check_real_reduced(s):
                entries.append(ReportEntry(f"rr-face[{label}]", bool(check_rs(G))))
    for la, A in qt_items:
        for lb, B in qt_items:
            entries.append(ReportEntry(f"functoriality[{la}->{lb}]", functor_on_morphisms(A, B)))
    return Report(tuple(entries), "round trips")


def functor_on_morphisms(A: FiniteMultiring, B: FiniteMultiring) -> bool:
    """Multiring morphisms ``A -> B`` are exactly the D-preserving maps
    between the associated semigroups."""
    mr = [f.map for f in enumerate_morphisms(A, B)]
    GA, GB = mr_to_prs(A), mr_to_prs(B)
    rs = [f.map for f in enumerate_morphisms(GA, GB)]
    return mr == rs and all(is_morphism(StructMorphism(GA, GB, m)) for m in mr)


def duality_check(structure) -> Report:
    """Instance-level duality: real semigroup -> spectrum -> real semigroup
    (or spectrum -> real semigroup -> spectrum) returns an isomorphic copy."""
    if isinstance(structure, RealSemigroupData):
        G = structure
        _require(check_rs(G), "a real semigroup")
        S = mr_to_ars(prs_to_mr(G))
        back = mr_to_prs(ars_to_mr(S))
        isos = enumerate_morphisms(G.to_presentation("RS"), back, "iso")
        entries = [
            ReportEntry("spectrum-is-ars", bool(check_ars(S))),
            ReportEntry("back-is-rs", bool(check_rs(back))),
            ReportEntry("iso", bool(isos)),
        ]
    elif isinstance(structure, ARSData):
        S = structure
        _require(check_ars(S), "an abstract real spectrum")
        G = mr_to_prs(ars_to_mr(S))
        back = mr_to_ars(prs_to_mr(G))
        isos = enumerate_morphisms(S, back, "iso")
        entries = [
            ReportEntry("semigroup-is-rs", bool(check_rs(G))),
            ReportEntry("back-is-ars", bool(check_ars(back))),
            ReportEntry("iso", bool(isos)),
        ]
    else:
        raise UsageError("duality_check needs a real semigroup or an ARS")
    return Report(tuple(entries), structure.name)

"""Exhaustive axiom checkers returning reports with least counterexamples.

Every checker scans its quantified variables in lexicographic index order
and records the first violating tuple, so reports are reproducible.
Hypotheses are tested before conclusions wherever that prunes the scan.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core import (
    ARSData,
    FiniteMultiring,
    RealSemigroupData,
    Report,
    ReportEntry,
    UsageError,
    bits,
    has,
    sign_name,
    to_mask,
)

PROFILES = ("multiring", "multifield", "ts", "prs", "rs", "qt", "real-reduced", "ars")
AX2_CONVENTIONS = ("standard", "as-written")


@dataclass(frozen=True)
class AxiomProfile:
    name: str
    presentation: str | None = None
    ax2: str = "standard"

    def __post_init__(self):
        if self.name not in PROFILES:
            raise UsageError(f"unknown profile {self.name!r}")
        if self.ax2 not in AX2_CONVENTIONS:
            raise UsageError(f"unknown AX2 convention {self.ax2!r}")


def _entry(axiom, S, violation) -> ReportEntry:
    if violation is None:
        return ReportEntry(axiom, True)
    return ReportEntry(axiom, False, S.names(violation))


def _first(tuples, bad):
    for t in tuples:
        if bad(*t):
            return t
    return None


def _grid(n, k):
    return product(range(n), repeat=k)


def _first_reps(n, key) -> list[int]:
    """Least element of each class of ``key``; a scan whose test depends on
    ``x`` only through ``key(x)`` may skip the others without changing the
    least counterexample."""
    seen, out = set(), []
    for x in range(n):
        k = key(x)
        if k not in seen:
            seen.add(k)
            out.append(x)
    return out


# -- multirings --------------------------------------------------------------

def sums_of_squares(A: FiniteMultiring) -> int:
    """Bitmask of the least set containing all squares and closed under sums."""
    T = to_mask(A.sq(a) for a in range(A.n))
    while True:
        grown = T
        for x in bits(T):
            for y in bits(T):
                grown |= A.add[x][y]
        if grown == T:
            return T
        T = grown


def _mr_violations(A: FiniteMultiring, multifield: bool = False) -> dict:
    n, add, mul, neg, zero, one = A.n, A.add, A.mul, A.neg, A.zero, A.one
    out = {}
    out["MR-add-comm"] = _first(_grid(n, 2), lambda a, b: add[a][b] != add[b][a])
    out["MR-add-zero"] = _first(_grid(n, 2), lambda a, b: has(add[b][zero], a) != (a == b))

    def reversibility(a, b, c):
        return has(add[a][b], c) and not (
            has(add[c][neg[b]], a) and has(add[neg[a]][c], b)
        )

    out["MR-reversibility"] = _first(_grid(n, 3), reversibility)
    out["MR-add-assoc"] = _first(
        _grid(n, 3), lambda a, b, c: A.add_set(add[a][b], c) != _left_sum(A, a, add[b][c])
    )
    out["MR-mul-comm"] = _first(_grid(n, 2), lambda a, b: mul[a][b] != mul[b][a])
    out["MR-mul-assoc"] = _first(
        _grid(n, 3), lambda a, b, c: mul[mul[a][b]][c] != mul[a][mul[b][c]]
    )
    out["MR-mul-unit"] = _first(_grid(n, 1), lambda a: mul[one][a] != a or mul[a][one] != a)
    out["MR-mul-zero"] = _first(_grid(n, 1), lambda a: mul[a][zero] != zero)

    def distrib(a, b, c):
        lhs = A.mul_set(a, add[b][c])
        return lhs & ~add[mul[a][b]][mul[a][c]] != 0

    out["MR-distrib"] = _first(_grid(n, 3), distrib)
    if multifield:
        out["MF-nontrivial"] = () if one == zero else None
        out["MF-inverse"] = _first(
            _grid(n, 1),
            lambda a: a != zero and all(mul[a][b] != one for b in range(n)),
        )
    return out


def _left_sum(A, a, mask):
    out = 0
    for y in bits(mask):
        out |= A.add[a][y]
    return out


def check_multiring(A: FiniteMultiring, multifield: bool = False) -> Report:
    """Commutative multigroup, commutative monoid, absorbing zero, and
    weak distributivity ``a(b + c) <= ab + ac``; optionally inverses."""
    viol = _mr_violations(A, multifield)
    return Report(tuple(_entry(k, A, v) for k, v in viol.items()), A.name)


def check_multifield(A: FiniteMultiring) -> Report:
    return check_multiring(A, multifield=True)


def _precondition_entry(axiom: str, report: Report) -> ReportEntry:
    bad = report.failures()
    if not bad:
        return ReportEntry(axiom, True)
    return ReportEntry(axiom, False, bad[0].counterexample)


def check_qt(A: FiniteMultiring) -> Report:
    n, add, mul, neg, one = A.n, A.add, A.mul, A.neg, A.one
    sq = [mul[a][a] for a in range(n)]
    entries = [_precondition_entry("multiring", check_multiring(A))]

    v = _first(_grid(n, 1), lambda a: mul[sq[a]][a] != a)
    entries.append(_entry("QT0", A, v))
    v = _first(_grid(n, 1), lambda a: not has(add[one][a], one))
    entries.append(_entry("QT1", A, v))

    # ad = bd, ae = be, c in c^2 d + c^2 e  =>  ac = bc
    def qt2():
        for a, b in _grid(n, 2):
            if a == b:
                continue
            eq = [d for d in range(n) if mul[a][d] == mul[b][d]]
            for c in range(n):
                if mul[a][c] == mul[b][c]:
                    continue
                s = sq[c]
                for d in eq:
                    for e in eq:
                        if has(add[mul[s][d]][mul[s][e]], c):
                            return (a, b, c, d, e)
        return None

    entries.append(_entry("QT2", A, qt2()))

    # e in (ce)^2 a + (de)^2 b  =>  e in e^2 a + e^2 b
    reps = _first_reps(n, lambda c: tuple(sq[mul[c][e]] for e in range(n)))

    def qt3():
        for a, b in _grid(n, 2):
            bad_e = [e for e in range(n)
                     if not has(add[mul[sq[e]][a]][mul[sq[e]][b]], e)]
            if not bad_e:
                continue
            for c, d in product(reps, repeat=2):
                for e in bad_e:
                    u = mul[sq[mul[c][e]]][a]
                    w = mul[sq[mul[d][e]]][b]
                    if has(add[u][w], e):
                        return (a, b, c, d, e)
        return None

    entries.append(_entry("QT3", A, qt3()))

    # a in a^2 b + a^2 c  =>  a^2 in (ab)^2 + (ac)^2
    def qt4(a, b, c):
        s = sq[a]
        return has(add[mul[s][b]][mul[s][c]], a) and not has(
            add[sq[mul[a][b]]][sq[mul[a][c]]], s
        )

    entries.append(_entry("QT4", A, _first(_grid(n, 3), qt4)))
    entries.append(_entry("QT5", A, _first(_grid(n, 3), lambda a, b, e: _qt5_fails(A, a, b, e))))
    return Report(tuple(entries), A.name)


def qt5_rhs(A: FiniteMultiring, a: int, b: int, e: int) -> bool:
    """e in ae^2 + be^2,  -a in ba^2 - ea^2,  -b in ab^2 - eb^2."""
    add, mul, neg = A.add, A.mul, A.neg
    se, sa, sb = A.sq(e), A.sq(a), A.sq(b)
    return (
        has(add[mul[a][se]][mul[b][se]], e)
        and has(add[mul[b][sa]][neg[mul[e][sa]]], neg[a])
        and has(add[mul[a][sb]][neg[mul[e][sb]]], neg[b])
    )


def _qt5_fails(A, a, b, e) -> bool:
    return has(A.add[a][b], e) != qt5_rhs(A, a, b, e)


def _rr_violations(A: FiniteMultiring) -> dict:
    n, add, mul, zero, one = A.n, A.add, A.mul, A.zero, A.one
    sq = [mul[a][a] for a in range(n)]
    out = {}
    out["RR-i"] = () if one == zero else None
    out["RR-ii"] = _first(_grid(n, 1), lambda a: mul[sq[a]][a] != a)
    # c in a + ab^2  =>  c = a
    out["RR-iii"] = _first(
        _grid(n, 3), lambda a, b, c: c != a and has(add[a][mul[a][sq[b]]], c)
    )

    # c, d in a^2 + b^2  =>  c = d
    def item_iv():
        for a, b in _grid(n, 2):
            members = list(bits(add[sq[a]][sq[b]]))
            if len(members) > 1:
                return (a, b, members[0], members[1])
        return None

    out["RR-iv"] = item_iv()
    out["RR-sos"] = () if has(sums_of_squares(A), A.minus_one) else None
    return out


def real_reduced_prop_form(A: FiniteMultiring) -> bool:
    """-1 not a sum of squares, a^3 = a, a + ab^2 = {a}, a^2 + b^2 a singleton."""
    n, add, mul = A.n, A.add, A.mul
    if has(sums_of_squares(A), A.minus_one):
        return False
    for a in range(n):
        if mul[mul[a][a]][a] != a:
            return False
        for b in range(n):
            if add[a][mul[a][mul[b][b]]] != 1 << a:
                return False
            cell = add[mul[a][a]][mul[b][b]]
            if cell & (cell - 1):
                return False
    return True


def check_real_reduced(A: FiniteMultiring) -> Report:
    """Characterization by 1 != 0, a^3 = a, (iii), (iv), plus -1 not in SOS.

    ``RR-consistency`` passes when the itemized verdict agrees with the
    ``a + ab^2 = {a}`` / unique ``a^2 + b^2`` form of the definition.
    """
    viol = _rr_violations(A)
    entries = [_precondition_entry("multiring", check_multiring(A))]
    entries += [_entry(k, A, v) for k, v in viol.items()]
    itemized = all(v is None for v in viol.values())
    entries.append(ReportEntry("RR-consistency", itemized == real_reduced_prop_form(A)))
    return Report(tuple(entries), A.name)


# -- ternary and real semigroups --------------------------------------------

def check_ts(G: RealSemigroupData) -> Report:
    n, mul, one, zero, m1 = G.n, G.mul, G.one, G.zero, G.minus_one

    def ts1():
        v = _first(_grid(n, 1), lambda a: mul[one][a] != a)
        if v is None:
            v = _first(_grid(n, 2), lambda a, b: mul[a][b] != mul[b][a])
        if v is None:
            v = _first(_grid(n, 3), lambda a, b, c: mul[mul[a][b]][c] != mul[a][mul[b][c]])
        return v

    entries = [
        _entry("TS1", G, ts1()),
        _entry("TS2", G, _first(_grid(n, 1), lambda x: mul[mul[x][x]][x] != x)),
        _entry("TS3", G, (m1,) if m1 == one or mul[m1][m1] != one else None),
        _entry("TS4", G, _first(_grid(n, 1), lambda x: mul[x][zero] != zero)),
        _entry("TS5", G, _first(_grid(n, 1), lambda x: x == mul[m1][x] and x != zero)),
    ]
    return Report(tuple(entries), G.name)


def _strong_assoc(n, dt):
    """a in Dt(b,c), c in Dt(d,e)  =>  exists x in Dt(b,d) with a in Dt(x,e)."""
    # xs[a][e] = {x : a in Dt(x, e)}
    xs = [[to_mask(x for x in range(n) if has(dt[x][e], a)) for e in range(n)]
          for a in range(n)]
    for a, b, c in _grid(n, 3):
        if not has(dt[b][c], a):
            continue
        for d, e in _grid(n, 2):
            if has(dt[d][e], c) and not dt[b][d] & xs[a][e]:
                return (a, b, c, d, e)
    return None


def _triples(n):
    return _grid(n, 3)


def _prs_rs_violations(G: RealSemigroupData) -> dict:
    n, mul, neg, zero = G.n, G.mul, G.neg, G.zero
    D, Dt = G.D, G.Dt
    sq = [mul[a][a] for a in range(n)]
    out = {}
    out["RS0"] = _first(_triples(n), lambda a, b, c: has(D[a][b], c) != has(D[b][a], c))
    out["RS1"] = _first(_grid(n, 2), lambda a, b: not has(D[a][b], a))
    out["RS2"] = _first(
        _grid(n, 4),
        lambda a, b, c, d: has(D[b][c], a) and not has(D[mul[b][d]][mul[c][d]], mul[a][d]),
    )
    out["RS3"] = _strong_assoc(n, Dt)

    # e in D(c^2 a, d^2 b)  =>  e in D(a, b)
    def rs4():
        for a, b in _grid(n, 2):
            outside = ~D[a][b]
            for c, d in _grid(n, 2):
                hit = D[mul[sq[c]][a]][mul[sq[d]][b]] & outside
                if hit:
                    return (a, b, c, d, next(bits(hit)))
        return None

    out["RS4"] = rs4()

    # ad = bd, ae = be, c in D(d, e)  =>  ac = bc
    def rs5():
        for a, b in _grid(n, 2):
            if a == b:
                continue
            eq = [d for d in range(n) if mul[a][d] == mul[b][d]]
            for c in range(n):
                if mul[a][c] == mul[b][c]:
                    continue
                for d in eq:
                    for e in eq:
                        if has(D[d][e], c):
                            return (a, b, c, d, e)
        return None

    out["RS5"] = rs5()
    out["RS6"] = _first(
        _triples(n),
        lambda a, b, c: has(D[a][b], c) and not has(Dt[mul[sq[c]][a]][mul[sq[c]][b]], c),
    )
    out["RS7"] = _first(
        _grid(n, 2), lambda a, b: a != b and Dt[a][neg[b]] & Dt[b][neg[a]] != 0
    )
    out["RS7'"] = _first(_grid(n, 2), lambda a, x: has(Dt[zero][a], x) != (x == a))
    out["RS8"] = _first(
        _triples(n), lambda a, b, c: has(D[b][c], a) and not has(D[sq[b]][sq[c]], sq[a])
    )
    return out


def _dt_violations(G: RealSemigroupData) -> dict:
    n, mul, neg, zero, one = G.n, G.mul, G.neg, G.zero, G.one
    D, Dt = G.D, G.Dt
    sq = [mul[a][a] for a in range(n)]
    out = {}
    out["DT0"] = _first(_triples(n), lambda a, b, c: has(Dt[b][c], a) != has(Dt[c][b], a))
    out["DT1"] = _first(
        _triples(n), lambda a, b, c: has(Dt[b][c], a) and not has(Dt[neg[a]][c], neg[b])
    )
    out["DT2"] = _first(_grid(n, 1), lambda a: not has(Dt[one][a], one))
    out["DT3"] = _first(
        _grid(n, 4),
        lambda a, b, c, d: has(Dt[b][c], a) and not has(Dt[mul[b][d]][mul[c][d]], mul[a][d]),
    )
    out["DT4"] = _strong_assoc(n, Dt)

    # ad = bd, ae = be, c in Dt(c^2 d, c^2 e)  =>  ac = bc
    def dt5():
        for a, b in _grid(n, 2):
            if a == b:
                continue
            eq = [d for d in range(n) if mul[a][d] == mul[b][d]]
            for c in range(n):
                if mul[a][c] == mul[b][c]:
                    continue
                s = sq[c]
                for d in eq:
                    for e in eq:
                        if has(Dt[mul[s][d]][mul[s][e]], c):
                            return (a, b, c, d, e)
        return None

    out["DT5"] = dt5()

    # e in Dt(c^2 e^2 a, d^2 e^2 b)  =>  e in Dt(e^2 a, e^2 b)
    reps = _first_reps(n, lambda c: sq[c])

    def dt6():
        for a, b in _grid(n, 2):
            bad_e = [e for e in range(n) if not has(Dt[mul[sq[e]][a]][mul[sq[e]][b]], e)]
            if not bad_e:
                continue
            for c, d in product(reps, repeat=2):
                for e in bad_e:
                    u = mul[mul[sq[c]][sq[e]]][a]
                    w = mul[mul[sq[d]][sq[e]]][b]
                    if has(Dt[u][w], e):
                        return (a, b, c, d, e)
        return None

    out["DT6"] = dt6()
    out["DT7"] = _first(
        _triples(n),
        lambda a, b, c: has(D[a][b], c) and not has(Dt[mul[sq[c]][a]][mul[sq[c]][b]], c),
    )
    out["DT8"] = _first(
        _triples(n),
        lambda a, b, c: has(Dt[mul[sq[a]][b]][mul[sq[a]][c]], a)
        and not has(Dt[sq[mul[a][b]]][sq[mul[a][c]]], sq[a]),
    )
    out["DT9"] = _first(_grid(n, 2), lambda a, x: has(Dt[zero][a], x) != (x == a))
    out["DT10"] = _first(
        _grid(n, 2), lambda a, b: a != b and Dt[a][neg[b]] & Dt[b][neg[a]] != 0
    )
    return out


REDUCTION = {"RS": "RS7", "DT": "DT10"}


def _semigroup_report(G, presentation, reduction: bool) -> Report:
    entries = []
    if presentation is not None and presentation != G.presentation:
        H = G.to_presentation(presentation)
        back = H.to_presentation(G.presentation).rel
        # the other presentation only describes G if converting back recovers it
        miss = next(
            ((c, a, b) for a, b, c in _grid(G.n, 3) if has(G.rel[a][b] ^ back[a][b], c)),
            None,
        )
        entries.append(_entry("presentation-roundtrip", G, miss))
        G = H
    entries += check_ts(G).entries
    if G.presentation == "RS":
        viol = _prs_rs_violations(G)
    else:
        viol = _dt_violations(G)
    if not reduction:
        viol.pop(REDUCTION[G.presentation])
    entries += [_entry(k, G, v) for k, v in viol.items()]
    return Report(tuple(entries), G.name)


def check_prs(G: RealSemigroupData, presentation: str | None = None) -> Report:
    """Ternary semigroup laws plus the pre-real semigroup axioms.

    ``presentation`` re-expresses ``G`` with D (``"RS"``) or Dt (``"DT"``)
    as the primitive relation before checking; the default keeps ``G``'s own.
    """
    return _semigroup_report(G, presentation, reduction=False)


def check_rs(G: RealSemigroupData, presentation: str | None = None) -> Report:
    return _semigroup_report(G, presentation, reduction=True)


def reduction_axiom(G: RealSemigroupData, presentation: str | None = None) -> str:
    return REDUCTION[presentation or G.presentation]


# -- abstract real spectra ---------------------------------------------------

def _ars_ax1(S: ARSData):
    k = len(S.points)
    for c in (-1, 0, 1):
        if S.find((c,) * k) is None:
            return (sign_name((c,) * k),)
    funcs = S.funcs
    for i, j in _grid(S.n, 2):
        prod = tuple(x * y for x, y in zip(funcs[i], funcs[j]))
        if S.find(prod) is None:
            return (sign_name(funcs[i]), sign_name(funcs[j]))
    for x, y in _grid(k, 2):
        if x < y and all(f[x] == f[y] for f in funcs):
            return (S.points[x], S.points[y])
    return None


def qualifying_submonoids(S: ARSData) -> list[int]:
    """All submonoids P (bitmasks over G) meeting the hypotheses of AX2.

    P must contain 1, be closed under products, satisfy
    ``P u -P = G``, exclude -1, contain ``D(a, b)`` for ``a, b`` in P, and
    have a prime support ``P n -P``.  Backtracking assigns each pair
    ``{a, -a}`` one of {a}, {-a}, {a, -a}.
    """
    n, funcs = S.n, S.funcs
    neg = [S.find(tuple(-v for v in f)) for f in funcs]
    mul = [[S.find(tuple(x * y for x, y in zip(f, g))) for g in funcs] for f in funcs]
    if any(v is None for v in neg) or any(v is None for row in mul for v in row):
        return []
    k = len(S.points)
    one, m1 = S.find((1,) * k), S.find((-1,) * k)
    pairs = sorted({(min(a, neg[a]), max(a, neg[a])) for a in range(n)})
    D = S.D
    found = []

    def closed(P: int) -> bool:
        for a in bits(P):
            for b in bits(P):
                if not has(P, mul[a][b]) or D[a][b] & ~P:
                    return False
        support = P & to_mask(neg[a] for a in bits(P))
        for a, b in _grid(n, 2):
            if has(support, mul[a][b]) and not (has(support, a) or has(support, b)):
                return False
        return True

    def partial_ok(P: int) -> bool:
        if has(P, m1):
            return False
        for a in bits(P):
            for b in bits(P):
                ab = mul[a][b]
                if ab < len(decided) and decided[ab] and not has(P, ab):
                    return False
        return True

    decided: list[bool] = [False] * n

    def rec(i: int, P: int) -> None:
        if i == len(pairs):
            if closed(P):
                found.append(P)
            return
        a, b = pairs[i]
        options = [1 << a] if a == b else [1 << a, 1 << b, (1 << a) | (1 << b)]
        decided[a] = decided[b] = True
        for opt in options:
            Q = P | opt
            if partial_ok(Q):
                rec(i + 1, Q)
        decided[a] = decided[b] = False

    if one is None or m1 is None:
        return []
    rec(0, 0)
    return sorted(found)


def check_ars(S: ARSData, ax2: str = "standard") -> Report:
    """AX1, AX2, AX3a, AX3b and AX3 with pointwise value sets.

    ``ax2="standard"`` matches qualifying submonoids against
    ``{a : a(x) >= 0}``; ``"as-written"`` uses ``a(x) <= 0``.
    AX3a reads ``p in D(a, q)`` for its hypothesis.
    """
    if ax2 not in AX2_CONVENTIONS:
        raise UsageError(f"unknown AX2 convention {ax2!r}")
    n, funcs, D, Dt = S.n, S.funcs, S.D, S.Dt
    entries = []
    ax1 = _ars_ax1(S)
    entries.append(ReportEntry("AX1", ax1 is None, ax1 or ()))

    def point_set(x: int) -> int:
        if ax2 == "standard":
            return to_mask(i for i, f in enumerate(funcs) if f[x] >= 0)
        return to_mask(i for i, f in enumerate(funcs) if f[x] <= 0)

    # AX1 failure leaves the monoid structure undefined
    if ax1 is None:
        targets = {point_set(x) for x in range(len(S.points))}
        bad = [P for P in qualifying_submonoids(S) if P not in targets]
        entries.append(ReportEntry("AX2", not bad, S.names(bits(bad[0])) if bad else ()))

    def assoc(R):
        for a, b, c in _grid(n, 3):
            lhs = 0
            for q in bits(R[b][c]):
                lhs |= R[a][q]
            rhs = 0
            for r in bits(R[a][b]):
                rhs |= R[r][c]
            miss = lhs & ~rhs
            if miss:
                return (a, b, c, next(bits(miss)))
        return None

    entries.append(_entry("AX3a", S, assoc(D)))
    entries.append(_entry("AX3b", S, _first(_grid(n, 2), lambda a, b: Dt[a][b] == 0)))
    entries.append(_entry("AX3", S, assoc(Dt)))
    return Report(tuple(entries), S.name)


def check(structure, profile: str | AxiomProfile, **options) -> Report:
    """Dispatch to the checker for ``profile``."""
    if isinstance(profile, AxiomProfile):
        options.setdefault("presentation", profile.presentation)
        options.setdefault("ax2", profile.ax2)
        profile = profile.name
    checkers = {
        "multiring": (FiniteMultiring, check_multiring),
        "multifield": (FiniteMultiring, check_multifield),
        "qt": (FiniteMultiring, check_qt),
        "real-reduced": (FiniteMultiring, check_real_reduced),
        "ts": (RealSemigroupData, check_ts),
        "prs": (RealSemigroupData, check_prs),
        "rs": (RealSemigroupData, check_rs),
        "ars": (ARSData, check_ars),
    }
    if profile not in checkers:
        raise UsageError(f"unknown profile {profile!r}")
    kind, fn = checkers[profile]
    if not isinstance(structure, kind):
        raise UsageError(f"profile {profile!r} needs a {kind.__name__}")
    if profile in ("prs", "rs"):
        return fn(structure, options.get("presentation"))
    if profile == "ars":
        return fn(structure, options.get("ax2") or "standard")
    return fn(structure)

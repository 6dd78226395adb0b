"""Concrete structures: Q2, products, Sper, Q_T images, Marshall quotients, G_T."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cache
from itertools import product

from .axioms import check_multiring, check_qt, sums_of_squares
from .core import (
    ConstructionError,
    FiniteMultiring,
    RealSemigroupData,
    RejectedInput,
    StructMorphism,
    UsageError,
    bits,
    has,
    is_morphism,
    is_strong_embedding,
    enumerate_morphisms,
    to_mask,
)

# Q2 carrier order; sign value of each index
Q2_NAMES = ("-1", "0", "1")
Q2_SIGN = (-1, 0, 1)


@cache
def build_q2() -> FiniteMultiring:
    """The sign multifield {-1, 0, 1} with ``1 + (-1) = Q2``."""
    idx = {s: i for i, s in enumerate(Q2_SIGN)}
    full = {0, 1, 2}

    def plus(x, y):
        if x == 0:
            return {idx[y]}
        if y == 0:
            return {idx[x]}
        return {idx[x]} if x == y else full

    add = [[plus(x, y) for y in Q2_SIGN] for x in Q2_SIGN]
    mul = [[idx[x * y] for y in Q2_SIGN] for x in Q2_SIGN]
    neg = [idx[-x] for x in Q2_SIGN]
    return FiniteMultiring.from_tables(Q2_NAMES, add, mul, neg, idx[0], idx[1], name="Q2")


def ring_mod(m: int) -> FiniteMultiring:
    """Z/m as a multiring with singleton sums."""
    if m < 1:
        raise UsageError("modulus must be positive")
    r = range(m)
    return FiniteMultiring.from_tables(
        [str(i) for i in r],
        [[{(a + b) % m} for b in r] for a in r],
        [[(a * b) % m for b in r] for a in r],
        [(-a) % m for a in r],
        0,
        1 % m,
        name=f"Z/{m}",
    )


def product_power(factors: list[FiniteMultiring]) -> FiniteMultiring:
    """Componentwise product; ``c in a + b`` iff it holds in every factor."""
    if not factors:
        raise UsageError("need at least one factor")
    k = len(factors)
    tuples = list(product(*(range(F.n) for F in factors)))
    pos = {t: i for i, t in enumerate(tuples)}
    names = ["(" + ",".join(F.elems[x] for F, x in zip(factors, t)) + ")" for t in tuples]

    def add(s, t):
        comps = [list(bits(F.add[x][y])) for F, x, y in zip(factors, s, t)]
        return {pos[c] for c in product(*comps)}

    mul = [[pos[tuple(F.mul[x][y] for F, x, y in zip(factors, s, t))] for t in tuples]
           for s in tuples]
    neg = [pos[tuple(F.neg[x] for F, x in zip(factors, s))] for s in tuples]
    zero = pos[tuple(F.zero for F in factors)]
    one = pos[tuple(F.one for F in factors)]
    name = "x".join(F.name or "?" for F in factors)
    if k > 1 and len({F.name for F in factors}) == 1 and factors[0].name:
        name = f"{factors[0].name}^{k}"
    return FiniteMultiring.from_tables(
        names, [[add(s, t) for t in tuples] for s in tuples], mul, neg, zero, one, name=name,
    )


def power(A: FiniteMultiring, k: int) -> FiniteMultiring:
    if k < 1:
        raise UsageError("exponent must be at least 1")
    return product_power([A] * k)


def projection(P: FiniteMultiring, factors: list[FiniteMultiring], i: int) -> StructMorphism:
    """Coordinate map from a ``product_power`` onto factor ``i``."""
    tuples = list(product(*(range(F.n) for F in factors)))
    return StructMorphism(P, factors[i], tuple(t[i] for t in tuples))


def diagonal(A: FiniteMultiring, k: int) -> tuple[FiniteMultiring, StructMorphism]:
    P = power(A, k)
    tuples = list(product(range(A.n), repeat=k))
    pos = {t: i for i, t in enumerate(tuples)}
    return P, StructMorphism(A, P, tuple(pos[(a,) * k] for a in range(A.n)))


def sper(A: FiniteMultiring) -> list[StructMorphism]:
    """Signatures: multiring morphisms ``A -> Q2``."""
    return enumerate_morphisms(A, build_q2(), "all")


@dataclass(frozen=True)
class PreorderSubset:
    """Subset of a multiring containing all squares, closed under + and *."""

    ambient: FiniteMultiring
    members: int

    def __post_init__(self):
        A, T = self.ambient, self.members
        for a in range(A.n):
            if not has(T, A.sq(a)):
                raise UsageError(f"preorder misses the square of {A.elems[a]!r}")
        for x in bits(T):
            for y in bits(T):
                if not has(T, A.mul[x][y]) or A.add[x][y] & ~T:
                    raise UsageError(
                        f"preorder not closed at ({A.elems[x]!r}, {A.elems[y]!r})"
                    )

    @property
    def proper(self) -> bool:
        return not has(self.members, self.ambient.minus_one)

    def __contains__(self, a: int) -> bool:
        return has(self.members, a)

    def names(self) -> tuple[str, ...]:
        return self.ambient.names(bits(self.members))


def preorder_closure(A: FiniteMultiring, gens=()) -> PreorderSubset:
    """Least preorder containing ``gens``; check ``.proper`` for -1."""
    T = to_mask(gens) | to_mask(A.sq(a) for a in range(A.n))
    while True:
        grown = T
        for x in bits(T):
            for y in bits(T):
                grown |= A.add[x][y] | (1 << A.mul[x][y])
        if grown == T:
            return PreorderSubset(A, T)
        T = grown


def sums_of_squares_preorder(A: FiniteMultiring) -> PreorderSubset:
    return preorder_closure(A, bits(sums_of_squares(A)))


def _signature_vectors(A: FiniteMultiring, points: list[StructMorphism]):
    return [tuple(Q2_SIGN[s.map[a]] for s in points) for a in range(A.n)]


def _classes(vectors):
    """First-occurrence order of distinct vectors, and each element's class."""
    order: dict = {}
    cls = []
    for v in vectors:
        cls.append(order.setdefault(v, len(order)))
    return list(order), cls


def restricted_sper(A: FiniteMultiring, T: PreorderSubset) -> list[StructMorphism]:
    """Signatures sending every member of ``T`` into {0, 1}."""
    nonneg = {Q2_SIGN.index(0), Q2_SIGN.index(1)}
    return [s for s in sper(A) if all(s.map[t] in nonneg for t in bits(T.members))]


def q_T(A: FiniteMultiring, T: PreorderSubset | None = None):
    """Image of ``A`` in ``Q2^{X_T}`` and the projection ``a -> a-bar``.

    Sums are ``{c-bar : c in a' + b'}`` over all representatives ``a'``,
    ``b'``.  The result is checked to be a multiring strongly embedded in
    the full power.  ``T=None`` gives the real reduced image ``Q_red(A)``.
    """
    if has(sums_of_squares(A), A.minus_one):
        raise RejectedInput(f"-1 is a sum of squares in {A.name or 'A'}")
    if T is None:
        T = sums_of_squares_preorder(A)
    if T.ambient != A:
        raise UsageError("preorder belongs to another multiring")
    if not T.proper:
        raise RejectedInput("preorder contains -1")
    points = restricted_sper(A, T)
    vectors = _signature_vectors(A, points)
    carrier, cls = _classes(vectors)
    m = len(carrier)
    rep = [cls.index(i) for i in range(m)]
    add = [[0] * m for _ in range(m)]
    for a in range(A.n):
        for b in range(A.n):
            add[cls[a]][cls[b]] |= to_mask(cls[c] for c in bits(A.add[a][b]))
    Q = FiniteMultiring(
        elems=A.names(rep),
        add=tuple(tuple(r) for r in add),
        mul=tuple(tuple(cls[A.mul[rep[i]][rep[j]]] for j in range(m)) for i in range(m)),
        neg=tuple(cls[A.neg[rep[i]]] for i in range(m)),
        zero=cls[A.zero],
        one=cls[A.one],
        name=f"Q_T({A.name})" if A.name else "Q_T",
    )
    proj = StructMorphism(A, Q, tuple(cls))
    if not check_multiring(Q):
        raise ConstructionError(f"image of {A.name or 'A'} is not a multiring")
    if points:
        full = power(build_q2(), len(points))
        pos = {t: i for i, t in enumerate(product(range(3), repeat=len(points)))}
        incl = StructMorphism(
            Q, full, tuple(pos[tuple(Q2_SIGN.index(s) for s in v)] for v in carrier)
        )
        if not is_strong_embedding(incl):
            raise ConstructionError("image is not strongly embedded in the signature power")
    return Q, proj


def q_red(A: FiniteMultiring):
    return q_T(A, None)


def _marshall_classes(A: FiniteMultiring, S: int) -> list[int]:
    n = A.n
    orbit = [to_mask(A.mul[a][s] for s in bits(S)) for a in range(n)]
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in range(n):
        for b in range(a + 1, n):
            if orbit[a] & orbit[b]:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    return [find(a) for a in range(n)]


def marshall_quotient(A: FiniteMultiring, S) -> tuple[FiniteMultiring, StructMorphism]:
    """Quotient by a multiplicative set: ``a ~ b`` iff ``as = bt`` for s, t in S.

    ``x-bar in a-bar + b-bar`` iff ``xp in aq + br`` for some p, q, r in S.
    For a ring whose nonzero squares all lie in ``S`` the result is
    checked to be quadratically tuned.
    """
    S = S if isinstance(S, int) else to_mask(S)
    if not has(S, A.one):
        raise UsageError("S must contain 1")
    if has(S, A.zero):
        raise UsageError("S must not contain 0")
    for s in bits(S):
        for t in bits(S):
            if not has(S, A.mul[s][t]):
                raise UsageError(
                    f"S not multiplicative: {A.elems[s]} * {A.elems[t]} = "
                    f"{A.elems[A.mul[s][t]]}"
                )
    roots = _marshall_classes(A, S)
    reps = sorted(set(roots))
    pos = {r: i for i, r in enumerate(reps)}
    cls = [pos[r] for r in roots]
    m = len(reps)
    scaled = [[A.mul[a][s] for s in bits(S)] for a in range(A.n)]
    add = []
    for a in reps:
        row = []
        for b in reps:
            reach = 0
            for aq in scaled[a]:
                for br in scaled[b]:
                    reach |= A.add[aq][br]
            row.append(to_mask(cls[x] for x in reps if any(has(reach, xp) for xp in scaled[x])))
        add.append(tuple(row))
    M = FiniteMultiring(
        elems=A.names(reps),
        add=tuple(add),
        mul=tuple(tuple(cls[A.mul[a][b]] for b in reps) for a in reps),
        neg=tuple(cls[A.neg[a]] for a in reps),
        zero=cls[A.zero],
        one=cls[A.one],
        name=f"{A.name}/m" if A.name else "",
    )
    proj = StructMorphism(A, M, tuple(cls))
    is_ring = all(A.add[a][b] & (A.add[a][b] - 1) == 0 for a in range(A.n) for b in range(A.n))
    squares_in_S = all(has(S | (1 << A.zero), A.sq(a)) for a in range(A.n))
    if is_ring and squares_in_S:
        report = check_qt(M)
        if not report:
            raise ConstructionError(f"quotient is not quadratically tuned:\n{report}")
    return M, proj


def z_sign_quotient(bound: int) -> FiniteMultiring:
    """Marshall quotient of Z by the positive sums of squares, truncated.

    Carrier: integers in ``[-bound, bound]`` where ``a ~ b`` iff
    ``as = bt`` for ``s, t`` in ``S = {1..bound}`` (every positive integer
    is a sum of squares) with ``|as| <= bound**2``.  Sums are decided by
    the witness search ``xp = aq + br`` over ``p, q, r`` in S.
    """
    if bound < 1:
        raise UsageError("bound must be positive")
    ints = list(range(-bound, bound + 1))
    S = range(1, bound + 1)
    lim = bound * bound
    parent = {a: a for a in ints}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    orbit = {a: {a * s for s in S if abs(a * s) <= lim} for a in ints}
    for a in ints:
        for b in ints:
            if a < b and orbit[a] & orbit[b]:
                ra, rb = find(a), find(b)
                if ra != rb:
                    # keep the representative of least absolute value
                    keep, drop = sorted((ra, rb), key=lambda v: (abs(v), -v))
                    parent[drop] = keep
    reps = sorted({find(a) for a in ints})
    pos = {r: i for i, r in enumerate(reps)}
    members = {r: [a for a in ints if find(a) == r] for r in reps}

    def cls_of(value):
        for r in reps:
            for a in members[r]:
                if any(value * s == a * t for s in S for t in S):
                    return pos[r]
        raise ConstructionError(f"no class within bound for {value}")

    def plus(a, b):
        sums = {a * q + b * r for q in S for r in S}
        return {pos[x] for x in reps if any(x * p in sums for p in S)}

    add = [[plus(a, b) for b in reps] for a in reps]
    if any(not cell for row in add for cell in row):
        raise ConstructionError(f"bound {bound} too small for the witness search")
    return FiniteMultiring.from_tables(
        [str(r) for r in reps],
        add,
        [[cls_of(a * b) for b in reps] for a in reps],
        [cls_of(-a) for a in reps],
        pos[find(0)],
        pos[find(1)],
        name=f"Zsign[{bound}]",
    )


def z_sign_class_count(bound: int) -> int:
    """Number of classes of the truncated relation (no addition needed)."""
    ints = list(range(-bound, bound + 1))
    lim = bound * bound
    orbit = {a: {a * s for s in range(1, bound + 1) if abs(a * s) <= lim} for a in ints}
    classes: list[set] = []
    for a in ints:
        merged = [c for c in classes if any(orbit[a] & orbit[b] for b in c)]
        new = {a}.union(*merged)
        classes = [c for c in classes if c not in merged] + [new]
    return len(classes)


def g_T(A: FiniteMultiring, T: PreorderSubset | None = None):
    """Real semigroup of the sign functions ``a-bar`` on ``X_T``.

    Returns ``(G, phi)``: ``phi`` maps the Marshall quotient by
    ``T \\ {0}`` onto the multiring of ``G``, and is ``None`` (with a
    warning) when ``T \\ {0}`` is not multiplicative.
    """
    from .bridges import semigroup_sum_table

    if T is None:
        T = sums_of_squares_preorder(A)
    points = restricted_sper(A, T)
    if not points:
        warnings.warn("X_T is empty; G_T degenerates to one element", stacklevel=2)
    vectors = _signature_vectors(A, points)
    carrier, cls = _classes(vectors)
    m = len(carrier)
    rep = [cls.index(i) for i in range(m)]
    lookup = {v: i for i, v in enumerate(carrier)}

    def pointwise(u, v):
        return lookup[tuple(x * y for x, y in zip(u, v))]

    D = []
    for u in carrier:
        row = []
        for v in carrier:
            row.append(to_mask(
                k for k, w in enumerate(carrier)
                if all(a * c > 0 or b * c > 0 or c == 0 for a, b, c in zip(u, v, w))
            ))
        D.append(tuple(row))
    G = RealSemigroupData(
        elems=A.names(rep),
        mul=tuple(tuple(pointwise(u, v) for v in carrier) for u in carrier),
        one=cls[A.one],
        zero=cls[A.zero],
        minus_one=cls[A.minus_one],
        rel=tuple(D),
        presentation="RS",
        name=f"G_T({A.name})" if A.name else "G_T",
    )
    S = T.members & ~(1 << A.zero)
    try:
        M, proj = marshall_quotient(A, S)
    except UsageError as exc:
        warnings.warn(f"no Marshall quotient for T \\ {{0}}: {exc}", stacklevel=2)
        return G, None
    target = semigroup_sum_table(G)
    phi_map = [None] * M.n
    for a in range(A.n):
        q = proj.map[a]
        if phi_map[q] is None:
            phi_map[q] = cls[a]
        elif phi_map[q] != cls[a]:
            raise ConstructionError("a-bar is not constant on Marshall classes")
    phi = StructMorphism(M, target, tuple(phi_map))
    if not is_morphism(phi) or set(phi.map) != set(range(G.n)):
        raise ConstructionError("induced map is not a surjective multiring morphism")
    return G, phi

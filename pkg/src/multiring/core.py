"""Finite carriers, derived representation relations and morphisms.

Elements are identified by their index into ``elems``; names only matter
for I/O.  Subsets of a carrier are int bitmasks (bit ``i`` set means
element ``i`` is a member), which keeps unions and subset tests cheap in
the exhaustive checkers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence


class UsageError(ValueError):
    """Invalid arguments: bad indices, mismatched kinds, malformed tables."""


class RejectedInput(ValueError):
    """A construction refused an input that fails its axiom profile."""

    def __init__(self, message: str, report: "Report | None" = None):
        super().__init__(message)
        self.report = report


class ConstructionError(RuntimeError):
    """A construction's own postcondition check failed."""


# -- bitmask helpers ---------------------------------------------------------

def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def has(mask: int, i: int) -> bool:
    return (mask >> i) & 1 == 1


def image_mask(mask: int, fn: Sequence[int]) -> int:
    return to_mask(fn[i] for i in bits(mask))


# -- structures --------------------------------------------------------------

def _check_names(elems: Sequence[str], what: str = "element") -> None:
    if len(elems) < 1:
        raise UsageError(f"need at least one {what}")
    seen = set()
    for name in elems:
        if name in seen:
            raise UsageError(f"duplicate {what} name {name!r}")
        seen.add(name)


def _check_index(i: int, n: int, where: str) -> None:
    if not (isinstance(i, int) and 0 <= i < n):
        raise UsageError(f"{where}: index {i!r} out of range [0, {n})")


def _check_square(table, n: int, where: str) -> None:
    if len(table) != n or any(len(row) != n for row in table):
        raise UsageError(f"{where}: table must be {n}x{n}")


@dataclass(frozen=True)
class FiniteMultiring:
    """Finite carrier with set-valued addition and single-valued product.

    ``add[a][b]`` is the bitmask of ``a + b``.  No algebraic law is
    assumed here; the axiom checkers decide what the tables satisfy.
    """

    elems: tuple[str, ...]
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    neg: tuple[int, ...]
    zero: int
    one: int
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = len(self.elems)
        _check_names(self.elems)
        _check_square(self.add, n, "add")
        _check_square(self.mul, n, "mul")
        full = (1 << n) - 1
        for a in range(n):
            for b in range(n):
                cell = self.add[a][b]
                if cell == 0:
                    raise UsageError(f"add[{a}][{b}]: empty sum")
                if cell & ~full:
                    raise UsageError(f"add[{a}][{b}]: member out of range")
                _check_index(self.mul[a][b], n, f"mul[{a}][{b}]")
        if len(self.neg) != n:
            raise UsageError(f"neg: expected {n} entries")
        for a in range(n):
            _check_index(self.neg[a], n, f"neg[{a}]")
        _check_index(self.zero, n, "zero")
        _check_index(self.one, n, "one")

    @classmethod
    def from_tables(cls, elems, add, mul, neg, zero, one, name=""):
        """Build from an addition table of index collections."""
        return cls(
            elems=tuple(elems),
            add=tuple(tuple(to_mask(cell) for cell in row) for row in add),
            mul=tuple(tuple(row) for row in mul),
            neg=tuple(neg),
            zero=zero,
            one=one,
            name=name,
        )

    def __len__(self):
        return len(self.elems)

    @property
    def n(self) -> int:
        return len(self.elems)

    @property
    def minus_one(self) -> int:
        return self.neg[self.one]

    def index(self, name: str) -> int:
        try:
            return self.elems.index(name)
        except ValueError:
            raise UsageError(f"unknown element {name!r}") from None

    def names(self, indices: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.elems[i] for i in indices)

    def sq(self, a: int) -> int:
        return self.mul[a][a]

    def mul_set(self, a: int, mask: int) -> int:
        """``a`` times every member of ``mask``."""
        row = self.mul[a]
        return to_mask(row[x] for x in bits(mask))

    def add_set(self, mask: int, b: int) -> int:
        """Union of ``x + b`` over members ``x`` of ``mask``."""
        out = 0
        for x in bits(mask):
            out |= self.add[x][b]
        return out

    @cached_property
    def D(self) -> tuple[tuple[int, ...], ...]:
        """``D[a][b]`` = {d : d in d^2 a + d^2 b}."""
        n, mul, add = self.n, self.mul, self.add
        sq = [mul[d][d] for d in range(n)]
        return tuple(
            tuple(
                to_mask(d for d in range(n) if has(add[mul[sq[d]][a]][mul[sq[d]][b]], d))
                for b in range(n)
            )
            for a in range(n)
        )

    @cached_property
    def Dt(self) -> tuple[tuple[int, ...], ...]:
        return _transversal(self.n, self.D, self.neg)


def _transversal(n, D, neg) -> tuple[tuple[int, ...], ...]:
    # d in Dt(a,b)  iff  d in D(a,b), -a in D(-d,b), -b in D(a,-d)
    return tuple(
        tuple(
            to_mask(
                d
                for d in bits(D[a][b])
                if has(D[neg[d]][b], neg[a]) and has(D[a][neg[d]], neg[b])
            )
            for b in range(n)
        )
        for a in range(n)
    )


PRESENTATIONS = ("RS", "DT")


@dataclass(frozen=True)
class RealSemigroupData:
    """Ternary semigroup with a primitive ternary relation.

    ``rel[a][b]`` is the bitmask of elements represented by ``(a, b)``.
    In the ``"RS"`` presentation ``rel`` is D and Dt is derived through the
    transversality formula; in ``"DT"`` it is Dt and
    ``D(a, b) = {c : c in Dt(c^2 a, c^2 b)}``.
    """

    elems: tuple[str, ...]
    mul: tuple[tuple[int, ...], ...]
    one: int
    zero: int
    minus_one: int
    rel: tuple[tuple[int, ...], ...]
    presentation: str = "RS"
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = len(self.elems)
        _check_names(self.elems)
        _check_square(self.mul, n, "mul")
        _check_square(self.rel, n, "rel")
        full = (1 << n) - 1
        for a in range(n):
            for b in range(n):
                _check_index(self.mul[a][b], n, f"mul[{a}][{b}]")
                if self.rel[a][b] & ~full:
                    raise UsageError(f"rel[{a}][{b}]: member out of range")
        for attr in ("one", "zero", "minus_one"):
            _check_index(getattr(self, attr), n, attr)
        if self.presentation not in PRESENTATIONS:
            raise UsageError(f"unknown presentation {self.presentation!r}")

    def __len__(self):
        return len(self.elems)

    @property
    def n(self) -> int:
        return len(self.elems)

    def index(self, name: str) -> int:
        try:
            return self.elems.index(name)
        except ValueError:
            raise UsageError(f"unknown element {name!r}") from None

    def names(self, indices: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.elems[i] for i in indices)

    def sq(self, a: int) -> int:
        return self.mul[a][a]

    @cached_property
    def neg(self) -> tuple[int, ...]:
        row = self.mul[self.minus_one]
        return tuple(row[x] for x in range(self.n))

    @cached_property
    def D(self) -> tuple[tuple[int, ...], ...]:
        if self.presentation == "RS":
            return self.rel
        n, mul, dt = self.n, self.mul, self.rel
        return tuple(
            tuple(
                to_mask(c for c in range(n) if has(dt[mul[mul[c][c]][a]][mul[mul[c][c]][b]], c))
                for b in range(n)
            )
            for a in range(n)
        )

    @cached_property
    def Dt(self) -> tuple[tuple[int, ...], ...]:
        if self.presentation == "DT":
            return self.rel
        return _transversal(self.n, self.D, self.neg)

    def to_presentation(self, presentation: str) -> "RealSemigroupData":
        """Same structure with the other relation taken as primitive."""
        if presentation not in PRESENTATIONS:
            raise UsageError(f"unknown presentation {presentation!r}")
        if presentation == self.presentation:
            return self
        rel = self.Dt if presentation == "DT" else self.D
        return RealSemigroupData(
            self.elems, self.mul, self.one, self.zero, self.minus_one, rel,
            presentation, name=self.name,
        )


SIGNS = (-1, 0, 1)


def sign_name(vector: Sequence[int]) -> str:
    return "".join({1: "+", 0: "0", -1: "-"}[v] for v in vector)


@dataclass(frozen=True)
class ARSData:
    """Point set X and a set G of sign functions X -> {-1, 0, 1}.

    ``funcs`` holds one sign vector per function, indexed like ``points``.
    """

    points: tuple[str, ...]
    funcs: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        _check_names(self.points, "point")
        if len(set(self.funcs)) != len(self.funcs):
            raise UsageError("duplicate sign function")
        for i, f in enumerate(self.funcs):
            if len(f) != len(self.points):
                raise UsageError(f"funcs[{i}]: expected {len(self.points)} entries")
            if any(v not in SIGNS for v in f):
                raise UsageError(f"funcs[{i}]: entries must be -1, 0 or 1")

    def __len__(self):
        return len(self.funcs)

    @property
    def n(self) -> int:
        return len(self.funcs)

    @property
    def elems(self) -> tuple[str, ...]:
        return tuple(sign_name(f) for f in self.funcs)

    def names(self, indices: Iterable[int]) -> tuple[str, ...]:
        return tuple(sign_name(self.funcs[i]) for i in indices)

    def find(self, vector: Sequence[int]) -> int | None:
        return self._lookup.get(tuple(vector))

    @cached_property
    def _lookup(self) -> dict[tuple[int, ...], int]:
        return {f: i for i, f in enumerate(self.funcs)}

    def _value_sets(self, transversal: bool) -> tuple[tuple[int, ...], ...]:
        funcs = self.funcs
        out = []
        for a in funcs:
            row = []
            for b in funcs:
                m = 0
                for k, c in enumerate(funcs):
                    for ax, bx, cx in zip(a, b, c):
                        if ax * cx > 0 or bx * cx > 0:
                            continue
                        if cx == 0 and (not transversal or bx == -ax):
                            continue
                        break
                    else:
                        m |= 1 << k
                row.append(m)
            out.append(tuple(row))
        return tuple(out)

    @cached_property
    def D(self) -> tuple[tuple[int, ...], ...]:
        return self._value_sets(False)

    @cached_property
    def Dt(self) -> tuple[tuple[int, ...], ...]:
        return self._value_sets(True)


# -- value-set operations ----------------------------------------------------

def _valid(A, *idx: int) -> None:
    for i in idx:
        _check_index(i, A.n, "element")


def plus_set(A: FiniteMultiring, a: int, b: int) -> frozenset[int]:
    _valid(A, a, b)
    return frozenset(bits(A.add[a][b]))


def rep_D(A: FiniteMultiring, a: int, b: int) -> frozenset[int]:
    _valid(A, a, b)
    return frozenset(bits(A.D[a][b]))


def rep_Dt(A: FiniteMultiring, a: int, b: int) -> frozenset[int]:
    _valid(A, a, b)
    return frozenset(bits(A.Dt[a][b]))


def rs_rep_Dt(G: RealSemigroupData, a: int, b: int) -> frozenset[int]:
    _valid(G, a, b)
    return frozenset(bits(G.Dt[a][b]))


# -- morphisms ---------------------------------------------------------------

KINDS = {
    FiniteMultiring: "multiring-morphism",
    RealSemigroupData: "semigroup-with-D-morphism",
    ARSData: "ars-map",
}


@dataclass(frozen=True)
class StructMorphism:
    """Total map between carriers (points, for ``ars-map``)."""

    src: object
    dst: object
    map: tuple[int, ...]
    kind: str = ""

    def __post_init__(self):
        kind = self.kind or KINDS.get(type(self.src), "")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "map", tuple(self.map))
        if KINDS.get(type(self.src)) != kind or KINDS.get(type(self.dst)) != kind:
            raise UsageError(f"kind {kind!r} does not match source/target types")
        ns, nd = _carrier_size(self.src), _carrier_size(self.dst)
        if len(self.map) != ns:
            raise UsageError(f"map has {len(self.map)} entries, source has {ns}")
        for i, v in enumerate(self.map):
            _check_index(v, nd, f"map[{i}]")

    def __call__(self, a: int) -> int:
        return self.map[a]


def _carrier_size(s) -> int:
    return len(s.points) if isinstance(s, ARSData) else s.n


def _constants(s) -> tuple[int, ...]:
    return (s.zero, s.one, s.minus_one)


def _relation(s):
    """Preserved ternary relation: addition, or D for semigroups."""
    return s.add if isinstance(s, FiniteMultiring) else s.D


def _preserves(f, src, dst, rel_s, rel_d) -> bool:
    n = src.n
    for a in range(n):
        fa = f[a]
        for b in range(n):
            target = rel_d[fa][f[b]]
            for c in bits(rel_s[a][b]):
                if not has(target, f[c]):
                    return False
    return True


def _reflects(f, src, dst, rel_s, rel_d) -> bool:
    # assumes f bijective
    n = src.n
    return all(
        image_mask(rel_s[a][b], f) == rel_d[f[a]][f[b]]
        for a in range(n) for b in range(n)
    )


def _ars_pullback(f: StructMorphism) -> list[int | None]:
    src, dst = f.src, f.dst
    return [src.find(tuple(h[f.map[x]] for x in range(len(src.points)))) for h in dst.funcs]


def is_morphism(f: StructMorphism) -> bool:
    """Check the morphism laws appropriate to ``f.kind``."""
    src, dst, m = f.src, f.dst, f.map
    if f.kind == "ars-map":
        return all(i is not None for i in _ars_pullback(f))
    if any(m[c] != d for c, d in zip(_constants(src), _constants(dst))):
        return False
    n = src.n
    for a in range(n):
        if m[src.neg[a]] != dst.neg[m[a]]:
            return False
        for b in range(n):
            if m[src.mul[a][b]] != dst.mul[m[a]][m[b]]:
                return False
    return _preserves(m, src, dst, _relation(src), _relation(dst))


def is_strong_embedding(f: StructMorphism) -> bool:
    """Injective morphism that also reflects sum membership."""
    if f.kind != "multiring-morphism":
        raise UsageError("strong embeddings are defined for multirings only")
    m, src, dst = f.map, f.src, f.dst
    if len(set(m)) != len(m) or not is_morphism(f):
        return False
    n = src.n
    for a in range(n):
        for b in range(n):
            target = dst.add[m[a]][m[b]]
            for c in range(n):
                if has(target, m[c]) and not has(src.add[a][b], c):
                    return False
    return True


def is_isomorphism(f: StructMorphism) -> bool:
    if f.kind == "ars-map":
        if len(set(f.map)) != len(f.map) or len(f.src.points) != len(f.dst.points):
            return False
        pulled = _ars_pullback(f)
        return None not in pulled and sorted(pulled) == list(range(f.src.n))
    m = f.map
    if f.src.n != f.dst.n or len(set(m)) != len(m) or not is_morphism(f):
        return False
    if isinstance(f.src, FiniteMultiring):
        return _reflects(m, f.src, f.dst, f.src.add, f.dst.add)
    return (_reflects(m, f.src, f.dst, f.src.D, f.dst.D)
            and _reflects(m, f.src, f.dst, f.src.Dt, f.dst.Dt))


def enumerate_morphisms(A, B, mode: str = "all") -> list[StructMorphism]:
    """All morphisms ``A -> B`` (``mode="all"``) or all isomorphisms.

    Backtracking over source elements in index order: constants are fixed
    first, every assignment propagates through negation and products with
    already-assigned elements, and relation membership is checked as soon
    as all three elements of a triple are mapped.  Output is in
    lexicographic order of the map tuples.
    """
    if mode not in ("all", "iso"):
        raise UsageError(f"unknown mode {mode!r}")
    if type(A) is not type(B):
        raise UsageError("source and target must be the same kind of structure")
    if isinstance(A, ARSData):
        return _enumerate_ars_maps(A, B, mode)
    iso = mode == "iso"
    if iso and A.n != B.n:
        return []
    n, nd = A.n, B.n
    mul_s, mul_d, neg_s, neg_d = A.mul, B.mul, A.neg, B.neg
    rel_s, rel_d = _relation(A), _relation(B)
    # members[c] lists pairs (a, b) with c in rel(a, b)
    members = [[] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            for c in bits(rel_s[a][b]):
                members[c].append((a, b))

    f = [-1] * n
    used = [0] * nd
    assigned: list[int] = []
    results: list[tuple[int, ...]] = []

    def consistent(u: int) -> bool:
        fu = f[u]
        for b in assigned:
            fb = f[b]
            for c in bits(rel_s[u][b]):
                if f[c] != -1 and not has(rel_d[fu][fb], f[c]):
                    return False
            for c in bits(rel_s[b][u]):
                if f[c] != -1 and not has(rel_d[fb][fu], f[c]):
                    return False
        for a, b in members[u]:
            if f[a] != -1 and f[b] != -1 and not has(rel_d[f[a]][f[b]], fu):
                return False
        return True

    def assign(a0: int, v0: int, trail: list[int]) -> bool:
        stack = [(a0, v0)]
        fresh = []
        while stack:
            a, v = stack.pop()
            if f[a] != -1:
                if f[a] != v:
                    return False
                continue
            if iso and used[v]:
                return False
            f[a] = v
            used[v] += 1
            trail.append(a)
            fresh.append(a)
            stack.append((neg_s[a], neg_d[v]))
            for b in assigned:
                stack.append((mul_s[a][b], mul_d[v][f[b]]))
                stack.append((mul_s[b][a], mul_d[f[b]][v]))
            stack.append((mul_s[a][a], mul_d[v][v]))
            assigned.append(a)
        return all(consistent(u) for u in fresh)

    def undo(trail: list[int]) -> None:
        for a in reversed(trail):
            used[f[a]] -= 1
            f[a] = -1
            assigned.remove(a)

    def search(start: int) -> None:
        i = start
        while i < n and f[i] != -1:
            i += 1
        if i == n:
            results.append(tuple(f))
            return
        for v in range(nd):
            trail: list[int] = []
            if assign(i, v, trail):
                search(i + 1)
            undo(trail)

    root: list[int] = []
    if all(assign(c, d, root) for c, d in zip(_constants(A), _constants(B))):
        search(0)
    out = [StructMorphism(A, B, m) for m in sorted(results)]
    if iso:
        out = [g for g in out if is_isomorphism(g)]
    return out


def _enumerate_ars_maps(S: ARSData, T: ARSData, mode: str) -> list[StructMorphism]:
    from itertools import permutations, product

    k, m = len(S.points), len(T.points)
    if mode == "iso":
        if k != m or S.n != T.n:
            return []
        candidates = permutations(range(m))
    else:
        candidates = product(range(m), repeat=k)
    out = []
    for cand in candidates:
        g = StructMorphism(S, T, cand)
        if is_isomorphism(g) if mode == "iso" else is_morphism(g):
            out.append(g)
    return out


# -- reports -----------------------------------------------------------------

@dataclass(frozen=True)
class ReportEntry:
    axiom: str
    passed: bool
    counterexample: tuple[str, ...] = ()

    def __str__(self):
        verdict = "pass" if self.passed else "FAIL"
        line = f"{self.axiom:<24} {verdict}"
        if not self.passed and self.counterexample:
            line += "  (" + ", ".join(self.counterexample) + ")"
        return line


@dataclass(frozen=True)
class Report:
    """Axiom verdicts, sorted by axiom id."""

    entries: tuple[ReportEntry, ...]
    subject: str = ""

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(sorted(self.entries, key=lambda e: e.axiom)))

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def __bool__(self):
        return self.passed

    def failures(self) -> list[ReportEntry]:
        return [e for e in self.entries if not e.passed]

    def failed_axioms(self) -> list[str]:
        return [e.axiom for e in self.entries if not e.passed]

    def entry(self, axiom: str) -> ReportEntry:
        for e in self.entries:
            if e.axiom == axiom:
                return e
        raise KeyError(axiom)

    def __contains__(self, axiom: str) -> bool:
        return any(e.axiom == axiom for e in self.entries)

    def __str__(self):
        head = f"report for {self.subject}" if self.subject else "report"
        return "\n".join([head] + [f"  {e}" for e in self.entries])

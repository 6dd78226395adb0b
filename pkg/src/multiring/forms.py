"""Diagonal forms over a fixed multiring and their strong/weak isometry.

Isometry of dimension 1 is equality and of dimension 2 compares the
products and the sum sets (equal sets for ``strong``, intersecting sets
for ``weak``).  Dimension ``n >= 3`` is decided by searching witnesses
``x, y, z_3..z_n`` with

    <a1, x> ~ <b1, y>,   <a2..an> ~ <x, z3..zn>,   <b2..bn> ~ <y, z3..zn>.

:func:`iso_decide` searches top-down with a memo; :func:`iso_oracle`
builds the whole relation bottom-up with numpy and shares no code with it.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from itertools import permutations, product
from typing import Sequence

import numpy as np

from .core import FiniteMultiring, UsageError

MODES = ("strong", "weak")


@dataclass(frozen=True)
class QForm:
    ambient: FiniteMultiring
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if not self.entries:
            raise UsageError("a form needs at least one entry")
        for a in self.entries:
            if not (isinstance(a, int) and 0 <= a < self.ambient.n):
                raise UsageError(f"form entry {a!r} out of range")

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __str__(self):
        return "<" + ", ".join(self.ambient.names(self.entries)) + ">"


def parse_form(A: FiniteMultiring, text: str) -> QForm:
    """``"1,-1"`` -> ``<1, -1>``."""
    parts = [p.strip() for p in text.split(",")]
    if not text.strip() or any(not p for p in parts):
        raise UsageError(f"malformed form {text!r}")
    return QForm(A, tuple(A.index(p) for p in parts))


def format_form(phi: QForm) -> str:
    return ",".join(phi.ambient.names(phi.entries))


def _same_ambient(phi: QForm, psi: QForm) -> None:
    if phi.ambient is not psi.ambient and phi.ambient != psi.ambient:
        raise UsageError("forms live over different multirings")


def form_disc(phi: QForm) -> int:
    A = phi.ambient
    d = phi.entries[0]
    for a in phi.entries[1:]:
        d = A.mul[d][a]
    return d


def form_scale(a: int, phi: QForm) -> QForm:
    return QForm(phi.ambient, tuple(phi.ambient.mul[a][x] for x in phi.entries))


def form_sum(phi: QForm, psi: QForm) -> QForm:
    _same_ambient(phi, psi)
    return QForm(phi.ambient, phi.entries + psi.entries)


def form_tensor(phi: QForm, psi: QForm) -> QForm:
    """Products ``a_i b_j`` with ``i`` outer and ``j`` inner."""
    _same_ambient(phi, psi)
    mul = phi.ambient.mul
    return QForm(phi.ambient, tuple(mul[a][b] for a in phi.entries for b in psi.entries))


def form_permute(phi: QForm, sigma: Sequence[int]) -> QForm:
    """``<a_sigma(0), ..., a_sigma(n-1)>`` for a 0-based permutation."""
    if sorted(sigma) != list(range(phi.dim)):
        raise UsageError(f"{tuple(sigma)} is not a permutation of {phi.dim} places")
    return QForm(phi.ambient, tuple(phi.entries[i] for i in sigma))


# -- witnesses ---------------------------------------------------------------

@dataclass(frozen=True)
class IsoWitness:
    """Proof tree of an isometry.

    Leaves (dimension <= 2) carry no witness; inner nodes carry ``x``,
    ``y``, ``zs`` and the three sub-proofs in clause order.
    """

    mode: str
    lhs: tuple[int, ...]
    rhs: tuple[int, ...]
    x: int | None = None
    y: int | None = None
    zs: tuple[int, ...] = ()
    children: tuple["IsoWitness", ...] = ()

    def render(self, A: FiniteMultiring, indent: int = 0) -> str:
        pad = "  " * indent
        rel = "=s" if self.mode == "strong" else "=w"
        line = f"{pad}<{', '.join(A.names(self.lhs))}> {rel} <{', '.join(A.names(self.rhs))}>"
        if not self.children:
            return line + "  [base]"
        zs = ", ".join(A.names(self.zs))
        head = f"{line}  via x={A.elems[self.x]}, y={A.elems[self.y]}, z=({zs})"
        return "\n".join([head] + [c.render(A, indent + 1) for c in self.children])


def _base(A: FiniteMultiring, mode: str, l: tuple, r: tuple) -> bool:
    if len(l) == 1:
        return l == r
    a, b = l
    c, d = r
    if A.mul[a][b] != A.mul[c][d]:
        return False
    if mode == "strong":
        return A.add[a][b] == A.add[c][d]
    return A.add[a][b] & A.add[c][d] != 0


def replay(A: FiniteMultiring, w: IsoWitness) -> bool:
    """Re-validate every base fact and the shape of every inductive step."""
    n = len(w.lhs)
    if n != len(w.rhs):
        return False
    if n <= 2:
        return not w.children and _base(A, w.mode, w.lhs, w.rhs)
    if len(w.children) != 3 or len(w.zs) != n - 2:
        return False
    c1, c2, c3 = w.children
    expected = [
        ((w.lhs[0], w.x), (w.rhs[0], w.y)),
        (w.lhs[1:], (w.x,) + w.zs),
        (w.rhs[1:], (w.y,) + w.zs),
    ]
    for child, (l, r) in zip(w.children, expected):
        if child.mode != w.mode or child.lhs != l or child.rhs != r:
            return False
    return all(replay(A, c) for c in (c1, c2, c3))


class _Decider:
    """Memoized isometry search over one ambient multiring.

    The memo maps ``(mode, unordered pair)`` to a boolean; inserting the
    same value twice is harmless.
    """

    def __init__(self, A: FiniteMultiring):
        self.A = A
        self.memo: dict = {}

    def holds(self, mode: str, l: tuple, r: tuple) -> bool:
        key = (mode, l, r) if l <= r else (mode, r, l)
        hit = self.memo.get(key)
        if hit is None:
            hit = self._search(mode, l, r) is not None
            self.memo[key] = hit
        return hit

    def _search(self, mode, l, r):
        """First witness ``(x, y, zs)`` in lexicographic order, or None."""
        n = len(l)
        if n <= 2:
            return () if _base(self.A, mode, l, r) else None
        rng = range(self.A.n)
        for x, y in product(rng, repeat=2):
            if not self.holds(mode, (l[0], x), (r[0], y)):
                continue
            for zs in product(rng, repeat=n - 2):
                if self.holds(mode, l[1:], (x,) + zs) and self.holds(mode, r[1:], (y,) + zs):
                    return (x, y, zs)
        return None

    def witness(self, mode, l, r) -> IsoWitness:
        found = self._search(mode, l, r)
        if len(l) <= 2:
            return IsoWitness(mode, l, r)
        x, y, zs = found
        kids = (
            self.witness(mode, (l[0], x), (r[0], y)),
            self.witness(mode, l[1:], (x,) + zs),
            self.witness(mode, r[1:], (y,) + zs),
        )
        return IsoWitness(mode, l, r, x, y, zs, kids)


_deciders: "weakref.WeakKeyDictionary[FiniteMultiring, _Decider]" = weakref.WeakKeyDictionary()


def _decider(A: FiniteMultiring) -> _Decider:
    d = _deciders.get(A)
    if d is None:
        d = _deciders.setdefault(A, _Decider(A))
    return d


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise UsageError(f"unknown isometry mode {mode!r}")


def iso_decide(phi: QForm, psi: QForm, mode: str = "strong"):
    """Return ``(True, witness)`` or ``(False, None)``.

    Forms of different dimensions are never isometric.
    """
    _check_mode(mode)
    _same_ambient(phi, psi)
    if phi.dim != psi.dim:
        return False, None
    d = _decider(phi.ambient)
    if not d.holds(mode, phi.entries, psi.entries):
        return False, None
    return True, d.witness(mode, phi.entries, psi.entries)


def failure_reason(phi: QForm, psi: QForm, mode: str = "strong") -> str:
    """Short explanation for a negative decision."""
    if phi.dim != psi.dim:
        return "dimension mismatch"
    if phi.dim == 1:
        return "entries differ"
    if phi.dim == 2:
        A = phi.ambient
        if form_disc(phi) != form_disc(psi):
            return "disc mismatch"
        return "sum sets differ" if mode == "strong" else "sum sets disjoint"
    if mode == "strong" and form_disc(phi) != form_disc(psi):
        return "disc mismatch"
    return "no witness"


DEFAULT_PAIR_LIMIT = 2_000_000


def iso_relation(A: FiniteMultiring, dim: int, mode: str, limit: int = DEFAULT_PAIR_LIMIT):
    """Boolean array ``R[i, j]`` over flat indices of ``dim``-tuples.

    Tuples are flattened in ``itertools.product`` order.  Built bottom-up:
    dimension 2 from the tables, then each dimension from the previous one
    by scanning all witness tuples at once.
    """
    _check_mode(mode)
    n = A.n
    pairs = n ** (2 * dim)
    if pairs > limit:
        raise MemoryError(f"{pairs} form pairs exceed the limit of {limit}")
    if dim == 1:
        return np.eye(n, dtype=bool)
    add = np.array(A.add, dtype=object)
    mul = np.array(A.mul)
    prod2 = mul.reshape(n * n)
    sums = add.reshape(n * n)
    same_prod = prod2[:, None] == prod2[None, :]
    if mode == "strong":
        same_sum = sums[:, None] == sums[None, :]
    else:
        same_sum = (sums[:, None] & sums[None, :]) != 0
    R2 = (same_prod & same_sum.astype(bool))
    if dim == 2:
        return R2
    R2_4 = R2.reshape(n, n, n, n)  # [a1, x, b1, y]
    prev = R2
    for k in range(3, dim + 1):
        m = n ** (k - 1)
        prev_v = prev.reshape(m, n, n ** (k - 2))  # [tail, x, zs]
        cur = np.zeros((n, m, n, m), dtype=bool)  # [a1, a_tail, b1, b_tail]
        for x in range(n):
            for y in range(n):
                head = R2_4[:, x, :, y]  # [a1, b1]
                if not head.any():
                    continue
                # tails compatible with (x, zs) and (y, zs), sharing zs
                left = prev_v[:, x, :]  # [a_tail, zs]
                right = prev_v[:, y, :]  # [b_tail, zs]
                tails = (left.astype(np.uint32) @ right.T.astype(np.uint32)) > 0
                cur |= head[:, None, :, None] & tails[None, :, None, :]
        prev = cur.reshape(n * m, n * m)
    return prev


def iso_oracle(phi: QForm, psi: QForm, mode: str = "strong",
               limit: int = DEFAULT_PAIR_LIMIT) -> bool:
    _check_mode(mode)
    _same_ambient(phi, psi)
    if phi.dim != psi.dim:
        return False
    A = phi.ambient
    R = iso_relation(A, phi.dim, mode, limit)
    return bool(R[_flat(A.n, phi.entries), _flat(A.n, psi.entries)])


def _flat(n: int, entries) -> int:
    i = 0
    for a in entries:
        i = i * n + a
    return i


def all_forms(A: FiniteMultiring, dim: int):
    return [QForm(A, t) for t in product(range(A.n), repeat=dim)]


def permutation_failures(A: FiniteMultiring, dim: int, mode: str = "weak") -> list:
    """Pairs ``(phi, sigma)`` with ``phi`` not isometric to its permutation."""
    out = []
    for phi in all_forms(A, dim):
        for sigma in permutations(range(dim)):
            ok, _ = iso_decide(phi, form_permute(phi, sigma), mode)
            if not ok:
                out.append((phi, sigma))
    return out


def transitivity_violations(A: FiniteMultiring, dim: int, mode: str = "weak") -> list:
    """Triples ``(phi, psi, chi)`` with phi ~ psi ~ chi but not phi ~ chi."""
    R = iso_relation(A, dim, mode)
    forms = list(product(range(A.n), repeat=dim))
    viol = []
    # R o R minus R
    comp = (R.astype(np.uint32) @ R.astype(np.uint32)) > 0
    for i, k in zip(*np.nonzero(comp & ~R)):
        j = int(np.nonzero(R[i] & R[:, k])[0][0])
        viol.append(tuple(QForm(A, forms[t]) for t in (i, j, k)))
    return viol

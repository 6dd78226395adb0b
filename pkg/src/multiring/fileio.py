"""JSON structure files.

Three kinds share one layout: a ``kind`` tag, a ``name`` and explicit
tables.  Table cells name elements (an integer index is also accepted on
input); sets are written as arrays sorted in carrier order.

    multiring      elements, zero, one, neg, mul, add
    realsemigroup  elements, zero, one, minus_one, mul, presentation,
                   rel  (triples [c, a, b] meaning c in rel(a, b))
    ars            points, funcs  (one sign row per function)

Canonical output sorts the top-level keys and puts one table row per line,
so ``serialize(parse(text))`` is idempotent.
"""

from __future__ import annotations

import json
from pathlib import Path

from .core import (
    ARSData,
    FiniteMultiring,
    RealSemigroupData,
    UsageError,
    bits,
    to_mask,
)

KEYS = {
    "multiring": ("add", "elements", "kind", "mul", "name", "neg", "one", "zero"),
    "realsemigroup": (
        "elements", "kind", "minus_one", "mul", "name", "one", "presentation", "rel", "zero",
    ),
    "ars": ("funcs", "kind", "name", "points"),
}


class ParseError(UsageError):
    """Malformed structure file; ``where`` is a line:column or a field path."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


class _Reader:
    def __init__(self, doc: dict, elems: tuple[str, ...] | None = None):
        self.doc = doc
        self.elems = elems
        self.pos = {e: i for i, e in enumerate(elems)} if elems else {}

    def field(self, key: str):
        if key not in self.doc:
            raise ParseError(key, "missing key")
        return self.doc[key]

    def elem(self, value, where: str) -> int:
        n = len(self.elems)
        if isinstance(value, bool):
            raise ParseError(where, f"expected an element, got {value!r}")
        if isinstance(value, int):
            if not 0 <= value < n:
                raise ParseError(where, f"index {value} out of range 0..{n - 1}")
            return value
        if isinstance(value, str):
            if value not in self.pos:
                raise ParseError(where, f"unknown element {value!r}")
            return self.pos[value]
        raise ParseError(where, f"expected an element, got {value!r}")

    def row_list(self, key: str, length: int) -> list:
        v = self.field(key)
        if not isinstance(v, list) or len(v) != length:
            raise ParseError(key, f"expected a list of {length} entries")
        return v

    def table(self, key: str) -> tuple[tuple[int, ...], ...]:
        n = len(self.elems)
        rows = self.row_list(key, n)
        out = []
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != n:
                raise ParseError(f"{key}[{i}]", f"expected a row of {n} entries")
            out.append(tuple(self.elem(v, f"{key}[{i}][{j}]") for j, v in enumerate(row)))
        return tuple(out)


def _names(r: _Reader, key: str = "elements") -> tuple[str, ...]:
    v = r.field(key)
    if not isinstance(v, list) or not v:
        raise ParseError(key, "expected a nonempty list of names")
    seen = set()
    for i, e in enumerate(v):
        if not isinstance(e, str) or not e:
            raise ParseError(f"{key}[{i}]", "names must be nonempty strings")
        if e in seen:
            raise ParseError(f"{key}[{i}]", f"duplicate name {e!r}")
        seen.add(e)
    return tuple(v)


def _parse_multiring(doc: dict) -> FiniteMultiring:
    r = _Reader(doc)
    r = _Reader(doc, _names(r))
    n = len(r.elems)
    add_rows = r.row_list("add", n)
    add = []
    for i, row in enumerate(add_rows):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"add[{i}]", f"expected a row of {n} entries")
        cells = []
        for j, cell in enumerate(row):
            where = f"add[{i}][{j}]"
            if not isinstance(cell, list):
                raise ParseError(where, "expected a list of elements")
            if not cell:
                raise ParseError(where, "empty sum")
            cells.append(to_mask(r.elem(v, f"{where}[{k}]") for k, v in enumerate(cell)))
        add.append(tuple(cells))
    neg = tuple(r.elem(v, f"neg[{i}]") for i, v in enumerate(r.row_list("neg", n)))
    return FiniteMultiring(
        elems=r.elems,
        add=tuple(add),
        mul=r.table("mul"),
        neg=neg,
        zero=r.elem(r.field("zero"), "zero"),
        one=r.elem(r.field("one"), "one"),
        name=doc["name"],
    )


def _parse_semigroup(doc: dict) -> RealSemigroupData:
    r = _Reader(doc)
    r = _Reader(doc, _names(r))
    n = len(r.elems)
    triples = r.field("rel")
    if not isinstance(triples, list):
        raise ParseError("rel", "expected a list of [c, a, b] triples")
    rel = [[0] * n for _ in range(n)]
    for k, t in enumerate(triples):
        if not isinstance(t, list) or len(t) != 3:
            raise ParseError(f"rel[{k}]", "expected a triple [c, a, b]")
        c, a, b = (r.elem(v, f"rel[{k}][{i}]") for i, v in enumerate(t))
        rel[a][b] |= 1 << c
    pres = r.field("presentation")
    if pres not in ("RS", "DT"):
        raise ParseError("presentation", f"expected RS or DT, got {pres!r}")
    return RealSemigroupData(
        elems=r.elems,
        mul=r.table("mul"),
        one=r.elem(r.field("one"), "one"),
        zero=r.elem(r.field("zero"), "zero"),
        minus_one=r.elem(r.field("minus_one"), "minus_one"),
        rel=tuple(tuple(row) for row in rel),
        presentation=pres,
        name=doc["name"],
    )


def _parse_ars(doc: dict) -> ARSData:
    r = _Reader(doc)
    points = _names(r, "points")
    funcs = r.field("funcs")
    if not isinstance(funcs, list) or not funcs:
        raise ParseError("funcs", "expected a nonempty list of sign rows")
    rows, seen = [], set()
    for i, f in enumerate(funcs):
        where = f"funcs[{i}]"
        if not isinstance(f, list) or len(f) != len(points):
            raise ParseError(where, f"expected a row of {len(points)} signs")
        for j, v in enumerate(f):
            if isinstance(v, bool) or v not in (-1, 0, 1):
                raise ParseError(f"{where}[{j}]", f"sign {v!r} out of range -1..1")
        if tuple(f) in seen:
            raise ParseError(where, "duplicate sign function")
        seen.add(tuple(f))
        rows.append(tuple(f))
    return ARSData(points=points, funcs=tuple(rows), name=doc["name"])


_PARSERS = {"multiring": _parse_multiring, "realsemigroup": _parse_semigroup, "ars": _parse_ars}


def parse_structure(text: bytes | str):
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(f"byte {e.start}", "invalid UTF-8") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}, column {e.colno}", e.msg) from None
    if not isinstance(doc, dict):
        raise ParseError("line 1", "top level must be an object")
    if "kind" not in doc:
        raise ParseError("kind", "missing key")
    kind = doc["kind"]
    if kind not in _PARSERS:
        raise ParseError("kind", f"unknown kind {kind!r}")
    extra = sorted(set(doc) - set(KEYS[kind]))
    if extra:
        raise ParseError(extra[0], f"unexpected key for kind {kind}")
    for key in KEYS[kind]:
        if key not in doc:
            raise ParseError(key, "missing key")
    if not isinstance(doc["name"], str):
        raise ParseError("name", "expected a string")
    try:
        return _PARSERS[kind](doc)
    except ParseError:
        raise
    except UsageError as e:
        raise ParseError(kind, str(e)) from None


def load_structure(path):
    data = Path(path).read_bytes()
    try:
        return parse_structure(data)
    except ParseError as e:
        raise ParseError(f"{path}: {e.where}", str(e).split(": ", 1)[1]) from None


# -- output ------------------------------------------------------------------

def _doc(s) -> dict:
    if isinstance(s, FiniteMultiring):
        e = s.elems
        return {
            "kind": "multiring",
            "name": s.name,
            "elements": list(e),
            "zero": e[s.zero],
            "one": e[s.one],
            "neg": [e[x] for x in s.neg],
            "mul": [[e[x] for x in row] for row in s.mul],
            "add": [[[e[x] for x in bits(c)] for c in row] for row in s.add],
        }
    if isinstance(s, RealSemigroupData):
        e = s.elems
        return {
            "kind": "realsemigroup",
            "name": s.name,
            "elements": list(e),
            "zero": e[s.zero],
            "one": e[s.one],
            "minus_one": e[s.minus_one],
            "mul": [[e[x] for x in row] for row in s.mul],
            "presentation": s.presentation,
            "rel": [
                [e[c], e[a], e[b]]
                for a in range(s.n) for b in range(s.n) for c in bits(s.rel[a][b])
            ],
        }
    if isinstance(s, ARSData):
        return {
            "kind": "ars",
            "name": s.name,
            "points": list(s.points),
            "funcs": [list(f) for f in s.funcs],
        }
    raise UsageError(f"cannot serialize a {type(s).__name__}")


def _compact(v) -> str:
    return json.dumps(v, ensure_ascii=False, separators=(", ", ": "))


def _value(v) -> str:
    if isinstance(v, list) and v and all(isinstance(x, list) for x in v):
        rows = ",\n".join("    " + _compact(x) for x in v)
        return "[\n" + rows + "\n  ]"
    return _compact(v)


def serialize_structure(s) -> str:
    doc = _doc(s)
    body = ",\n".join(f"  {json.dumps(k)}: {_value(doc[k])}" for k in sorted(doc))
    return "{\n" + body + "\n}\n"


def save_structure(s, path) -> None:
    Path(path).write_text(serialize_structure(s), encoding="utf-8")

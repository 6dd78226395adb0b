"""The bundled structure files and their expected verdicts.

``build_corpus`` regenerates every file from the constructions;
``expected.json`` is written by hand and is the independent record of what
each file must pass or fail (with the least counterexample).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from itertools import product
from pathlib import Path

from .axioms import check
from .bridges import duality_check, mr_to_prs, roundtrip_report
from .constructions import build_q2, marshall_quotient, power, ring_mod
from .core import ARSData, FiniteMultiring, RealSemigroupData
from .fileio import parse_structure, serialize_structure

MANIFEST = "expected.json"


def _renamed(s, name):
    if isinstance(s, ARSData):
        return ARSData(s.points, s.funcs, name=name)
    if isinstance(s, FiniteMultiring):
        return FiniteMultiring(s.elems, s.add, s.mul, s.neg, s.zero, s.one, name=name)
    return RealSemigroupData(
        s.elems, s.mul, s.one, s.zero, s.minus_one, s.rel, s.presentation, name=name
    )


def krasner_k() -> FiniteMultiring:
    K, _ = marshall_quotient(ring_mod(5), range(1, 5))
    return K


def broken_assoc() -> FiniteMultiring:
    """Zero plus a cyclic group {1, w, w2} of order 3 with -x = x.

    ``1 + 1 = {0, 1}``, ``1 + w = {w2}``, ``1 + w2 = {w}``, extended by
    ``g + h = g (1 + h/g)``.  Every multiring law except additive
    associativity holds: ``(1 + 1) + w = {w, w2}`` but ``1 + (1 + w) = {w}``.
    """
    names = ("0", "1", "w", "w2")
    g = (1, 2, 3)
    one_plus = {0: {0, 1}, 1: {3}, 2: {2}}
    mul = [[0] * 4 for _ in range(4)]
    add = [[{x if x else y} for y in range(4)] for x in range(4)]
    for i in range(3):
        for j in range(3):
            mul[g[i]][g[j]] = g[(i + j) % 3]
            add[g[i]][g[j]] = {
                0 if s == 0 else g[(i + g.index(s)) % 3] for s in one_plus[(j - i) % 3]
            }
    return FiniteMultiring.from_tables(names, add, mul, (0, 1, 2, 3), 0, 1)


def rs1_violation() -> RealSemigroupData:
    """R(Q2) with 0 removed from D(-1, 0), D(0, -1), D(0, 1) and D(1, 0)."""
    G = mr_to_prs(build_q2())
    rel = [list(r) for r in G.rel]
    for c, a, b in ((1, 0, 1), (1, 1, 0), (1, 1, 2), (1, 2, 1)):
        rel[a][b] &= ~(1 << c)
    return RealSemigroupData(
        G.elems, G.mul, G.one, G.zero, G.minus_one, tuple(map(tuple, rel))
    )


def full_ars(k: int) -> ARSData:
    return ARSData(
        tuple(f"x{i}" for i in range(k)), tuple(product((-1, 0, 1), repeat=k))
    )


def build_corpus() -> dict:
    Q = build_q2()
    items = {
        "q2": Q,
        "q2pow2": power(Q, 2),
        "q2pow3": power(Q, 3),
        "k-krasner": krasner_k(),
        "z5-ring": ring_mod(5),
        "rs-of-q2": mr_to_prs(Q),
        "prs-of-k": mr_to_prs(krasner_k()),
        "ars-1pt": full_ars(1),
        "ars-2pt": full_ars(2),
        "broken-assoc": broken_assoc(),
        "no-separation": ARSData(("x", "y"), ((0, 0), (1, 1), (-1, -1))),
        "rs1-violation": rs1_violation(),
    }
    return {k: _renamed(v, k) for k, v in items.items()}


def write_corpus(directory) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for name, s in build_corpus().items():
        p = directory / f"{name}.json"
        p.write_text(serialize_structure(s), encoding="utf-8")
        out.append(p)
    return out


def corpus_dir(directory=None):
    if directory is not None:
        return Path(directory)
    return resources.files("multiring") / "corpus"


def corpus_names(directory=None) -> list[str]:
    d = corpus_dir(directory)
    return sorted(p.name[:-5] for p in d.iterdir() if p.name.endswith(".json") and p.name != MANIFEST)


def load(name: str, directory=None):
    return parse_structure((corpus_dir(directory) / f"{name}.json").read_bytes())


def load_corpus(directory=None) -> dict:
    return {n: load(n, directory) for n in corpus_names(directory)}


def manifest(directory=None) -> dict:
    return json.loads((corpus_dir(directory) / MANIFEST).read_text(encoding="utf-8"))


# -- verification ------------------------------------------------------------

@dataclass(frozen=True)
class Row:
    file: str
    check: str
    expected: str
    observed: str

    @property
    def ok(self) -> bool:
        return self.expected == self.observed


def _verdict(failures: dict) -> str:
    if not failures:
        return "pass"
    return "fail " + "; ".join(
        f"{k}({', '.join(v)})" if v else k for k, v in sorted(failures.items())
    )


def verify_corpus(directory=None) -> list[Row]:
    """Compare every manifest expectation with a fresh computation."""
    items = load_corpus(directory)
    expect = manifest(directory)
    rows = []
    for c in expect["checks"]:
        s = items[c["file"]]
        opts = c.get("options", {})
        report = check(s, c["profile"], **opts)
        observed = {e.axiom: list(e.counterexample) for e in report.failures()}
        label = c["profile"] + "".join(f" {k}={v}" for k, v in sorted(opts.items()))
        rows.append(Row(c["file"], label, _verdict(c["fails"]), _verdict(observed)))
    rt = expect["roundtrip"]
    report = roundtrip_report([items[f] for f in rt["files"]])
    rows.append(Row(
        "+".join(rt["files"]), "roundtrip",
        _verdict({k: [] for k in rt["fails"]}),
        _verdict({k: [] for k in report.failed_axioms()}),
    ))
    for f in expect["duality"]:
        report = duality_check(items[f])
        rows.append(Row(f, "duality", "pass", _verdict({k: [] for k in report.failed_axioms()})))
    return sorted(rows, key=lambda r: (r.file, r.check))


def format_rows(rows: list[Row]) -> str:
    w1 = max(len(r.file) for r in rows)
    w2 = max(len(r.check) for r in rows)
    lines = [f"{'file':<{w1}}  {'check':<{w2}}  status  observed"]
    for r in rows:
        status = "ok" if r.ok else "MISMATCH"
        line = f"{r.file:<{w1}}  {r.check:<{w2}}  {status:<6}  {r.observed}"
        if not r.ok:
            line += f"  [expected {r.expected}]"
        lines.append(line)
    good = sum(r.ok for r in rows)
    lines.append(f"{good}/{len(rows)} expectations met")
    return "\n".join(lines)

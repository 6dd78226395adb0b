import warnings

import pytest

from multiring.bridges import mr_to_prs
from multiring.constructions import build_q2, g_T, marshall_quotient, power, ring_mod
from multiring.core import FiniteMultiring

ACCEPTANCE = {}


@pytest.fixture(scope="session")
def q2():
    return build_q2()


@pytest.fixture(scope="session")
def q2sq(q2):
    return power(q2, 2)


@pytest.fixture(scope="session")
def q2cube(q2):
    return power(q2, 3)


@pytest.fixture(scope="session")
def K():
    return marshall_quotient(ring_mod(5), range(1, 5))[0]


@pytest.fixture(scope="session")
def z5():
    return ring_mod(5)


@pytest.fixture(scope="session")
def rq2(q2):
    return mr_to_prs(q2)


@pytest.fixture(scope="session")
def rK(K):
    return mr_to_prs(K)


@pytest.fixture(scope="session")
def gt_q2sq(q2sq):
    """G_T(Q2^2) for the sums of squares; the missing comparison map is expected."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        return g_T(q2sq)[0]


def override_add(A: FiniteMultiring, a: int, b: int, cell: set[int]) -> FiniteMultiring:
    """Copy of ``A`` with ``a + b`` and ``b + a`` replaced by ``cell``."""
    add = [list(r) for r in A.add]
    mask = sum(1 << c for c in cell)
    add[a][b] = add[b][a] = mask
    return FiniteMultiring(A.elems, tuple(map(tuple, add)), A.mul, A.neg, A.zero, A.one)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, secs, limit, note = ACCEPTANCE[k]
        verdict = "PASS" if ok else "FAIL"
        line = f"criterion {k}: {verdict}  ({secs:.2f} s, limit {limit} s)"
        if note:
            line += f"  {note}"
        terminalreporter.write_line(line)

from __future__ import annotations

import pytest

from qpseiberg import fixtures
from qpseiberg.quiver import Potential
from qpseiberg.textio import parse_terms

# Potentials displayed for the dP1 example, transcribed term by term.
DP1_S_TILDE = """
1 R3 d3 c1 ; -1 R3 d1 c2 ; -1 d2 c1 [aR1] ; 1 d1 [bR1] ; -1 d3 [bR2] ; 1 d2 c2 [aR2] ;
1 [aR1] R1* a* ; 1 [aR2] R2* a* ; 1 [bR1] R1* b* ; 1 [bR2] R2* b* ;
"""
DP1_S_BAR = """
1 c2 R3 R1* b* ; 1 c1 R3 R2* b* ; 1 d2 c2 [aR2] ; -1 d2 c1 [aR1] ; 1 [aR1] R1* a* ; 1 [aR2] R2* a* ;
"""
# Displayed right equivalence; note d3 -> -d3 + R2* b*.
DP1_PHI = {
    "d1": "1 d1 ; -1 R1* b* ;",
    "d3": "-1 d3 ; 1 R2* b* ;",
    "[bR1]": "1 [bR1] ; 1 c2 R3 ;",
    "[bR2]": "1 [bR2] ; 1 c1 R3 ;",
}
DP1_Q_TILDE = {
    ("a*", 2, 1), ("b*", 3, 1), ("c1", 2, 3), ("c2", 2, 3), ("d1", 3, 4), ("d2", 3, 4), ("d3", 3, 4),
    ("R1*", 1, 4), ("R2*", 1, 4), ("R3", 4, 2), ("[aR1]", 4, 2), ("[aR2]", 4, 2), ("[bR1]", 4, 3), ("[bR2]", 4, 3),
}
DP1_Q_BAR = {
    ("R1*", 1, 4), ("R2*", 1, 4), ("a*", 2, 1), ("b*", 3, 1), ("c1", 2, 3), ("c2", 2, 3), ("d2", 3, 4),
    ("R3", 4, 2), ("[aR1]", 4, 2), ("[aR2]", 4, 2),
}


def potential_from_text(quiver, text: str) -> Potential:
    return Potential(quiver, parse_terms(text.replace("\n", " ")))


def arrow_triples(quiver) -> set:
    return {(a.name, a.src, a.dst) for a in quiver.arrows}


@pytest.fixture
def dp1():
    return fixtures.load("dp1")


@pytest.fixture
def triangle():
    return fixtures.load("triangle")


@pytest.fixture
def a3():
    return fixtures.load("a3")


_ACCEPTANCE: dict[str, bool] = {}


@pytest.fixture
def acceptance_record():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[0])):
        terminalreporter.write_line(f"{'PASS' if _ACCEPTANCE[name] else 'FAIL'}  {name}")

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpseiberg.errors import InvalidQuiver, NotACycle
from qpseiberg.quiver import (
    Arrow,
    Potential,
    Quiver,
    QuiverWithPotential,
    cyclic_normal_form,
    export_dot,
    rotations,
    validate,
)

from conftest import DP1_S_TILDE, DP1_Q_TILDE, potential_from_text
from randqp import random_cycle, random_quiver

TRIANGLE = Quiver.from_triples(3, [("a", 1, 2), ("b", 2, 3), ("c", 3, 1)], "triangle")


def brute_min_rotation(q, word):
    order = {a.name: i for i, a in enumerate(q.arrows)}
    return min((tuple(r) for r in rotations(word)), key=lambda r: [order[x] for x in r])


def test_normal_form_picks_rotation_starting_at_smallest_arrow():
    p = cyclic_normal_form(TRIANGLE, ("c", "b", "a"))
    assert p.word == ("a", "c", "b")
    assert p.src == p.dst == 2


def test_normal_form_idempotent_on_minimal_cycle():
    p = cyclic_normal_form(TRIANGLE, ("a", "c", "b"))
    assert cyclic_normal_form(TRIANGLE, p.word) == p


def test_rotations_of_same_dp1_term_agree():
    q = Quiver.from_triples(4, sorted(DP1_Q_TILDE, key=lambda t: t[0]))
    left = cyclic_normal_form(q, ("d2", "c1", "[aR1]"))
    right = cyclic_normal_form(q, ("[aR1]", "d2", "c1"))
    assert left == right


@pytest.mark.parametrize("word", [("a", "b"), ("b", "a", "c", "a"), ("a", "c")])
def test_normal_form_rejects_non_cycles(word):
    with pytest.raises(NotACycle):
        cyclic_normal_form(TRIANGLE, word)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_normal_form_collapses_rotation_class(seed):
    rng = random.Random(seed)
    q = random_quiver(rng)
    w = random_cycle(rng, q, 2, 6)
    if w is None:
        return
    nf = cyclic_normal_form(q, w)
    assert nf.word == brute_min_rotation(q, w)
    for r in rotations(w):
        assert cyclic_normal_form(q, r) == nf
    assert cyclic_normal_form(q, nf.word) == nf


def test_potential_merges_rotations_and_drops_zero():
    S = Potential(TRIANGLE, [(("c", "b", "a"), 2), (("b", "a", "c"), -2)])
    assert not S
    S = Potential(TRIANGLE, [(("c", "b", "a"), 1), (("a", "c", "b"), Fraction(1, 2))])
    assert S.terms == {("a", "c", "b"): Fraction(3, 2)}


def test_validate_accepts_dp1_with_cycle_cover(dp1):
    report = validate(dp1, require_cycle_cover=True)
    assert report.ok, report.problems()
    assert len(dp1.quiver.vertices) == 4


def test_validate_reports_loop(dp1):
    q = dp1.quiver.with_arrows(list(dp1.quiver.arrows) + [Arrow("z", 2, 2)])
    report = validate(QuiverWithPotential(q, dp1.potential))
    assert report.loops == ["z"]
    assert not report.ok


def test_validate_reports_duplicate_name(dp1):
    q = dp1.quiver.with_arrows(list(dp1.quiver.arrows) + [Arrow("a", 2, 3)])
    report = validate(QuiverWithPotential(q, Potential(q, dp1.potential.terms)))
    assert report.duplicate_names == ["a"]


def test_validate_reports_noncomposable_term(dp1):
    bad = Potential(dp1.quiver, list(dp1.potential.terms.items()) + [(("R3", "d3", "b"), 1)], check=False)
    report = validate(QuiverWithPotential(dp1.quiver, bad))
    assert len(report.noncomposable_terms) == 1
    assert report.noncomposable_terms[0] in set(rotations(("R3", "d3", "b")))
    with pytest.raises(InvalidQuiver):
        QuiverWithPotential(dp1.quiver, bad).require_valid()


def test_validate_flags_acyclic_vertices(a3):
    assert validate(a3).ok
    assert validate(a3, require_cycle_cover=True).uncovered_vertices == [1, 2, 3]


def test_validate_reports_unknown_arrow(triangle):
    bad = Potential(triangle.quiver, [(("c", "b", "zz"), 1)], check=False)
    assert validate(QuiverWithPotential(triangle.quiver, bad)).unknown_arrows == ["zz"]


def test_dot_export_dp1(dp1):
    dot = export_dot(dp1.quiver)
    lines = dot.splitlines()
    assert lines[0] == 'digraph "dp1" {' and lines[-1] == "}"
    assert sum(1 for l in lines if l.strip().endswith(";") and "->" not in l) == 4
    assert sum(1 for l in lines if "->" in l) == 10
    assert export_dot(dp1.quiver) == dot


def test_dot_export_empty_quiver():
    assert export_dot(Quiver([], [], "E")) == 'digraph "E" {\n}\n'


def test_dot_export_mutated_dp1_names(dp1):
    from qpseiberg.mutation import mutate

    dot = export_dot(mutate(dp1, 1).quiver)
    edges = [l for l in dot.splitlines() if "->" in l]
    assert len(edges) == 10
    for name in ("a*", "b*", "[aR1]", "[aR2]"):
        assert f'label="{name}"' in dot


def test_dp1_s_tilde_parses_as_ten_terms():
    q = Quiver.from_triples(4, sorted(DP1_Q_TILDE, key=lambda t: t[0]))
    assert len(potential_from_text(q, DP1_S_TILDE)) == 10

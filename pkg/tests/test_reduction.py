import random
from fractions import Fraction

import pytest

from qpseiberg.algebra import cyclically_equal
from qpseiberg.errors import FuelExhausted, RelatedArrows
from qpseiberg.quiver import Potential, Quiver, QuiverWithPotential
from qpseiberg.reduction import (
    detect_related_arrows,
    integrate_massive,
    reduce,
    replay_trace,
    split_degree_two,
    two_cycle_terms,
)

from randqp import random_diagonal_qp

# a, c: 1 -> 2 and b, d: 2 -> 1
Q = Quiver.from_triples(2, [("a", 1, 2), ("b", 2, 1), ("c", 1, 2), ("d", 2, 1)], "Q")


def qp_of(*items):
    return QuiverWithPotential(Q, Potential(Q, items))


def test_split_degree_two():
    qp = qp_of((("b", "a"), 2), (("d", "c", "d", "c"), 1), (("d", "a"), -1))
    triv, red = split_degree_two(qp.potential)
    assert len(triv) == 2 and len(red) == 1
    assert cyclically_equal(triv + red, qp.potential)


def test_two_cycle_terms_order_and_roles():
    qp = qp_of((("b", "a"), 2), (("d", "c"), 3))
    terms = two_cycle_terms(qp.potential)
    assert [(t.a, t.b, t.coefficient) for t in terms] == [("a", "b", 2), ("c", "d", 3)]


def test_related_arrows_detected():
    qp = qp_of((("b", "a"), 1), (("d", "a"), 1))
    groups = detect_related_arrows(qp)
    assert len(groups) == 1
    assert groups[0].massive == "a"
    assert groups[0].related == ("b", "d")
    with pytest.raises(RelatedArrows):
        integrate_massive(qp)


def test_plain_two_cycle_leaves_remainder():
    qp = qp_of((("b", "a"), 1), (("d", "c", "d", "c"), 5))
    out = reduce(qp)
    assert [x.name for x in out.quiver.arrows] == ["c", "d"]
    assert out.potential.terms == {("c", "d", "c", "d"): 5}


def test_massive_arrow_in_longer_term_is_absorbed():
    # b a + a d c d = (b + d c d) a
    out = reduce(qp_of((("b", "a"), 1), (("a", "d", "c", "d"), 1)))
    assert not out.potential
    assert [x.name for x in out.quiver.arrows] == ["c", "d"]


def test_both_massive_arrows_in_longer_terms():
    # b a + b c d c + a d c d = (b + d c d)(a + c d c) - (d c)^3
    qp = qp_of((("b", "a"), 1), (("b", "c", "d", "c"), 1), (("a", "d", "c", "d"), 1))
    out, trace = integrate_massive(qp)
    assert out.potential.terms == {("c", "d", "c", "d", "c", "d"): -1}
    assert trace.eliminated_arrows() == ["a", "b"]
    assert trace.steps[0].images == {"a": {("c", "d", "c"): -1}, "b": {("d", "c", "d"): -1}}


def test_coefficient_scales_solution():
    qp = qp_of((("b", "a"), 2), (("b", "c", "d", "c"), 1), (("a", "d", "c", "d"), 1))
    out = reduce(qp)
    assert out.potential.terms == {("c", "d", "c", "d", "c", "d"): Fraction(-1, 2)}


def test_divergent_fixed_point_exhausts_fuel():
    # a = -(c d c + a d c) never stabilises
    qp = qp_of((("b", "a"), 1), (("b", "a", "d", "c"), 1), (("b", "c", "d", "c"), 1))
    with pytest.raises(FuelExhausted):
        integrate_massive(qp, fuel=10)


def test_term_limit_guard():
    qp = qp_of((("b", "a"), 1), (("b", "a", "d", "c"), 1), (("b", "c", "d", "c"), 1), (("b", "a", "b", "c"), 1))
    with pytest.raises(FuelExhausted):
        integrate_massive(qp, fuel=1000, term_limit=50)


def test_reduced_input_untouched(dp1):
    out, trace = integrate_massive(dp1)
    assert out.quiver == dp1.quiver
    assert cyclically_equal(out.potential, dp1.potential)
    assert trace.steps == [] and trace.fuel_used == 0


def test_replay_matches_output():
    rng = random.Random(11)
    for _ in range(100):
        qp = random_diagonal_qp(rng)
        out, trace = integrate_massive(qp)
        again = replay_trace(qp, trace)
        assert again.quiver == out.quiver
        assert cyclically_equal(again.potential, out.potential)


def test_replay_rejects_tampered_trace():
    qp = qp_of((("b", "a"), 1), (("d", "c"), 1), (("d", "c", "b", "a"), 1))
    _, trace = integrate_massive(qp)
    trace.steps = trace.steps[::-1] + trace.steps[:1]
    with pytest.raises(AssertionError):
        replay_trace(qp, trace)


def test_random_reductions_leave_no_two_cycles():
    rng = random.Random(5)
    for _ in range(100):
        qp = random_diagonal_qp(rng)
        out = reduce(qp)
        assert not two_cycle_terms(out.potential)
        n_pairs = len(two_cycle_terms(qp.potential))
        assert len(out.quiver.arrows) == len(qp.quiver.arrows) - 2 * n_pairs


def test_processing_order_does_not_change_result():
    rng = random.Random(9)
    for _ in range(50):
        qp = random_diagonal_qp(rng)
        forward = reduce(qp)
        backward = integrate_massive(qp, pair_key=lambda t: [-ord(ch) for ch in t.a])[0]
        assert forward.quiver == backward.quiver
        assert cyclically_equal(forward.potential, backward.potential)

"""Splitting off the trivial part of a potential by integrating out 2-cycles.

Each 2-cycle term ``lam * a b`` is removed by solving the two relations
``dS/da = lam*b + R = 0`` and ``dS/db = lam*a + V = 0`` for ``b`` and ``a``
and substituting the solution back into the potential. When ``R`` and
``V`` do not involve ``a`` or ``b`` one substitution is exact; otherwise
the solution is a fixed point that is iterated until it stabilises, and
the iteration is bounded by ``fuel``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .algebra import cyclic_derivative, substitute_potential, substitute_words
from .errors import FuelExhausted, RelatedArrows
from .quiver import Potential, QuiverWithPotential, Word

DEFAULT_FUEL = 100
DEFAULT_TERM_LIMIT = 20000


@dataclass(frozen=True)
class TwoCycleTerm:
    a: str
    b: str
    coefficient: Fraction


@dataclass(frozen=True)
class RelatedGroup:
    massive: str
    related: tuple[str, ...]


@dataclass(frozen=True)
class TraceStep:
    eliminated: str
    solved: str
    coefficient: Fraction
    images: dict[str, dict[Word, Fraction]]
    iterations: int


@dataclass
class ReductionTrace:
    steps: list[TraceStep] = field(default_factory=list)
    fuel_used: int = 0

    def eliminated_arrows(self) -> list[str]:
        return [x for s in self.steps for x in (s.eliminated, s.solved)]


def split_degree_two(S: Potential) -> tuple[Potential, Potential]:
    return S.degree_part(lambda n: n == 2), S.degree_part(lambda n: n != 2)


def two_cycle_terms(S: Potential) -> list[TwoCycleTerm]:
    """Degree-two terms in normal-form order; ``a`` is the smaller arrow."""
    return [TwoCycleTerm(w[0], w[1], c) for w, c in S.terms.items() if len(w) == 2]


def detect_related_arrows(qp: QuiverWithPotential) -> list[RelatedGroup]:
    order = qp.quiver.sort_key
    partners: dict[str, list[str]] = {}
    for t in two_cycle_terms(qp.potential):
        partners.setdefault(t.a, []).append(t.b)
        partners.setdefault(t.b, []).append(t.a)
    groups = [
        RelatedGroup(x, tuple(sorted(ys, key=lambda y: order((y,)))))
        for x, ys in partners.items()
        if len(ys) >= 2
    ]
    return sorted(groups, key=lambda g: order((g.massive,)))


def _without(terms: dict[Word, Fraction], word: Word) -> dict[Word, Fraction]:
    return {w: c for w, c in terms.items() if w != word}


def _scaled(terms: dict[Word, Fraction], c: Fraction) -> dict[Word, Fraction]:
    return {w: c * v for w, v in terms.items()}


def integrate_massive(
    qp: QuiverWithPotential,
    fuel: int = DEFAULT_FUEL,
    term_limit: int = DEFAULT_TERM_LIMIT,
    pair_key: Callable[[TwoCycleTerm], object] | None = None,
) -> tuple[QuiverWithPotential, ReductionTrace]:
    """Remove every 2-cycle term together with both of its arrows.

    ``pair_key`` overrides the processing order (default: normal-form
    order of the 2-cycles). Raises :class:`RelatedArrows` if an arrow sits
    in two 2-cycle terms and :class:`FuelExhausted` when a fixed point
    does not stabilise within ``fuel`` iterations in total.
    """
    groups = detect_related_arrows(qp)
    if groups:
        raise RelatedArrows(groups)
    q, S = qp.quiver, qp.potential
    trace = ReductionTrace()
    while True:
        pairs = two_cycle_terms(S)
        if not pairs:
            break
        t = min(pairs, key=pair_key) if pair_key else pairs[0]
        a, b, lam = t.a, t.b, t.coefficient
        rest_a = _without(cyclic_derivative(S, a).word_terms(), (b,))
        rest_b = _without(cyclic_derivative(S, b).word_terms(), (a,))
        inv = -1 / lam
        images: dict[str, dict[Word, Fraction]] = {a: {}, b: {}}
        iterations = 0
        while True:
            trace.fuel_used += 1
            iterations += 1
            if trace.fuel_used > fuel:
                raise FuelExhausted(f"no fixed point for the 2-cycle {a} {b} within fuel {fuel}")
            new = {
                a: _scaled(substitute_words(rest_b.items(), images), inv),
                b: _scaled(substitute_words(rest_a.items(), images), inv),
            }
            if new == images:
                break
            if len(new[a]) + len(new[b]) > term_limit:
                raise FuelExhausted(f"substitution for the 2-cycle {a} {b} exceeds {term_limit} terms")
            images = new
        q = q.without((a, b))
        S = substitute_potential(S, images, q)
        trace.steps.append(TraceStep(a, b, lam, images, iterations))
    return QuiverWithPotential(q, S), trace


def reduce(qp: QuiverWithPotential, fuel: int = DEFAULT_FUEL) -> QuiverWithPotential:
    return integrate_massive(qp, fuel)[0]


def replay_trace(qp: QuiverWithPotential, trace: ReductionTrace) -> QuiverWithPotential:
    """Re-run a trace, checking each step removed a genuine 2-cycle.

    Returns the final quiver with potential; raises ``AssertionError`` on
    any inconsistency.
    """
    q, S = qp.quiver, qp.potential
    seen: set[str] = set()
    for step in trace.steps:
        a, b = step.eliminated, step.solved
        assert a not in seen and b not in seen, f"arrow eliminated twice in step {a} {b}"
        assert S.coefficient((a, b)) == step.coefficient, f"{a} {b} is not a 2-cycle term here"
        q = q.without((a, b))
        S = substitute_potential(S, step.images, q)
        assert not ({a, b} & S.arrows_used()), f"{a} or {b} survives its elimination"
        seen |= {a, b}
    return QuiverWithPotential(q, S)

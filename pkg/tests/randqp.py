"""Random quivers, potentials and elements for the property suites."""

from __future__ import annotations

import random
from fractions import Fraction

from qpseiberg.algebra import PathElement
from qpseiberg.quiver import Arrow, Potential, Quiver, QuiverWithPotential


def small_fraction(rng: random.Random) -> Fraction:
    while True:
        f = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        if f:
            return f


def random_quiver(rng: random.Random, n: int | None = None, m: int | None = None, prefix: str = "x") -> Quiver:
    n = n or rng.randint(2, 4)
    m = m or rng.randint(n, 3 * n)
    arrows = []
    for i in range(m):
        s, t = rng.sample(range(1, n + 1), 2)
        arrows.append(Arrow(f"{prefix}{i}", s, t))
    return Quiver(range(1, n + 1), arrows, "R")


def complete_quiver(rng: random.Random, n: int = 3, prefix: str = "x") -> Quiver:
    """Every ordered pair of distinct vertices gets one or two arrows."""
    arrows = []
    for s in range(1, n + 1):
        for t in range(1, n + 1):
            if s != t:
                for _ in range(rng.randint(1, 2)):
                    arrows.append(Arrow(f"{prefix}{len(arrows)}", s, t))
    return Quiver(range(1, n + 1), arrows, "K")


def random_walk(rng: random.Random, q: Quiver, start: int, length: int, allowed=None):
    word, end = (), start
    for _ in range(length):
        out = [a for a in q.outgoing(end) if allowed is None or a.name in allowed]
        if not out:
            return None
        a = rng.choice(out)
        word, end = (a.name,) + word, a.dst
    return word, end


def random_path(rng: random.Random, q: Quiver, src: int, dst: int, length: int, allowed=None, tries: int = 50):
    for _ in range(tries):
        w = random_walk(rng, q, src, length, allowed)
        if w is not None and w[1] == dst:
            return w[0]
    return None


def random_cycle(rng: random.Random, q: Quiver, min_len: int = 2, max_len: int = 4, allowed=None):
    for _ in range(100):
        v = rng.choice(q.vertices)
        w = random_path(rng, q, v, v, rng.randint(min_len, max_len), allowed, tries=5)
        if w is not None:
            return w
    return None


def random_potential(rng: random.Random, q: Quiver, n_terms: int, min_len: int = 2, max_len: int = 4, allowed=None) -> Potential:
    terms = []
    for _ in range(n_terms):
        c = random_cycle(rng, q, min_len, max_len, allowed)
        if c is not None:
            terms.append((c, small_fraction(rng)))
    return Potential(q, terms)


def random_element(rng: random.Random, q: Quiver, src: int, dst: int, n_terms: int = 3, max_len: int = 3) -> PathElement:
    items = []
    for _ in range(n_terms):
        w = random_path(rng, q, src, dst, rng.randint(1, max_len))
        if w is not None:
            items.append((q.path(w), small_fraction(rng)))
    return PathElement(items, (src, dst))


def random_massive_form(rng: random.Random, n_pairs: int | None = None):
    """A potential of the shape sum(lam a b + sum sigma a u + b v) + W.

    Returns the quiver with potential and the set of ``b`` arrows (which
    play the mesonic role). ``u``, ``v`` and ``W`` avoid massive arrows and
    ``W`` has no 2-cycles.
    """
    base = complete_quiver(rng, rng.randint(3, 4))
    base_names = set(base.arrow_names())
    arrows = list(base.arrows)
    n_pairs = n_pairs or rng.randint(1, 3)
    pairs = []
    for i in range(n_pairs):
        x, y = rng.sample(list(base.vertices), 2)
        a, b = Arrow(f"m{i}", x, y), Arrow(f"[n{i}]", y, x)
        arrows += [a, b]
        pairs.append((a, b))
    q = Quiver(base.vertices, arrows, "F")
    terms = []
    for a, b in pairs:
        terms.append(((a.name, b.name), small_fraction(rng)))
        for _ in range(rng.randint(0, 3)):
            u = random_path(rng, base, a.dst, a.src, rng.randint(2, 3), base_names)
            if u:
                terms.append(((a.name,) + u, small_fraction(rng)))
        for _ in range(rng.randint(0, 2)):
            v = random_path(rng, base, b.dst, b.src, rng.randint(2, 3), base_names)
            if v:
                terms.append(((b.name,) + v, small_fraction(rng)))
    for _ in range(rng.randint(0, 3)):
        c = random_cycle(rng, base, 3, 4, base_names)
        if c:
            terms.append((c, small_fraction(rng)))
    return QuiverWithPotential(q, Potential(q, terms)), {b.name for _, b in pairs}


def random_diagonal_qp(rng: random.Random) -> QuiverWithPotential:
    """Disjoint 2-cycles plus longer cycles, each using at most one massive arrow.

    The bound on massive occurrences keeps every elimination a finite
    substitution; repeated occurrences would give an infinite series.
    """
    base = complete_quiver(rng, 3)
    arrows = list(base.arrows)
    terms = []
    for i in range(rng.randint(1, 2)):
        x, y = rng.sample(list(base.vertices), 2)
        arrows += [Arrow(f"m{i}", x, y), Arrow(f"n{i}", y, x)]
        terms.append(((f"m{i}", f"n{i}"), small_fraction(rng)))
    q = Quiver(base.vertices, arrows, "D")
    massive = {x for w, _ in terms for x in w}
    extra = random_potential(rng, q, rng.randint(1, 6), 3, 4)
    for w, c in extra.terms.items():
        if sum(1 for x in w if x in massive) <= 1:
            terms.append((w, c))
    return QuiverWithPotential(q, Potential(q, terms))

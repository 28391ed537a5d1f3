"""Mutation of a quiver with potential at a vertex."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NameCollision, NotReduced, TwoCycleAtVertex
from .quiver import Arrow, Potential, Quiver, QuiverWithPotential, Word, rotations
from .reduction import DEFAULT_FUEL, ReductionTrace, integrate_massive


def dual_name(x: str) -> str:
    return x + "*"


def mesonic_name(beta: str, alpha: str) -> str:
    return "[" + beta + alpha + "]"


@dataclass(frozen=True)
class PremutationResult:
    source: QuiverWithPotential
    vertex: int
    qp_tilde: QuiverWithPotential
    duals: dict[str, str]
    mesonic: dict[str, tuple[str, str]]
    rotated: tuple[tuple[Word, Fraction], ...]
    bracketed: Potential
    delta: Potential


def _check_vertex(qp: QuiverWithPotential, k: int) -> None:
    qp.require_valid()
    if k not in qp.quiver.vertices:
        raise ValueError(f"vertex {k} is not in {qp.name}")
    if qp.quiver.has_two_cycle_at(k):
        raise TwoCycleAtVertex(f"vertex {k} lies on a 2-cycle of {qp.name}")


def rotate_off(q: Quiver, word: Word, k: int) -> Word:
    """Smallest rotation of a cycle whose base vertex is not ``k``."""
    return min(
        (r for r in rotations(word) if q.arrow(r[-1]).src != k),
        key=q.sort_key,
    )


def bracket(q: Quiver, word: Word, k: int) -> Word:
    out = []
    i = 0
    while i < len(word):
        if i + 1 < len(word) and q.arrow(word[i + 1]).dst == k:
            out.append(mesonic_name(word[i], word[i + 1]))
            i += 2
        else:
            out.append(word[i])
            i += 1
    return tuple(out)


def premutate(qp: QuiverWithPotential, k: int) -> PremutationResult:
    _check_vertex(qp, k)
    q, S = qp.quiver, qp.potential
    if any(len(w) == 2 for w in S.terms):
        raise NotReduced(f"potential of {qp.name} has degree-two terms; reduce it first")

    incoming = q.incoming(k)
    outgoing = q.outgoing(k)
    duals: dict[str, str] = {}
    arrows: list[Arrow] = []
    for a in q.arrows:
        if a.src == k or a.dst == k:
            duals[a.name] = dual_name(a.name)
            arrows.append(Arrow(duals[a.name], a.dst, a.src))
        else:
            arrows.append(a)
    mesonic: dict[str, tuple[str, str]] = {}
    for beta in outgoing:
        for alpha in incoming:
            name = mesonic_name(beta.name, alpha.name)
            mesonic[name] = (beta.name, alpha.name)
            arrows.append(Arrow(name, alpha.src, beta.dst))
    names = [a.name for a in arrows]
    kept = {a.name for a in q.arrows if a.name not in duals}
    if len(set(names)) != len(names) or any(n in kept for n in list(duals.values()) + list(mesonic)):
        raise NameCollision(f"generated arrow names collide in {qp.name} at vertex {k}")
    qt = Quiver(q.vertices, arrows, f"pre{k}({q.name})")

    rotated = tuple((rotate_off(q, w, k), c) for w, c in S.terms.items())
    bracketed = Potential(qt, [(bracket(q, w, k), c) for w, c in rotated])
    delta = Potential(
        qt,
        [((name, dual_name(alpha), dual_name(beta)), 1) for name, (beta, alpha) in mesonic.items()],
    )
    return PremutationResult(
        source=qp,
        vertex=k,
        qp_tilde=QuiverWithPotential(qt, bracketed + delta),
        duals=duals,
        mesonic=mesonic,
        rotated=rotated,
        bracketed=bracketed,
        delta=delta,
    )


def mutate_with_trace(qp: QuiverWithPotential, k: int, fuel: int = DEFAULT_FUEL) -> tuple[QuiverWithPotential, ReductionTrace]:
    pre = premutate(qp, k)
    out, trace = integrate_massive(pre.qp_tilde, fuel)
    return QuiverWithPotential(out.quiver.with_arrows(out.quiver.arrows, f"mu{k}({qp.name})"), out.potential), trace


def mutate(qp: QuiverWithPotential, k: int, fuel: int = DEFAULT_FUEL) -> QuiverWithPotential:
    return mutate_with_trace(qp, k, fuel)[0]

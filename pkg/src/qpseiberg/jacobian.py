"""Jacobian relations, bounded ideal membership and the tilting obstruction search.

Membership in the two-sided ideal generated by the cyclic derivatives is
only semi-decidable, so every answer here carries the length bound ``L``
it was computed at. The ideal is approximated by the rational span of all
products ``p * r * q`` (``r`` a relation, ``p`` and ``q`` paths, possibly
trivial) of total length at most ``L``; the span is built separately for
each pair of endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .algebra import PathElement, cyclic_derivative
from .errors import InhomogeneousElement, NoIncomingArrows
from .linalg import Echelon, nullspace
from .quiver import Path, QuiverWithPotential, Word


@dataclass
class JacobianPresentation:
    qp: QuiverWithPotential
    relations: dict[str, PathElement]
    min_relation_length: int | None


def jacobian_relations(qp: QuiverWithPotential) -> JacobianPresentation:
    rels = {a.name: cyclic_derivative(qp.potential, a.name) for a in qp.quiver.arrows}
    lengths = [n for r in rels.values() for n in r.lengths()]
    return JacobianPresentation(qp, rels, min(lengths) if lengths else None)


@dataclass(frozen=True)
class CertificateTerm:
    """``coefficient * left * relation * right``."""

    coefficient: Fraction
    left: Path
    relation: str
    right: Path

    def expand(self, pres: JacobianPresentation) -> PathElement:
        rel = pres.relations[self.relation]
        left = PathElement({self.left: 1}, (self.left.src, self.left.dst))
        right = PathElement({self.right: 1}, (self.right.src, self.right.dst))
        return (left * rel * right).scale(self.coefficient)

    def to_dict(self) -> dict:
        return {
            "coefficient": _q(self.coefficient),
            "left": str(self.left),
            "relation": self.relation,
            "right": str(self.right),
        }


def _q(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


@dataclass
class InIdeal:
    certificate: list[CertificateTerm]
    bound: int

    def replay(self, pres: JacobianPresentation) -> PathElement:
        total = PathElement()
        for t in self.certificate:
            total = total + t.expand(pres)
        return total


@dataclass
class NotInIdealCertified:
    reason: str
    bound: int


@dataclass
class Unknown:
    bound: int


MembershipVerdict = InIdeal | NotInIdealCertified | Unknown


class BoundedIdeal:
    """Truncated ideal span for one quiver with potential and bound ``L``."""

    def __init__(self, qp: QuiverWithPotential, bound: int):
        self.qp = qp
        self.bound = bound
        self.presentation = jacobian_relations(qp)
        self._components: dict[tuple[int, int], tuple[Echelon, list]] = {}
        q = qp.quiver
        self._key = lambda w: (len(w), q.sort_key(w))

    @cached_property
    def _paths(self) -> dict[tuple[int, int], list[Word]]:
        """All paths of length <= bound grouped by (src, dst), length-then-lex order."""
        q = self.qp.quiver
        out: dict[tuple[int, int], list[Word]] = {}
        for u in q.vertices:
            layer = [((), u)]
            for n in range(self.bound + 1):
                for w, end in layer:
                    out.setdefault((u, end), []).append(w)
                if n == self.bound:
                    break
                layer = [((a.name,) + w, a.dst) for w, end in layer for a in q.outgoing(end)]
        for ws in out.values():
            ws.sort(key=self._key)
        return out

    def paths(self, src: int, dst: int, max_len: int | None = None) -> list[Word]:
        ws = self._paths.get((src, dst), [])
        if max_len is None:
            return list(ws)
        return [w for w in ws if len(w) <= max_len]

    def component(self, src: int, dst: int) -> tuple[Echelon, list]:
        key = (src, dst)
        if key not in self._components:
            q = self.qp.quiver
            ech = Echelon(self._key, track=True)
            gens = []
            for name, rel in self.presentation.relations.items():
                if not rel:
                    continue
                arr = q.arrow(name)
                ru, rw = arr.dst, arr.src
                rwords = rel.word_terms()
                rlen = max(len(w) for w in rwords)
                room = self.bound - rlen
                if room < 0:
                    continue
                for right in self.paths(src, ru, room):
                    for left in self.paths(rw, dst, room - len(right)):
                        vec = {left + w + right: c for w, c in rwords.items()}
                        gens.append((left, name, right))
                        ech.add(vec, len(gens) - 1)
            self._components[key] = (ech, gens)
        return self._components[key]

    def normal_form(self, src: int, dst: int, vec: dict[Word, Fraction]) -> dict[Word, Fraction]:
        return self.component(src, dst)[0].normal_form(vec)

    def contains(self, src: int, dst: int, vec: dict[Word, Fraction]) -> bool:
        return self.component(src, dst)[0].contains(vec)

    def membership(self, x: PathElement) -> MembershipVerdict:
        ends = x.homogeneous_endpoints()
        if not x:
            return InIdeal([], self.bound)
        if ends is None:
            raise InhomogeneousElement("element has terms with different endpoints")
        longest = max(x.lengths())
        if longest > self.bound:
            raise ValueError(f"bound {self.bound} is below the element's length {longest}")
        src, dst = ends
        ech, gens = self.component(src, dst)
        combo = ech.express(x.word_terms())
        if combo is not None:
            q = self.qp.quiver
            cert = []
            for g, c in sorted(combo.items()):
                left, name, right = gens[g]
                arr = q.arrow(name)
                cert.append(
                    CertificateTerm(c, Path(left, arr.src, dst), name, Path(right, src, arr.dst))
                )
            return InIdeal(cert, self.bound)
        m = self.presentation.min_relation_length
        if m is None:
            return NotInIdealCertified("the ideal is zero", self.bound)
        if min(x.lengths()) < m:
            return NotInIdealCertified(
                f"a term has length {min(x.lengths())} < {m}, the shortest relation term", self.bound
            )
        return Unknown(self.bound)


def ideal_membership_bounded(x: PathElement, qp: QuiverWithPotential, bound: int, ideal: BoundedIdeal | None = None) -> MembershipVerdict:
    ideal = ideal if ideal is not None and ideal.bound == bound else BoundedIdeal(qp, bound)
    return ideal.membership(x)


@dataclass
class ObstructionFound:
    target: int
    witness: PathElement
    bound: int
    memberships: dict[str, InIdeal] = field(default_factory=dict)
    reason: str = ""


@dataclass
class NoObstructionUpTo:
    target: int
    bound: int


@dataclass
class Candidate:
    """A solution ``f`` not in the truncated ideal but not certified nonzero."""

    target: int
    witness: PathElement
    bound: int


TargetResult = ObstructionFound | NoObstructionUpTo | Candidate


def tilting_obstruction_search(qp: QuiverWithPotential, k: int, bound: int, ideal: BoundedIdeal | None = None) -> list[TargetResult]:
    """Look for ``f: k -> s`` with ``f * alpha`` in the ideal for every arrow ``alpha`` into ``k``.

    ``f`` ranges over combinations of paths of length below ``bound``. An
    obstruction is reported only when ``f`` has a term shorter than every
    relation term, which certifies ``f`` is nonzero in the Jacobian algebra.
    """
    q = qp.quiver
    incoming = q.incoming(k)
    if not incoming:
        raise NoIncomingArrows(f"vertex {k} has no incoming arrows")
    ideal = ideal if ideal is not None and ideal.bound == bound else BoundedIdeal(qp, bound)
    m = ideal.presentation.min_relation_length
    results: list[TargetResult] = []
    for s in q.vertices:
        basis = ideal.paths(k, s, bound - 1)
        columns = []
        for p in basis:
            col = {}
            for j, alpha in enumerate(incoming):
                nf = ideal.normal_form(alpha.src, s, {p + (alpha.name,): Fraction(1)})
                col.update({(j, w): c for w, c in nf.items()})
            columns.append(col)
        key = lambda jw: (jw[0], len(jw[1]), q.sort_key(jw[1]))
        kernel = nullspace(columns, key)
        sols = [
            PathElement({Path(basis[i], k, s): c for i, c in vec.items()}, (k, s)) for vec in kernel
        ]
        certified = [f for f in sols if m is None or min(f.lengths()) < m]
        if certified:
            f = certified[0]
            members = {}
            for alpha in incoming:
                verdict = ideal.membership(f * PathElement.arrow(q, alpha.name))
                assert isinstance(verdict, InIdeal)
                members[alpha.name] = verdict
            why = "the ideal is zero" if m is None else f"f has a term shorter than {m}"
            results.append(ObstructionFound(s, f, bound, members, why))
            continue
        outside = [f for f in sols if not ideal.contains(k, s, f.word_terms())]
        if outside:
            results.append(Candidate(s, outside[0], bound))
        else:
            results.append(NoObstructionUpTo(s, bound))
    return results

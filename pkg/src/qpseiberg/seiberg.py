"""Seiberg duality for good potentials and its comparison with mutation."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Substitution, apply_substitution, cyclic_derivative, cyclically_equal
from .errors import NoIncomingArrows, NotCertifiedDualizable, NotGood, NotInForm31, RelatedArrows
from .jacobian import BoundedIdeal, Candidate, ObstructionFound, tilting_obstruction_search
from .mutation import PremutationResult, mutate, premutate
from .quiver import Potential, QuiverWithPotential, Word
from .reduction import DEFAULT_FUEL, ReductionTrace, detect_related_arrows, integrate_massive, split_degree_two, two_cycle_terms


@dataclass
class GoodPotentialVerdict:
    is_good: bool
    arrow_counts: dict[str, int]
    repeated_subpaths: list[tuple[tuple[str, str], list[Word]]]
    cyclic: bool = True


def length_two_subpaths(word: Word, cyclic: bool = True) -> list[tuple[str, str]]:
    pairs = list(zip(word, word[1:]))
    if cyclic and len(word) >= 2:
        pairs.append((word[-1], word[0]))
    return pairs


def is_good_potential(qp: QuiverWithPotential, cyclic: bool = True) -> GoodPotentialVerdict:
    """Every arrow occurs at least twice and no length-2 subpath occurs twice.

    ``cyclic`` also counts the pair that wraps around from the end of a
    term to its start.
    """
    counts = {a.name: 0 for a in qp.quiver.arrows}
    counts.update(qp.potential.occurrences())
    where: dict[tuple[str, str], list[Word]] = {}
    for word in qp.potential.terms:
        for pair in length_two_subpaths(word, cyclic):
            where.setdefault(pair, []).append(word)
    repeated = [(pair, words) for pair, words in where.items() if len(words) > 1]
    good = all(c >= 2 for c in counts.values()) and not repeated
    return GoodPotentialVerdict(good, counts, repeated, cyclic)


@dataclass(frozen=True)
class ArrowCertificate:
    """Shape of ``dS/da``: its terms and their first and last arrows."""

    arrow: str
    n_terms: int
    first_arrows: tuple[str, ...]
    last_arrows: tuple[str, ...]

    @property
    def ok(self) -> bool:
        n = self.n_terms
        return n >= 2 and len(set(self.first_arrows)) == n and len(set(self.last_arrows)) == n


@dataclass
class CertifiedDualizable:
    reason: str
    bound: int | None = None
    certificate: list[ArrowCertificate] = field(default_factory=list)


@dataclass
class Inconclusive:
    bound: int | None = None
    note: str = ""


@dataclass
class DualizabilityStatus:
    vertices: dict[int, CertifiedDualizable | ObstructionFound | Inconclusive]

    @property
    def delta(self) -> list[int]:
        return [v for v, s in self.vertices.items() if isinstance(s, CertifiedDualizable)]

    def __getitem__(self, v: int):
        return self.vertices[v]


def arrow_certificates(qp: QuiverWithPotential) -> list[ArrowCertificate]:
    out = []
    for a in qp.quiver.arrows:
        d = cyclic_derivative(qp.potential, a.name)
        words = [p.word for p in d.terms]
        out.append(
            ArrowCertificate(
                a.name,
                len(words),
                tuple(w[-1] for w in words if w),
                tuple(w[0] for w in words if w),
            )
        )
    return out


def syntactic_delta(qp: QuiverWithPotential, cyclic: bool = True) -> DualizabilityStatus:
    verdict = is_good_potential(qp, cyclic)
    if verdict.is_good:
        certs = arrow_certificates(qp)
        if all(c.ok for c in certs):
            return DualizabilityStatus(
                {v: CertifiedDualizable("syntactic", None, certs) for v in qp.quiver.vertices}
            )
        note = "good, but some derivative has two terms sharing an end arrow"
    else:
        note = "potential is not good"
    return DualizabilityStatus({v: Inconclusive(None, note) for v in qp.quiver.vertices})


def bounded_delta(qp: QuiverWithPotential, bound: int, vertices=None, ideal: BoundedIdeal | None = None) -> DualizabilityStatus:
    """Run the obstruction search at every vertex.

    ``CertifiedDualizable("bounded", L)`` means no obstruction exists among
    paths shorter than ``L``; it is not a proof for larger lengths.
    """
    ideal = ideal if ideal is not None and ideal.bound == bound else BoundedIdeal(qp, bound)
    out = {}
    for k in vertices if vertices is not None else qp.quiver.vertices:
        try:
            results = tilting_obstruction_search(qp, k, bound, ideal)
        except NoIncomingArrows:
            out[k] = Inconclusive(bound, "no incoming arrows")
            continue
        hits = [r for r in results if isinstance(r, ObstructionFound)]
        if hits:
            out[k] = hits[0]
        elif any(isinstance(r, Candidate) for r in results):
            out[k] = Inconclusive(bound, "solution outside the truncated ideal, not certified nonzero")
        else:
            out[k] = CertifiedDualizable("bounded", bound)
    return DualizabilityStatus(out)


def delta_status(qp: QuiverWithPotential, mode: str = "layered", bound: int = 6, cyclic: bool = True) -> DualizabilityStatus:
    if mode == "syntactic":
        return syntactic_delta(qp, cyclic)
    if mode == "bounded":
        return bounded_delta(qp, bound)
    if mode != "layered":
        raise ValueError(f"unknown mode {mode!r}")
    status = syntactic_delta(qp, cyclic)
    todo = [v for v, s in status.vertices.items() if not isinstance(s, CertifiedDualizable)]
    if todo:
        status.vertices.update(bounded_delta(qp, bound, todo).vertices)
    return status


def seiberg_dual_with_trace(qp: QuiverWithPotential, k: int, fuel: int = DEFAULT_FUEL, cyclic: bool = True) -> tuple[QuiverWithPotential, ReductionTrace]:
    if not is_good_potential(qp, cyclic).is_good:
        raise NotGood(f"potential of {qp.name} is not good")
    if not isinstance(syntactic_delta(qp, cyclic)[k], CertifiedDualizable):
        raise NotCertifiedDualizable(f"vertex {k} is not certified dualisable")
    pre = premutate(qp, k)
    groups = detect_related_arrows(pre.qp_tilde)
    if groups:
        raise RelatedArrows(groups)
    out, trace = integrate_massive(pre.qp_tilde, fuel)
    return QuiverWithPotential(out.quiver.with_arrows(out.quiver.arrows, f"sd{k}({qp.name})"), out.potential), trace


def seiberg_dual(qp: QuiverWithPotential, k: int, fuel: int = DEFAULT_FUEL, cyclic: bool = True) -> QuiverWithPotential:
    """Dual quiver with potential at ``k``; its Jacobian algebra presents End(T^k)."""
    return seiberg_dual_with_trace(qp, k, fuel, cyclic)[0]


@dataclass
class MassivePair:
    a: str
    b: str
    coefficient: Fraction
    companions: dict[Word, Fraction]  # sum of sigma_j * u_j, from dS/da
    partner: dict[Word, Fraction]  # v, from dS/db


@dataclass
class MassiveForm:
    pairs: list[MassivePair]
    rest: Potential


def decompose_massive_form(qp: QuiverWithPotential, mesonic=None) -> MassiveForm:
    """Split a potential into 2-cycles, their companion terms and a massless rest.

    With ``mesonic`` given, the mesonic arrow of each 2-cycle takes the
    ``b`` role; otherwise ``b`` is the larger arrow of the 2-cycle.
    """
    S = qp.potential
    groups = detect_related_arrows(qp)
    if groups:
        raise RelatedArrows(groups)
    pairs = []
    for t in two_cycle_terms(S):
        a, b = t.a, t.b
        if mesonic is not None:
            if a in mesonic and b not in mesonic:
                a, b = b, a
            elif a not in mesonic and b not in mesonic:
                raise NotInForm31(f"2-cycle {t.a} {t.b} has no mesonic arrow")
        da = cyclic_derivative(S, a).word_terms()
        db = cyclic_derivative(S, b).word_terms()
        da.pop((b,))
        db.pop((a,))
        pairs.append(MassivePair(a, b, t.coefficient, da, db))
    massive = {x for p in pairs for x in (p.a, p.b)}
    rest = {}
    for word, c in S.terms.items():
        hits = sum(1 for x in word if x in massive)
        if len(word) == 2 and hits:
            continue
        if hits > 1:
            raise NotInForm31(f"term {' '.join(word)} contains {hits} massive arrow occurrences")
        if hits == 0:
            rest[word] = c
    return MassiveForm(pairs, Potential(qp.quiver, rest, check=False))


def massive_form_substitution(qp: QuiverWithPotential, mesonic=None) -> Substitution:
    """Composite of the shifts ``a -> a - v/lam`` and ``b -> b - U/lam`` over all 2-cycles."""
    form = decompose_massive_form(qp, mesonic)
    phi = Substitution.identity(qp.quiver)
    for p in form.pairs:
        inv = -1 / p.coefficient
        img_a = {(p.a,): Fraction(1)}
        img_a.update({w: inv * c for w, c in p.partner.items()})
        img_b = {(p.b,): Fraction(1)}
        img_b.update({w: inv * c for w, c in p.companions.items()})
        phi = Substitution(qp.quiver, {p.a: img_a, p.b: img_b}).compose(phi)
    return phi


def theorem37_equivalence(premut: PremutationResult) -> Substitution:
    return massive_form_substitution(premut.qp_tilde, set(premut.mesonic))


def reduced_image(qp: QuiverWithPotential, phi: Substitution) -> tuple[Potential, QuiverWithPotential]:
    """``phi(S)`` split into its trivial part and the reduced QP left after dropping it."""
    image = apply_substitution(phi, qp.potential)
    triv, red = split_degree_two(image)
    massive = triv.arrows_used()
    q = qp.quiver.without(massive)
    return triv, QuiverWithPotential(q, Potential(q, red.terms, check=False))


@dataclass
class DualityReport:
    vertex: int
    qp_mutated: QuiverWithPotential
    qp_dual: QuiverWithPotential
    phi: Substitution
    phi_trivial_part: Potential
    phi_reduced: QuiverWithPotential
    agree_quiver: bool
    agree_potential: bool
    agree_phi: bool
    notes: list[str] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return self.agree_quiver and self.agree_potential and self.agree_phi


def same_quiver(x: QuiverWithPotential, y: QuiverWithPotential) -> bool:
    return set(x.quiver.vertices) == set(y.quiver.vertices) and set(x.quiver.arrows) == set(y.quiver.arrows)


def verify_duality(qp: QuiverWithPotential, k: int, fuel: int = DEFAULT_FUEL, cyclic: bool = True) -> DualityReport:
    dual = seiberg_dual(qp, k, fuel, cyclic)
    mutated = mutate(qp, k, fuel)
    pre = premutate(qp, k)
    phi = theorem37_equivalence(pre)
    triv, red = reduced_image(pre.qp_tilde, phi)
    notes = []
    agree_quiver = same_quiver(mutated, dual)
    if not agree_quiver:
        notes.append("mutated and dual quivers differ")
    agree_potential = agree_quiver and cyclically_equal(mutated.potential, dual.potential)
    if agree_quiver and not agree_potential:
        notes.append("potentials are not cyclically equal")
    agree_phi = same_quiver(red, dual) and cyclically_equal(dual.potential, red.potential)
    if not agree_phi:
        notes.append("reduced part of phi(S~) differs from the integrated potential")
    if phi.is_identity():
        notes.append("no 2-cycles after premutation; phi is the identity")
    return DualityReport(k, mutated, dual, phi, triv, red, agree_quiver, agree_potential, agree_phi, notes)

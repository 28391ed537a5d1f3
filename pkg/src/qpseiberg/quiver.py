"""Quivers, paths, cycles and potentials.

Words are tuples of arrow names written left to right in composition
order, so the rightmost arrow acts first: the word ``("b", "a")`` is the
path that follows ``a`` and then ``b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import InvalidQuiver, NotACycle

Word = tuple[str, ...]


@dataclass(frozen=True)
class Arrow:
    name: str
    src: int
    dst: int


class Quiver:
    """A finite quiver with vertices ``1..n`` and ordered, named arrows.

    Construction is lenient so that malformed input can be reported by
    :func:`validate`; operations that need a well-formed quiver check it.
    The arrow order (creation order) fixes all normal forms.
    """

    def __init__(self, vertices: Iterable[int], arrows: Iterable[Arrow], name: str = "Q"):
        self.vertices: tuple[int, ...] = tuple(vertices)
        self.arrows: tuple[Arrow, ...] = tuple(arrows)
        self.name = name
        self._by_name: dict[str, Arrow] = {}
        self._index: dict[str, int] = {}
        for i, arr in enumerate(self.arrows):
            self._by_name.setdefault(arr.name, arr)
            self._index.setdefault(arr.name, i)

    @classmethod
    def from_triples(cls, n: int, triples: Iterable[tuple[str, int, int]], name: str = "Q") -> Quiver:
        return cls(range(1, n + 1), (Arrow(*t) for t in triples), name)

    def __repr__(self) -> str:
        arrows = ", ".join(f"{a.name}:{a.src}->{a.dst}" for a in self.arrows)
        return f"Quiver({self.name!r}, vertices={list(self.vertices)}, arrows=[{arrows}])"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Quiver):
            return NotImplemented
        return self.vertices == other.vertices and self.arrows == other.arrows

    def __hash__(self) -> int:
        return hash((self.vertices, self.arrows))

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def arrow(self, name: str) -> Arrow:
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"no arrow named {name!r}") from None

    def arrow_names(self) -> list[str]:
        return [a.name for a in self.arrows]

    def index(self, name: str) -> int:
        return self._index[name]

    def sort_key(self, word: Word) -> tuple:
        """Lexicographic key of a word under the arrow order.

        Unknown names sort after every known arrow, by name.
        """
        n = len(self.arrows)
        idx = self._index
        return tuple((idx[x], "") if x in idx else (n, x) for x in word)

    def incoming(self, k: int) -> list[Arrow]:
        return [a for a in self.arrows if a.dst == k]

    def outgoing(self, k: int) -> list[Arrow]:
        return [a for a in self.arrows if a.src == k]

    def has_two_cycle_at(self, k: int) -> bool:
        targets = {a.dst for a in self.outgoing(k)}
        return any(a.src in targets for a in self.incoming(k))

    def path(self, word: Iterable[str], vertex: int | None = None) -> Path:
        """Build a :class:`Path`; ``vertex`` is only used for the trivial path."""
        word = tuple(word)
        if not word:
            if vertex is None:
                raise ValueError("a trivial path needs its vertex")
            return Path((), vertex, vertex)
        arrows = [self.arrow(x) for x in word]
        for left, right in zip(arrows, arrows[1:]):
            if left.src != right.dst:
                raise NotACycle(
                    f"word {' '.join(word)} does not compose at {right.name} -> {left.name}"
                )
        return Path(word, arrows[-1].src, arrows[0].dst)

    def is_composable(self, word: Word) -> bool:
        try:
            arrows = [self.arrow(x) for x in word]
        except KeyError:
            return False
        return all(l.src == r.dst for l, r in zip(arrows, arrows[1:]))

    def is_cycle(self, word: Word) -> bool:
        if not word or not self.is_composable(word):
            return False
        return self.arrow(word[-1]).src == self.arrow(word[0]).dst

    def with_arrows(self, arrows: Iterable[Arrow], name: str | None = None) -> Quiver:
        return Quiver(self.vertices, arrows, self.name if name is None else name)

    def without(self, names: Iterable[str], name: str | None = None) -> Quiver:
        drop = set(names)
        return self.with_arrows([a for a in self.arrows if a.name not in drop], name)


@dataclass(frozen=True)
class Path:
    """A path; ``word == ()`` denotes the trivial path at ``src == dst``."""

    word: Word
    src: int
    dst: int

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return " ".join(self.word) if self.word else f"e({self.src})"


def rotations(word: Word) -> Iterator[Word]:
    for i in range(len(word)):
        yield word[i:] + word[:i]


def _min_rotation(word: Word, key) -> Word:
    return min(rotations(word), key=key) if word else word


def cyclic_normal_form(quiver: Quiver, word: Iterable[str]) -> Path:
    """Return the rotation of a cycle that is smallest under the arrow order."""
    word = tuple(word)
    if not word:
        raise NotACycle("the empty word is not a cycle")
    path = quiver.path(word)
    if path.src != path.dst:
        raise NotACycle(f"word {' '.join(word)} does not close ({path.src} -> {path.dst})")
    best = _min_rotation(word, quiver.sort_key)
    base = quiver.arrow(best[-1]).src
    return Path(best, base, base)


def _coerce(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Potential:
    """A rational linear combination of cycles, kept in cyclic normal form.

    Terms are stored as ``word -> coefficient`` with ``word`` the minimal
    rotation under the owning quiver's arrow order, so two potentials on the
    same quiver are cyclically equivalent iff their term maps agree.
    With ``check=False`` words are not required to compose (used by the
    parser so :func:`validate` can report the fault).
    """

    __slots__ = ("quiver", "terms")

    def __init__(self, quiver: Quiver, terms: Mapping[Word, object] | Iterable[tuple[Word, object]] = (), check: bool = True):
        self.quiver = quiver
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, Fraction] = {}
        key = quiver.sort_key
        for word, coef in items:
            word = tuple(word)
            if not word:
                raise NotACycle("the empty word is not a cycle")
            if check and not quiver.is_cycle(word):
                raise NotACycle(f"term {' '.join(word)} is not a cycle of {quiver.name}")
            nf = _min_rotation(word, key)
            acc[nf] = acc.get(nf, Fraction(0)) + _coerce(coef)
        self.terms: dict[Word, Fraction] = {
            w: c for w, c in sorted(acc.items(), key=lambda wc: key(wc[0])) if c != 0
        }

    @classmethod
    def zero(cls, quiver: Quiver) -> Potential:
        return cls(quiver)

    def rebind(self, quiver: Quiver) -> Potential:
        """The same potential, renormalized under another quiver's arrow order."""
        return Potential(quiver, self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Word, Fraction]]:
        return iter(self.terms.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Potential):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: Potential) -> Potential:
        return Potential(self.quiver, list(self.terms.items()) + list(other.terms.items()), check=False)

    def __neg__(self) -> Potential:
        return self.scale(-1)

    def __sub__(self, other: Potential) -> Potential:
        return self + (-other)

    def scale(self, c) -> Potential:
        c = _coerce(c)
        return Potential(self.quiver, {w: c * v for w, v in self.terms.items()}, check=False)

    def coefficient(self, word: Iterable[str]) -> Fraction:
        word = _min_rotation(tuple(word), self.quiver.sort_key)
        return self.terms.get(word, Fraction(0))

    def degree_part(self, pred) -> Potential:
        return Potential(self.quiver, {w: c for w, c in self.terms.items() if pred(len(w))}, check=False)

    def arrows_used(self) -> set[str]:
        return {x for w in self.terms for x in w}

    def occurrences(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for w in self.terms:
            for x in w:
                counts[x] = counts.get(x, 0) + 1
        return counts

    def __repr__(self) -> str:
        return f"Potential({format_terms(self.terms.items()) or '0'})"


def format_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_terms(items: Iterable[tuple[Word, Fraction]]) -> str:
    return " ".join(f"{format_coef(c)} {' '.join(w)} ;" for w, c in items)


@dataclass(frozen=True)
class QuiverWithPotential:
    quiver: Quiver
    potential: Potential

    def __post_init__(self):
        if self.potential.quiver is not self.quiver and self.potential.quiver != self.quiver:
            object.__setattr__(self, "potential", self.potential.rebind(self.quiver))

    @classmethod
    def build(cls, quiver: Quiver, terms=()) -> QuiverWithPotential:
        return cls(quiver, Potential(quiver, terms))

    @property
    def name(self) -> str:
        return self.quiver.name

    def require_valid(self, require_cycle_cover: bool = False) -> None:
        report = validate(self, require_cycle_cover)
        if not report.ok:
            raise InvalidQuiver(report)


@dataclass
class ValidationReport:
    loops: list[str] = field(default_factory=list)
    duplicate_names: list[str] = field(default_factory=list)
    unknown_vertices: list[str] = field(default_factory=list)
    unknown_arrows: list[str] = field(default_factory=list)
    noncomposable_terms: list[Word] = field(default_factory=list)
    uncovered_vertices: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems()

    def problems(self) -> list[str]:
        out = [f"loop arrow {a}" for a in self.loops]
        out += [f"duplicate arrow name {a}" for a in self.duplicate_names]
        out += [f"arrow {a} references a missing vertex" for a in self.unknown_vertices]
        out += [f"potential uses unknown arrow {a}" for a in self.unknown_arrows]
        out += [f"potential term {' '.join(w)} is not a composable cycle" for w in self.noncomposable_terms]
        out += [f"vertex {v} lies on no cycle" for v in self.uncovered_vertices]
        return out

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "loops": self.loops,
            "duplicate_names": self.duplicate_names,
            "unknown_vertices": self.unknown_vertices,
            "unknown_arrows": self.unknown_arrows,
            "noncomposable_terms": [list(w) for w in self.noncomposable_terms],
            "uncovered_vertices": self.uncovered_vertices,
        }


def vertices_on_cycles(quiver: Quiver) -> set[int]:
    """Vertices lying on some oriented cycle (non-trivial strongly connected part)."""
    import networkx as nx

    g = nx.MultiDiGraph()
    g.add_nodes_from(quiver.vertices)
    g.add_edges_from((a.src, a.dst) for a in quiver.arrows)
    covered: set[int] = set()
    for comp in nx.strongly_connected_components(g):
        if len(comp) > 1:
            covered |= comp
        else:
            (v,) = comp
            if g.has_edge(v, v):
                covered.add(v)
    return covered


def validate(qp: QuiverWithPotential, require_cycle_cover: bool = False) -> ValidationReport:
    q = qp.quiver
    report = ValidationReport()
    seen: set[str] = set()
    verts = set(q.vertices)
    for a in q.arrows:
        if a.src == a.dst:
            report.loops.append(a.name)
        if a.name in seen and a.name not in report.duplicate_names:
            report.duplicate_names.append(a.name)
        seen.add(a.name)
        if a.src not in verts or a.dst not in verts:
            report.unknown_vertices.append(a.name)
    for word in qp.potential.terms:
        missing = [x for x in word if x not in q]
        for x in missing:
            if x not in report.unknown_arrows:
                report.unknown_arrows.append(x)
        if not missing and not q.is_cycle(word):
            report.noncomposable_terms.append(word)
    if require_cycle_cover:
        covered = vertices_on_cycles(q)
        report.uncovered_vertices = [v for v in q.vertices if v not in covered]
    return report


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(quiver: Quiver) -> str:
    lines = [f"digraph {_dot_id(quiver.name)} {{"]
    lines += [f"  {v};" for v in quiver.vertices]
    lines += [f"  {a.src} -> {a.dst} [label={_dot_id(a.name)}];" for a in quiver.arrows]
    lines.append("}")
    return "\n".join(lines) + "\n"

"""Arithmetic in the path algebra over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import EndpointMismatch, InhomogeneousElement, NotInvertible
from .linalg import rank
from .quiver import Path, Potential, Quiver, Word, format_coef


class PathElement:
    """A finite rational combination of paths.

    ``endpoints`` is an optional ``(src, dst)`` tag; when set every path
    shares it, which also lets a zero element remember its component.
    """

    __slots__ = ("terms", "endpoints")

    def __init__(self, terms: Mapping[Path, object] | Iterable[tuple[Path, object]] = (), endpoints: tuple[int, int] | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Path, Fraction] = {}
        for p, c in items:
            acc[p] = acc.get(p, 0) + (c if isinstance(c, Fraction) else Fraction(c))
        self.terms = {p: c for p, c in acc.items() if c != 0}
        if endpoints is not None:
            for p in self.terms:
                if (p.src, p.dst) != endpoints:
                    raise InhomogeneousElement(f"path {p} is not {endpoints[0]} -> {endpoints[1]}")
        self.endpoints = endpoints

    @classmethod
    def from_words(cls, quiver: Quiver, items: Iterable[tuple[Word, object]], endpoints=None) -> PathElement:
        return cls(((quiver.path(w), c) for w, c in items), endpoints)

    @classmethod
    def arrow(cls, quiver: Quiver, name: str) -> PathElement:
        a = quiver.arrow(name)
        return cls({Path((name,), a.src, a.dst): 1}, (a.src, a.dst))

    @classmethod
    def trivial(cls, vertex: int) -> PathElement:
        return cls({Path((), vertex, vertex): 1}, (vertex, vertex))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PathElement):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def _tag_with(self, other: PathElement):
        return self.endpoints if self.endpoints == other.endpoints else None

    def __add__(self, other: PathElement) -> PathElement:
        return PathElement(list(self.terms.items()) + list(other.terms.items()), self._tag_with(other))

    def __neg__(self) -> PathElement:
        return self.scale(-1)

    def __sub__(self, other: PathElement) -> PathElement:
        return self + (-other)

    def scale(self, c) -> PathElement:
        c = Fraction(c)
        return PathElement({p: c * v for p, v in self.terms.items()}, self.endpoints)

    def __mul__(self, other):
        if isinstance(other, PathElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def homogeneous_endpoints(self) -> tuple[int, int] | None:
        if self.endpoints is not None:
            return self.endpoints
        ends = {(p.src, p.dst) for p in self.terms}
        return ends.pop() if len(ends) == 1 else None

    def word_terms(self) -> dict[Word, Fraction]:
        return {p.word: c for p, c in self.terms.items()}

    def lengths(self) -> list[int]:
        return [len(p) for p in self.terms]

    def sorted_terms(self, quiver: Quiver) -> list[tuple[Path, Fraction]]:
        return sorted(self.terms.items(), key=lambda pc: (len(pc[0]), quiver.sort_key(pc[0].word), pc[0].src))

    def format(self, quiver: Quiver) -> str:
        if not self.terms:
            return "0"
        return " ".join(f"{format_coef(c)} {p} ;" for p, c in self.sorted_terms(quiver))

    def __repr__(self) -> str:
        body = " ".join(f"{format_coef(c)} {p} ;" for p, c in self.terms.items()) or "0"
        return f"PathElement({body})"


def multiply(x: PathElement, y: PathElement) -> PathElement:
    """Product ``x * y``: follow ``y`` and then ``x``; non-composable pairs vanish."""
    out: dict[Path, Fraction] = {}
    for p, c in x.terms.items():
        for r, d in y.terms.items():
            if p.src != r.dst:
                continue
            prod = Path(p.word + r.word, r.src, p.dst)
            out[prod] = out.get(prod, 0) + c * d
    tag = None
    if x.endpoints is not None and y.endpoints is not None and x.endpoints[0] == y.endpoints[1]:
        tag = (y.endpoints[0], x.endpoints[1])
    return PathElement(out, tag)


def cyclic_derivative(S: Potential, x: str) -> PathElement:
    """Sum over occurrences of ``x`` of the rotated remainder after ``x``."""
    arr = S.quiver.arrow(x)
    src, dst = arr.dst, arr.src
    out: dict[Path, Fraction] = {}
    for word, c in S.terms.items():
        for i, y in enumerate(word):
            if y == x:
                p = Path(word[i + 1:] + word[:i], src, dst)
                out[p] = out.get(p, 0) + c
    return PathElement(out, (src, dst))


def cyclic_derivative_dual(S: Potential, xi: Mapping[str, object]) -> PathElement:
    """Derivative along a general functional ``xi`` on the arrow span."""
    total = PathElement()
    for x, c in xi.items():
        total = total + cyclic_derivative(S, x).scale(c)
    return total


def cyclically_equal(S: Potential, T: Potential) -> bool:
    return S.terms == Potential(S.quiver, T.terms, check=False).terms


def substitute_words(items: Iterable[tuple[Word, Fraction]], images: Mapping[str, Mapping[Word, Fraction]]) -> dict[Word, Fraction]:
    """Apply an arrow-wise substitution to a combination of words.

    ``images`` maps an arrow name to a word combination; other arrows are
    fixed. No endpoint or invertibility checks happen here.
    """
    out: dict[Word, Fraction] = {}
    for word, coef in items:
        partial: dict[Word, Fraction] = {(): Fraction(coef)}
        for x in word:
            img = images.get(x)
            if img is None:
                partial = {w + (x,): c for w, c in partial.items()}
                continue
            nxt: dict[Word, Fraction] = {}
            for w, c in partial.items():
                for iw, ic in img.items():
                    k = w + iw
                    nxt[k] = nxt.get(k, 0) + c * ic
            partial = {k: v for k, v in nxt.items() if v}
            if not partial:
                break
        for w, c in partial.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return out


def substitute_potential(S: Potential, images: Mapping[str, Mapping[Word, Fraction]], quiver: Quiver | None = None) -> Potential:
    return Potential(quiver or S.quiver, substitute_words(S.terms.items(), images).items(), check=False)


class Substitution:
    """An algebra endomorphism of the path algebra fixed by arrow images.

    Unlisted arrows are fixed. Each image must run between the endpoints of
    its arrow, and the linear (single-arrow) part must be invertible.
    """

    def __init__(self, quiver: Quiver, images: Mapping[str, PathElement | Mapping[Word, object]], check_invertible: bool = True):
        self.quiver = quiver
        self.images: dict[str, dict[Word, Fraction]] = {}
        for x, img in images.items():
            a = quiver.arrow(x)
            if isinstance(img, PathElement):
                for p in img.terms:
                    if (p.src, p.dst) != (a.src, a.dst) or not p.word:
                        raise EndpointMismatch(f"image of {x} contains {p} ({p.src} -> {p.dst})")
                words = img.word_terms()
            else:
                words = {tuple(w): Fraction(c) for w, c in img.items() if c}
                for w in words:
                    if not w:
                        raise EndpointMismatch(f"image of {x} contains a trivial path")
                    p = quiver.path(w)
                    if (p.src, p.dst) != (a.src, a.dst):
                        raise EndpointMismatch(f"image of {x} contains {' '.join(w)} ({p.src} -> {p.dst})")
            if words != {(x,): Fraction(1)}:
                self.images[x] = words
        if check_invertible and not self.is_linear_part_invertible():
            raise NotInvertible("linear part of the substitution is singular")

    @classmethod
    def identity(cls, quiver: Quiver) -> Substitution:
        return cls(quiver, {})

    def image(self, x: str) -> PathElement:
        a = self.quiver.arrow(x)
        words = self.images.get(x, {(x,): Fraction(1)})
        return PathElement(((Path(w, a.src, a.dst), c) for w, c in words.items()), (a.src, a.dst))

    def linear_part(self) -> dict[str, dict[str, Fraction]]:
        out = {}
        for a in self.quiver.arrows:
            words = self.images.get(a.name, {(a.name,): Fraction(1)})
            out[a.name] = {w[0]: c for w, c in words.items() if len(w) == 1}
        return out

    def is_linear_part_invertible(self) -> bool:
        rows = list(self.linear_part().values())
        order = {a.name: i for i, a in enumerate(self.quiver.arrows)}
        return rank(rows, key=order.__getitem__) == len(self.quiver.arrows)

    def __call__(self, v):
        return apply_substitution(self, v)

    def compose(self, other: Substitution) -> Substitution:
        """``self ∘ other``: apply ``other`` first, then ``self``."""
        images = {}
        for a in self.quiver.arrows:
            inner = other.images.get(a.name, {(a.name,): Fraction(1)})
            images[a.name] = substitute_words(inner.items(), self.images)
        return Substitution(self.quiver, images, check_invertible=False)

    def is_identity(self) -> bool:
        return not self.images

    def __repr__(self) -> str:
        parts = []
        for x, words in self.images.items():
            body = " ".join(f"{format_coef(c)} {' '.join(w)} ;" for w, c in words.items()) or "0"
            parts.append(f"{x} -> {body}")
        return "Substitution(" + ", ".join(parts) + ")"


def apply_substitution(phi: Substitution, v):
    if isinstance(v, Potential):
        return substitute_potential(v, phi.images, v.quiver)
    if isinstance(v, PathElement):
        out: dict[Path, Fraction] = {}
        for p, c in v.terms.items():
            if not p.word:
                out[p] = out.get(p, 0) + c
                continue
            for w, d in substitute_words([(p.word, c)], phi.images).items():
                q = Path(w, p.src, p.dst)
                out[q] = out.get(q, 0) + d
        return PathElement(out, v.endpoints)
    raise TypeError(f"cannot substitute into {type(v).__name__}")

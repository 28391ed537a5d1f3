"""Line-based text format for quivers with potentials.

::

    quiver triangle
    vertices 3
    arrow a 1 2
    arrow b 2 3
    arrow c 3 1
    potential
    1 c b a ;
    end

Arrows in a term are listed in composition order (rightmost applied
first); coefficients are ``p`` or ``p/q``. ``#`` starts a comment.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .quiver import Arrow, Potential, Quiver, QuiverWithPotential, Word, format_coef


def parse_coef(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad coefficient {tok!r}") from None


def parse_terms(text: str, line: int | None = None) -> list[tuple[Word, Fraction]]:
    """Parse ``<coef> <arrow>... ;`` terms; the final ``;`` may be omitted."""
    out = []
    for chunk in text.split(";"):
        toks = chunk.split()
        if not toks:
            continue
        try:
            coef = parse_coef(toks[0])
        except ValueError as exc:
            raise ParseError(str(exc), line) from None
        if coef == 0:
            raise ParseError("zero coefficient", line)
        if len(toks) < 2:
            raise ParseError("term has no arrows", line)
        out.append((tuple(toks[1:]), coef))
    return out


def parse_qp(text: str) -> QuiverWithPotential:
    name = None
    n = None
    arrows: list[Arrow] = []
    terms: list[tuple[Word, Fraction]] = []
    state = "header"
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        head = toks[0]
        if state == "potential":
            if line == "end":
                state = "done"
                continue
            if not line.endswith(";"):
                raise ParseError("potential term must end with ';'", lineno)
            terms.extend(parse_terms(line, lineno))
            continue
        if state == "done":
            raise ParseError(f"unexpected content after 'end': {line!r}", lineno)
        if head == "quiver":
            if len(toks) != 2:
                raise ParseError("expected 'quiver <name>'", lineno)
            if name is not None:
                raise ParseError("duplicate 'quiver' line", lineno)
            name = toks[1]
        elif head == "vertices":
            if len(toks) != 2 or not toks[1].isdigit():
                raise ParseError("expected 'vertices <n>'", lineno)
            if n is not None:
                raise ParseError("duplicate 'vertices' line", lineno)
            n = int(toks[1])
        elif head == "arrow":
            if n is None:
                raise ParseError("'arrow' before 'vertices'", lineno)
            if len(toks) != 4:
                raise ParseError("expected 'arrow <name> <src> <dst>'", lineno)
            try:
                src, dst = int(toks[2]), int(toks[3])
            except ValueError:
                raise ParseError("arrow endpoints must be integers", lineno) from None
            arrows.append(Arrow(toks[1], src, dst))
        elif head == "potential":
            if len(toks) != 1:
                raise ParseError("expected 'potential' on its own line", lineno)
            state = "potential"
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    if state == "potential":
        raise ParseError("potential block not closed with 'end'")
    if n is None:
        raise ParseError("missing 'vertices' line")
    q = Quiver(range(1, n + 1), arrows, name or "Q")
    return QuiverWithPotential(q, Potential(q, terms, check=False))


def serialize_qp(qp: QuiverWithPotential) -> str:
    q = qp.quiver
    lines = [f"quiver {q.name}", f"vertices {len(q.vertices)}"]
    lines += [f"arrow {a.name} {a.src} {a.dst}" for a in q.arrows]
    lines.append("potential")
    lines += [f"{format_coef(c)} {' '.join(w)} ;" for w, c in qp.potential]
    lines.append("end")
    return "\n".join(lines) + "\n"

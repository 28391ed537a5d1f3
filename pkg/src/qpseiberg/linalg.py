"""Sparse exact linear algebra over the rationals.

Vectors are plain ``dict``s mapping a basis key to a nonzero
:class:`~fractions.Fraction`. :class:`Echelon` keeps a basis with
pairwise distinct leading keys (the maximal key of each row under a
caller-supplied order) and can optionally remember how each row was
combined from the vectors that were fed in, so that membership answers
come with a replayable certificate.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable

Vector = dict


def axpy(y: dict, a: Fraction, x: dict) -> None:
    """In place ``y += a * x`` dropping zeros."""
    if a == 0:
        return
    for k, v in x.items():
        s = y.get(k, 0) + a * v
        if s:
            y[k] = s
        else:
            y.pop(k, None)


class Echelon:
    def __init__(self, key: Callable[[Hashable], object] | None = None, track: bool = False):
        self.key = key or (lambda k: k)
        self.track = track
        self.rows: dict[Hashable, dict] = {}
        self.combos: dict[Hashable, dict] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def _reduce(self, v: dict, full: bool) -> tuple[dict, dict]:
        v = dict(v)
        used: dict = {}
        rows, key = self.rows, self.key
        while v:
            if full:
                cands = [k for k in v if k in rows]
                if not cands:
                    break
                lead = max(cands, key=key)
            else:
                lead = max(v, key=key)
                if lead not in rows:
                    break
            c = v[lead]
            axpy(v, -c, rows[lead])
            if self.track:
                axpy(used, c, self.combos[lead])
        return v, used

    def normal_form(self, v: dict) -> dict:
        return self._reduce(v, full=True)[0]

    def contains(self, v: dict) -> bool:
        return not self._reduce(v, full=False)[0]

    def express(self, v: dict) -> dict | None:
        """Coefficients ``t`` with ``v == sum(t[g] * generator g)``, or ``None``."""
        rest, used = self._reduce(v, full=False)
        return None if rest else used

    def add(self, v: dict, label: Hashable = None) -> dict | None:
        """Insert ``v``; returns ``None`` if it was new, else its dependency.

        The dependency (only with ``track``) is ``{label: 1} - t`` where
        ``v = sum t[g] * g``, i.e. a vanishing combination of the inputs.
        """
        rest, used = self._reduce(v, full=False)
        if not rest:
            if not self.track:
                return {}
            dep = {label: Fraction(1)}
            axpy(dep, Fraction(-1), used)
            return dep
        lead = max(rest, key=self.key)
        inv = 1 / Fraction(rest[lead])
        self.rows[lead] = {k: c * inv for k, c in rest.items()}
        if self.track:
            combo = {label: Fraction(1)}
            axpy(combo, Fraction(-1), used)
            self.combos[lead] = {k: c * inv for k, c in combo.items()}
        return None


def rank(rows: Iterable[dict], key=None) -> int:
    ech = Echelon(key)
    for r in rows:
        ech.add(r)
    return len(ech)


def nullspace(columns: list[dict], key=None) -> list[dict[int, Fraction]]:
    """Basis of ``{c : sum_i c[i] * columns[i] == 0}`` as sparse index maps.

    Each basis vector has coefficient 1 at its own (largest) index and only
    earlier indices otherwise, so the basis follows the column order.
    """
    ech = Echelon(key, track=True)
    basis = []
    for i, col in enumerate(columns):
        dep = ech.add(col, i)
        if dep is not None:
            basis.append(dep)
    return basis

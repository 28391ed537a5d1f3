"""Built-in quivers with potentials."""

from __future__ import annotations

from importlib import resources

from ..quiver import QuiverWithPotential
from ..textio import parse_qp

NAMES = ("dp1", "dp1-collection-quiver", "triangle", "a3")


def fixture_text(name: str) -> str:
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(NAMES)}")
    return resources.files(__name__).joinpath(f"{name}.qp").read_text(encoding="utf-8")


def load(name: str) -> QuiverWithPotential:
    return parse_qp(fixture_text(name))

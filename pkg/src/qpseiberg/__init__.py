"""Quivers with potentials: mutation, Seiberg duality and their comparison."""

from .algebra import (
    PathElement,
    Substitution,
    apply_substitution,
    cyclic_derivative,
    cyclically_equal,
    multiply,
)
from .jacobian import (
    BoundedIdeal,
    ideal_membership_bounded,
    jacobian_relations,
    tilting_obstruction_search,
)
from .mutation import mutate, premutate
from .quiver import (
    Arrow,
    Path,
    Potential,
    Quiver,
    QuiverWithPotential,
    cyclic_normal_form,
    export_dot,
    validate,
)
from .reduction import detect_related_arrows, integrate_massive, reduce, split_degree_two
from .seiberg import (
    is_good_potential,
    seiberg_dual,
    syntactic_delta,
    theorem37_equivalence,
    verify_duality,
)
from .textio import parse_qp, serialize_qp

__all__ = [
    "PathElement",
    "Substitution",
    "apply_substitution",
    "cyclic_derivative",
    "cyclically_equal",
    "multiply",
    "BoundedIdeal",
    "ideal_membership_bounded",
    "jacobian_relations",
    "tilting_obstruction_search",
    "mutate",
    "premutate",
    "Arrow",
    "Path",
    "Potential",
    "Quiver",
    "QuiverWithPotential",
    "cyclic_normal_form",
    "export_dot",
    "validate",
    "detect_related_arrows",
    "integrate_massive",
    "reduce",
    "split_degree_two",
    "is_good_potential",
    "seiberg_dual",
    "syntactic_delta",
    "theorem37_equivalence",
    "verify_duality",
    "parse_qp",
    "serialize_qp",
]

__version__ = "0.1.0"

"""Exact weighted growth series of virtually abelian groups.

Four series per weighted group: standard, relative to a subgroup, coset,
and conjugacy, each returned as an exact rational function together with
its coefficient prefix, plus an independent brute-force oracle for
cross-verification.
"""

from .group import (
    GroupElement,
    Generator,
    SubgroupResolved,
    VAGroupData,
    load_group,
    load_subgroup,
    resolve_subgroup,
    validate,
)
from .growth import GrowthEngine
from .intlinalg import Lattice, hnf, lattice_from_generators
from .oracle import ball, oracle_counts
from .series import InsufficientData, RationalFunction, expand, make_rational, reconstruct

__all__ = [
    "GroupElement",
    "Generator",
    "SubgroupResolved",
    "VAGroupData",
    "load_group",
    "load_subgroup",
    "resolve_subgroup",
    "validate",
    "GrowthEngine",
    "Lattice",
    "hnf",
    "lattice_from_generators",
    "ball",
    "oracle_counts",
    "InsufficientData",
    "RationalFunction",
    "expand",
    "make_rational",
    "reconstruct",
]

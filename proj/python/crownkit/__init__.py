"""Finite permutation groups: block systems, maximal overgroup counts, crowns."""

from ._core import (
    CapError,
    Group,
    InputError,
    Perm,
    all_block_systems,
    chief_factors,
    crowns,
    group,
    group_from_generators,
    is_isomorphic,
    max_count,
    maximal_block_systems,
    run_verify,
)

__all__ = [
    "CapError",
    "Group",
    "InputError",
    "Perm",
    "all_block_systems",
    "chief_factors",
    "crowns",
    "group",
    "group_from_generators",
    "is_isomorphic",
    "max_count",
    "maximal_block_systems",
    "run_verify",
]

__version__ = "0.1.0"

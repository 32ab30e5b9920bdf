"""Stallings automata for finitely generated subgroups of free groups."""

from ._stallings import (
    InvalidInput,
    PreconditionViolation,
    ResourceLimit,
    Subgroup,
    are_conjugate,
    cyclic_reduce,
    enumerate_index,
    hall_count,
    reduce,
    relative_order,
    sample_subgroup,
    todd_coxeter,
)

__all__ = [
    "InvalidInput",
    "PreconditionViolation",
    "ResourceLimit",
    "Subgroup",
    "are_conjugate",
    "cyclic_reduce",
    "enumerate_index",
    "hall_count",
    "reduce",
    "relative_order",
    "sample_subgroup",
    "todd_coxeter",
]

"""Index calculus in ideal class groups of number fields."""

from ._core import (
    Field,
    NfdlogError,
    Session,
    __version__,
    bqf_class_group,
    descent_schedule,
    enumerate_class_group,
    solve_E0,
)

__all__ = [
    "Field",
    "NfdlogError",
    "Session",
    "__version__",
    "bqf_class_group",
    "descent_schedule",
    "enumerate_class_group",
    "solve_E0",
]

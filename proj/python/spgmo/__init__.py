"""Scaled proximal gradient methods for multiobjective composite optimization.

A thin wrapper over the C++ core: problem constructors, the certified
direction subproblem, the solver family (pgmo, spgmo, spgmo-ls, apgmo,
aspgmo, apgmo-sc, aspgmo-sc) and merit/gap diagnostics.
"""

from ._core import (
    ConfigError,
    InvalidInputError,
    IterationRecord,
    Problem,
    SolveReport,
    direction,
    example_3_1,
    example_4_4,
    merit_w,
    problem_from_json,
    quadratic_family,
    sample_starts,
    scaled_gap,
    solve,
)

__all__ = [
    "ConfigError",
    "InvalidInputError",
    "IterationRecord",
    "Problem",
    "SolveReport",
    "direction",
    "example_3_1",
    "example_4_4",
    "merit_w",
    "problem_from_json",
    "quadratic_family",
    "sample_starts",
    "scaled_gap",
    "solve",
]

__version__ = "0.1.0"

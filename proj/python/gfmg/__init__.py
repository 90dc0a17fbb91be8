"""Ghost-fluid multigrid solver for -(gamma u')' = f with jumps [u] = gD and [gamma u'] = gN."""

from ._core import (
    ConfigError,
    Example,
    GridSpec,
    compare_ddm,
    convergence_factor,
    convergence_study,
    eval_jet,
    make_example,
    preset,
    preset_names,
    solve,
    solve_direct,
)

__all__ = [
    "ConfigError",
    "Example",
    "GridSpec",
    "compare_ddm",
    "convergence_factor",
    "convergence_study",
    "eval_jet",
    "make_example",
    "preset",
    "preset_names",
    "solve",
    "solve_direct",
]

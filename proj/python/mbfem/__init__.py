"""Galerkin solver for nonlocal parabolic systems on moving intervals."""

from ._core import (
    BoundViolationError,
    DimensionError,
    DomainError,
    FESpace,
    MissingExactSolutionError,
    NonFiniteError,
    ParseError,
    Problem,
    RateFit,
    RunConfig,
    SingularMatrixError,
    ValidationError,
    build_space,
    convergence_study,
    example1,
    example1_forcing,
    example2,
    fit_slope,
    interpolate,
    l2_norm,
    measure,
    parse_config,
    parse_problem,
    resolve_problem,
    solve,
    validate,
)

__all__ = [name for name in dir() if not name.startswith("_")]

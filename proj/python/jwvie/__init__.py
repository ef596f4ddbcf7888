"""Jacobi-wavelet collocation for third-kind Volterra integral equations."""

from ._core import (
    DomainError,
    JacobiParams,
    NumericError,
    QuadratureRule,
    VIEProblem,
    WaveletBasis,
    WaveletSolution,
    collocation_points,
    eval_jacobi,
    eval_jacobi_derivative,
    eval_weight,
    gauss_jacobi_rule,
    jacobi_norm,
    make_benchmark,
    max_error_at_collocation,
    project,
    remainder_constant,
    run_convergence_study,
    select_basis,
    solve,
    weighted_l2_error,
)

__all__ = [name for name in dir() if not name.startswith("_")]

"""Quantum walks on a cycle with one chord."""

from ._core import (
    ConvergenceError,
    DegenerateBasisError,
    DomainError,
    Graph,
    RootCountError,
    cheb_t,
    cheb_u,
    dark_state_count,
    determinant_value,
    eigenvalues,
    eigenvectors,
    largest_eigenstate,
    largest_eigenvalue_asymptotic,
    limiting_distribution,
    perturbative_energies,
    return_probability,
    survival,
    verify_identity,
)

__all__ = [
    "ConvergenceError",
    "DegenerateBasisError",
    "DomainError",
    "Graph",
    "RootCountError",
    "cheb_t",
    "cheb_u",
    "dark_state_count",
    "determinant_value",
    "eigenvalues",
    "eigenvectors",
    "largest_eigenstate",
    "largest_eigenvalue_asymptotic",
    "limiting_distribution",
    "perturbative_energies",
    "return_probability",
    "survival",
    "verify_identity",
]

"""Quantum autonomous oscillator in the hard excitation regime.

Lindblad model in a truncated Fock space, three routes to its stationary
populations, the regime classification, the soft-excitation comparison and
the classical limit.
"""
from .errors import (
    DegenerateKernel,
    DimensionMismatch,
    InvalidDensityMatrix,
    NonConvergence,
    NonPositive,
    SingularSystem,
    SolverError,
    StepTooLarge,
)
from .fock import DensityMatrix, FockOperator, FockSpace
from .model import HardParams, SoftParams

__all__ = [
    "DegenerateKernel",
    "DensityMatrix",
    "DimensionMismatch",
    "FockOperator",
    "FockSpace",
    "HardParams",
    "InvalidDensityMatrix",
    "NonConvergence",
    "NonPositive",
    "SingularSystem",
    "SoftParams",
    "SolverError",
    "StepTooLarge",
]

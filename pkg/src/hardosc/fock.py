"""Truncated Fock-space linear algebra.

Operators are dense ``d x d`` complex matrices indexed by the number states
``|0>, ..., |d-1>``.  Everything here is immutable once built.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, InvalidDensityMatrix

HERM_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-8


@dataclass(frozen=True)
class FockSpace:
    """Number states ``|0>`` ... ``|dim-1>``."""

    dim: int

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 4:
            # a^3 kills everything below |3>; smaller spaces are degenerate
            raise ValueError(f"Fock space dimension must be an integer >= 4, got {self.dim}")


@dataclass(frozen=True, eq=False)
class FockOperator:
    """Dense operator on a truncated Fock space."""

    space: FockSpace
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        d = self.space.dim
        if m.shape != (d, d):
            raise DimensionMismatch(f"expected a {d}x{d} matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("operator entries must be finite")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.space.dim

    def dag(self) -> FockOperator:
        return FockOperator(self.space, self.entries.conj().T)

    def _check(self, other: FockOperator):
        if other.space != self.space:
            raise DimensionMismatch(f"spaces differ: {self.space.dim} vs {other.space.dim}")

    def __matmul__(self, other: FockOperator) -> FockOperator:
        self._check(other)
        return FockOperator(self.space, self.entries @ other.entries)

    def __add__(self, other: FockOperator) -> FockOperator:
        self._check(other)
        return FockOperator(self.space, self.entries + other.entries)

    def __sub__(self, other: FockOperator) -> FockOperator:
        self._check(other)
        return FockOperator(self.space, self.entries - other.entries)

    def __mul__(self, scalar) -> FockOperator:
        return FockOperator(self.space, scalar * self.entries)

    __rmul__ = __mul__

    def __neg__(self) -> FockOperator:
        return FockOperator(self.space, -self.entries)

    def trace(self) -> complex:
        return complex(np.trace(self.entries))


def annihilation(space: FockSpace) -> FockOperator:
    """Bose lowering operator, ``<n-1|a|n> = sqrt(n)``."""
    return FockOperator(space, np.diag(np.sqrt(np.arange(1, space.dim)), 1))


def creation(space: FockSpace) -> FockOperator:
    return annihilation(space).dag()


def number(space: FockSpace) -> FockOperator:
    return FockOperator(space, np.diag(np.arange(space.dim, dtype=float)))


def identity(space: FockSpace) -> FockOperator:
    return FockOperator(space, np.eye(space.dim))


def projector(space: FockSpace, n: int) -> FockOperator:
    """``|n><n|``."""
    m = np.zeros((space.dim, space.dim))
    m[n, n] = 1.0
    return FockOperator(space, m)


def commutator(x: FockOperator, y: FockOperator) -> FockOperator:
    return x @ y - y @ x


def dissipator(R: FockOperator, rho: FockOperator) -> FockOperator:
    """Dissipative action of one channel, ``2 R rho R^+ - R^+R rho - rho R^+R``.

    This is ``[R rho, R^+] + [R, rho R^+]`` expanded, so the normalization
    carries a factor 2 relative to the usual ``L rho L^+ - {L^+L, rho}/2``.
    """
    R._check(rho)
    r = R.entries
    rd = r.conj().T
    rr = rd @ r
    x = rho.entries
    return FockOperator(R.space, 2 * r @ x @ rd - rr @ x - x @ rr)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite operator.

    Raises
    ------
    InvalidDensityMatrix
        If any of the three properties fails beyond its tolerance.
    """

    op: FockOperator
    herm_tol: float = HERM_TOL
    trace_tol: float = TRACE_TOL
    psd_tol: float = PSD_TOL

    def __post_init__(self):
        m = self.op.entries
        herm_err = np.max(np.abs(m - m.conj().T))
        if herm_err > self.herm_tol:
            raise InvalidDensityMatrix(f"not Hermitian: max |rho - rho^+| = {herm_err:.3e}")
        tr = np.trace(m)
        if abs(tr - 1) > self.trace_tol:
            raise InvalidDensityMatrix(f"trace {tr.real:.15g} differs from 1")
        lam = np.linalg.eigvalsh((m + m.conj().T) / 2)[0]
        if lam < -self.psd_tol:
            raise InvalidDensityMatrix(f"minimum eigenvalue {lam:.3e} below -{self.psd_tol:g}")

    @classmethod
    def from_array(cls, entries, **tols) -> DensityMatrix:
        entries = np.asarray(entries)
        return cls(FockOperator(FockSpace(entries.shape[0]), entries), **tols)

    @classmethod
    def fock_state(cls, space: FockSpace, n: int) -> DensityMatrix:
        return cls(projector(space, n))

    @property
    def space(self) -> FockSpace:
        return self.op.space

    @property
    def matrix(self) -> np.ndarray:
        return self.op.entries

    @property
    def populations(self) -> np.ndarray:
        return np.real(np.diag(self.op.entries)).copy()

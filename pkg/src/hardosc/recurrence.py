"""Stationary populations from the diagonal difference equation.

For the hard oscillator the populations obey, for every ``n >= 0``,

    2 eps1 [(n+1) p[n+1] - n p[n]]
      + eps2 [n(n-1) p[n-2] - (n+1)(n+2) p[n]]
      + k [(n+3)(n+2)(n+1) p[n+3] - n(n-1)(n-2) p[n]] = 0

with cubic-channel rate ``k = 2c/3``.  These coefficients are exactly the
population block of the Lindblad generator (see
:func:`hardosc.liouvillian.diagonal_generator`).  ``printed=True`` switches to
the published variant, with pump loss ``(n+2)(n-1)`` and ``k = c``, which is
kept only to demonstrate that it is not probability conserving.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import Polynomial

from .errors import SingularSystem
from .fock import FockSpace
from .model import HardParams


@dataclass(frozen=True, eq=False)
class PopulationVector:
    values: np.ndarray = field(repr=False)
    normalized: bool = True
    tail: float = 0.0  # mass dropped beyond the last entry

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        # unnormalized vectors come from diagnostic solves and are not checked
        if self.normalized and np.any(v < -1e-12):
            raise ValueError(f"negative population {v.min():.3e}")
        if self.normalized and abs(v.sum() - 1) > 1e-10:
            raise ValueError(f"populations sum to {v.sum():.15g}, not 1")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]


def cubic_rate(c: float, printed: bool = False) -> float:
    return c if printed else 2 * c / 3


def recurrence_matrix(p: HardParams, d: int, printed: bool = False) -> np.ndarray:
    """Row ``n`` holds the coefficients of equation ``n`` on ``p[0..d-1]``.

    Terms that reference an index ``>= d`` are dropped.
    """
    k = cubic_rate(p.c, printed)
    A = np.zeros((d, d))
    for n in range(d):
        pump_loss = (n + 2) * (n - 1) if printed else (n + 1) * (n + 2)
        A[n, n] = -2 * p.eps1 * n - p.eps2 * pump_loss - k * n * (n - 1) * (n - 2)
        if n + 1 < d:
            A[n, n + 1] += 2 * p.eps1 * (n + 1)
        if n >= 2:
            A[n, n - 2] += p.eps2 * n * (n - 1)
        if n + 3 < d:
            A[n, n + 3] += k * (n + 3) * (n + 2) * (n + 1)
    return A


def stationary_recurrence(p: HardParams, space: FockSpace, printed: bool = False) -> PopulationVector:
    """Solve the truncated recurrence with the last equation replaced by normalization.

    Raises
    ------
    SingularSystem
        If the truncated system does not determine a unique solution.
    """
    d = space.dim
    A = recurrence_matrix(p, d, printed)
    A[-1, :] = 1.0
    b = np.zeros(d)
    b[-1] = 1.0
    s = np.linalg.svd(A, compute_uv=False)
    if s[-1] <= 1e-13 * s[0]:
        raise SingularSystem(f"truncated recurrence is rank deficient (sigma_min/sigma_max = {s[-1] / s[0]:.2e})")
    x = np.linalg.solve(A, b)
    if printed:
        # the printed variant need not give a physical vector
        return PopulationVector(x, normalized=False)
    return PopulationVector(x)


def generating_polynomial(pop) -> Polynomial:
    """``G(u) = sum_n p[n] u^n`` truncated to the stored entries."""
    values = pop.values if isinstance(pop, PopulationVector) else np.asarray(pop, dtype=float)
    return Polynomial(values)


def generating_ode_lhs(G: Polynomial, p: HardParams) -> Polynomial:
    """``k (1-u^3) G''' + eps2 (u^2-1) (u^2 G)'' + 2 eps1 (1-u) G'`` with ``k = 2c/3``."""
    u = Polynomial([0, 1])
    k = cubic_rate(p.c)
    return (
        k * (1 - u ** 3) * G.deriv(3)
        + p.eps2 * (u ** 2 - 1) * (u ** 2 * G).deriv(2)
        + 2 * p.eps1 * (1 - u) * G.deriv(1)
    )


def generating_residual(pop, p: HardParams, u_points) -> float:
    """Largest ``|LHS|`` of the generating-function ODE over ``u_points``."""
    lhs = generating_ode_lhs(generating_polynomial(pop), p)
    return float(np.max(np.abs(lhs(np.asarray(u_points, dtype=float)))))

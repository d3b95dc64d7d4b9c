"""Closed-form populations, regime bands and the soft-excitation comparison."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial
from scipy.optimize import bisect

from .errors import NonConvergence
from .recurrence import PopulationVector

THRESHOLDS = (1 / 6, 1 / 3, 1 / 2)
BANDS = "ABCD"
# level indices from most to least populated, per band
ORDERINGS = {"A": (0, 1, 2), "B": (0, 2, 1), "C": (2, 0, 1), "D": (2, 1, 0)}
# pair of levels that become equal at each threshold
BOUNDARY_TIES = {THRESHOLDS[0]: (1, 2), THRESHOLDS[1]: (0, 2), THRESHOLDS[2]: (0, 1)}

MAX_TERMS = 10 ** 6


def populations_gamma(gamma: float) -> tuple[float, float, float]:
    """Three-level populations in the small-nonlinearity approximation.

    ``rho0 = 1/D``, ``rho1 = 2 gamma/D``, ``rho2 = (6 gamma^2 + gamma)/D`` with
    ``D = 6 gamma^2 + 3 gamma + 1``.  ``gamma = inf`` returns the limit
    ``(0, 0, 1)``.
    """
    if np.isnan(gamma) or gamma < 0:
        raise ValueError(f"gamma must be >= 0, got {gamma}")
    if np.isinf(gamma):
        return (0.0, 0.0, 1.0)
    den = 6 * gamma * gamma + 3 * gamma + 1
    return (1 / den, 2 * gamma / den, (6 * gamma * gamma + gamma) / den)


def lindblad_limit_populations(gamma: float) -> tuple[float, float, float]:
    """``eps -> 0`` limit of the exact Lindblad steady state at fixed ``gamma``.

    Levels 3, 4, 5 carry O(eps) population but drain back at O(1) rates, so
    pumping out of levels 1 and 2 effectively returns them one level lower.
    Balancing fluxes gives ``rho0 : rho1 : rho2 = (1 + 6 gamma) : 2 gamma : gamma``.
    """
    if np.isnan(gamma) or gamma < 0:
        raise ValueError(f"gamma must be >= 0, got {gamma}")
    if np.isinf(gamma):
        return (2 / 3, 2 / 9, 1 / 9)
    den = 1 + 9 * gamma
    return ((1 + 6 * gamma) / den, 2 * gamma / den, gamma / den)


@dataclass(frozen=True)
class RegimeLabel:
    band: str
    ordering: tuple[int, int, int]
    ties: frozenset = frozenset()


def classify(gamma: float) -> RegimeLabel:
    """Assign one of the bands A-D by comparing ``gamma`` with 1/6, 1/3, 1/2.

    A threshold value belongs to the lower band and reports the tied pair.
    ``gamma = 0`` reports the trivial tie ``rho1 = rho2 = 0``.
    """
    if np.isnan(gamma) or gamma < 0:
        raise ValueError(f"gamma must be >= 0, got {gamma}")
    band = BANDS[int(np.searchsorted(THRESHOLDS, gamma, side="left"))]
    ties = set()
    if gamma in BOUNDARY_TIES:
        ties.add(BOUNDARY_TIES[gamma])
    if gamma == 0:
        ties.add((1, 2))
    return RegimeLabel(band, ORDERINGS[band], frozenset(ties))


def regime_thresholds(xtol: float = 1e-15) -> tuple[float, float, float]:
    """Locate the three population crossings by bisection on the closed forms."""

    def diff(i, j):
        return lambda g: populations_gamma(g)[i] - populations_gamma(g)[j]

    return (
        bisect(diff(1, 2), 0.1, 0.25, xtol=xtol),
        bisect(diff(0, 2), 0.25, 0.4, xtol=xtol),
        bisect(diff(0, 1), 0.4, 0.6, xtol=xtol),
    )


def hyp1f1(a: float, b: float, x: float, rtol: float = 1e-16) -> float:
    """Kummer's confluent hypergeometric function by its power series.

    Summation stops once a term drops below ``rtol`` relative to the partial
    sum; meant for moderate ``|x|`` and ``b > 0``.
    """
    if b <= 0 and float(b).is_integer():
        raise ValueError(f"b must not be a non-positive integer, got {b}")
    total = term = 1.0
    for k in range(MAX_TERMS):
        term *= (a + k) / (b + k) * x / (k + 1)
        total += term
        if abs(term) <= rtol * abs(total):
            return total
    raise NonConvergence(f"1F1({a}, {b}, {x}) did not converge in {MAX_TERMS} terms")


def soft_generating(nu: float, u: float) -> float:
    """``G(u) = F(1, nu, nu(1+u)) / F(1, nu, 2 nu)``."""
    if not nu > 0:
        raise ValueError(f"nu must be > 0, got {nu}")
    return hyp1f1(1.0, nu, nu * (1 + u)) / hyp1f1(1.0, nu, 2 * nu)


def _soft_series_weights(nu: float, rtol: float = 1e-17) -> np.ndarray:
    """``w[m] = nu^m / (nu)_m`` until negligible against ``sum_m w[m] 2^m``."""
    w = [1.0]
    norm = 1.0
    for m in range(MAX_TERMS):
        w.append(w[-1] * nu / (nu + m))
        contrib = w[-1] * 2.0 ** (m + 1)
        norm += contrib
        if contrib <= rtol * norm and m > 2:
            return np.array(w)
    raise NonConvergence(f"soft-oscillator series for nu={nu} did not converge in {MAX_TERMS} terms")


def soft_coefficients(nu: float) -> np.ndarray:
    """All Taylor coefficients of the soft generating function about ``u = 0``.

    ``rho[n] = sum_{m >= n} w[m] C(m, n) / F(1, nu, 2 nu)``; the sum over
    ``n`` of each row of binomials is ``2^m``, so the result sums to 1.
    """
    w = _soft_series_weights(nu)
    M = len(w)
    coeffs = np.zeros(M)
    # (1+u)^m expanded row by row keeps every binomial finite
    row = np.zeros(M)
    row[0] = 1.0
    for m in range(M):
        if m:
            row[1 : m + 1] = row[1 : m + 1] + row[0:m].copy()
        coeffs[: m + 1] += w[m] * row[: m + 1]
    return coeffs / coeffs.sum()


def soft_populations(nu: float, n_max: int) -> PopulationVector:
    """Populations ``rho[0..n_max]`` of the soft oscillator.

    The returned vector is renormalized; ``tail`` records the mass that sat
    above ``n_max`` before renormalizing.
    """
    if not nu > 0:
        raise ValueError(f"nu must be > 0, got {nu}")
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    full = soft_coefficients(nu)
    head = np.zeros(n_max + 1)
    k = min(len(full), n_max + 1)
    head[:k] = full[:k]
    tail = float(full[k:].sum())
    return PopulationVector(head / head.sum(), tail=tail)


def soft_residual(pop, nu: float, u_points) -> float:
    """Largest ``|(1+u) G'' - nu u G' - nu G|`` for the truncated series."""
    values = pop.values if isinstance(pop, PopulationVector) else np.asarray(pop, dtype=float)
    G = Polynomial(values)
    u = Polynomial([0, 1])
    lhs = (1 + u) * G.deriv(2) - nu * u * G.deriv(1) - nu * G
    return float(np.max(np.abs(lhs(np.asarray(u_points, dtype=float)))))

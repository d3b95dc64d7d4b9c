"""Classical limit: trajectories of the amplitude equation and its cycles."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import StepTooLarge
from .model import HardParams, classical_rhs


@dataclass(frozen=True, eq=False)
class Trajectory:
    times: np.ndarray = field(repr=False)
    z_values: np.ndarray = field(repr=False)
    params: HardParams

    @property
    def abs2(self) -> np.ndarray:
        return np.abs(self.z_values) ** 2


@dataclass(frozen=True)
class AmplitudeFixedPoints:
    """Radii ``r = |z|^2`` of the stationary cycles (``None`` when absent)."""

    r_minus: float | None
    r_plus: float | None
    origin_stable: bool


def default_dt(p: HardParams) -> float:
    return min(0.01, 0.1 / max(p.eps1, p.eps2, p.c))


def radial_rate(p: HardParams, r):
    """``d|z|^2/dt = 2 r (-eps1 + eps2 r - c r^2)``."""
    return 2 * r * (-p.eps1 + p.eps2 * r - p.c * r * r)


def integrate(p: HardParams, z0: complex, t_final: float, dt: float | None = None) -> Trajectory:
    """RK4 trajectory of the amplitude equation.

    The field is covariant under ``z -> z e^{i phi}``, so the rotation
    ``e^{-i omega t}`` is factored out exactly and RK4 only integrates the
    co-rotating amplitude.  This keeps ``|z(t)|`` independent of ``omega``.

    Raises
    ------
    StepTooLarge
        If ``|z|`` exceeds ten times the largest radius the true flow can
        reach, ``max(|z0|, sqrt(eps2/c))``.
    """
    if dt is None:
        dt = default_dt(p)
    if dt <= 0:
        raise ValueError("dt must be > 0")
    if t_final < 0:
        raise ValueError("t_final must be >= 0")
    n = math.ceil(t_final / dt - 1e-9) if t_final > 0 else 0
    h = t_final / n if n else dt
    bound = 10 * max(abs(z0), math.sqrt(p.eps2 / p.c))
    rot = HardParams(eps1=p.eps1, eps2=p.eps2, c=p.c)

    def f(w):
        return classical_rhs(rot, w)

    w = np.empty(n + 1, dtype=complex)
    w[0] = z0
    x = complex(z0)
    for k in range(n):
        k1 = f(x)
        k2 = f(x + 0.5 * h * k1)
        k3 = f(x + 0.5 * h * k2)
        k4 = f(x + h * k3)
        x = x + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.isfinite(x) or abs(x) > bound:
            raise StepTooLarge(f"|z| = {abs(x):.3g} left the bound {bound:.3g} at t = {(k + 1) * h:g}; reduce dt")
        w[k + 1] = x
    times = h * np.arange(n + 1)
    return Trajectory(times, w * np.exp(-1j * p.omega * times), p)


def fixed_points(p: HardParams) -> AmplitudeFixedPoints:
    """Real roots of ``c r^2 - eps2 r + eps1 = 0``."""
    disc = p.eps2 ** 2 - 4 * p.eps1 * p.c
    stable = p.eps1 > 0
    if disc < 0:
        return AmplitudeFixedPoints(None, None, stable)
    # cancellation-free pair: q = (eps2 + sqrt(disc)) / 2, roots q/c and eps1/q
    q = 0.5 * (p.eps2 + math.sqrt(disc))
    if q == 0:
        return AmplitudeFixedPoints(0.0, 0.0, stable)
    return AmplitudeFixedPoints(p.eps1 / q, q / p.c, stable)


def converged_to(traj: Trajectory, target: float, tol: float = 1e-8, window: int = 100) -> bool:
    """True once ``| |z|^2 - target | < tol`` held for ``window`` consecutive steps."""
    hit = np.abs(traj.abs2 - target) < tol
    run = 0
    for ok in hit:
        run = run + 1 if ok else 0
        if run >= window:
            return True
    return False

"""Liouvillian superoperator, stationary states and time evolution.

Vectorization is column stacking, ``vec(X) = X.flatten(order="F")``, so that
``vec(A X B) = (B^T kron A) vec(X)``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateKernel, DimensionMismatch, NonConvergence, NonPositive, StepTooLarge
from .fock import PSD_TOL, DensityMatrix, FockOperator, FockSpace
from .model import HardParams, channels, hamiltonian

log = logging.getLogger(__name__)

MIN_KERNEL_GAP = 1e3


def vec(x: np.ndarray) -> np.ndarray:
    return np.asarray(x).flatten(order="F")


def unvec(v: np.ndarray, d: int) -> np.ndarray:
    return np.asarray(v).reshape((d, d), order="F")


@dataclass(frozen=True, eq=False)
class Superoperator:
    space: FockSpace
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        n = self.space.dim ** 2
        if m.shape != (n, n):
            raise DimensionMismatch(f"expected a {n}x{n} superoperator, got {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def apply(self, rho) -> np.ndarray:
        """Return ``L rho`` as a ``d x d`` array."""
        x = rho.entries if isinstance(rho, FockOperator) else np.asarray(rho)
        return unvec(self.matrix @ vec(x), self.space.dim)

    def norm_inf(self) -> float:
        return float(np.linalg.norm(self.matrix, np.inf))


def build(H: FockOperator, chans: list[FockOperator]) -> Superoperator:
    """Assemble ``-i[H, .] + sum_j (2 R . R^+ - R^+R . - . R^+R)``."""
    space = H.space
    for R in chans:
        if R.space != space:
            raise DimensionMismatch(f"channel on dim {R.space.dim}, Hamiltonian on dim {space.dim}")
    eye = np.eye(space.dim)
    h = H.entries
    m = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
    for R in chans:
        r = R.entries
        rr = r.conj().T @ r
        m = m + 2 * np.kron(r.conj(), r) - np.kron(eye, rr) - np.kron(rr.T, eye)
    return Superoperator(space, m)


def hard_liouvillian(p: HardParams, space: FockSpace) -> Superoperator:
    return build(hamiltonian(p, space), channels(p, space))


@dataclass(frozen=True, eq=False)
class SteadyStateResult:
    rho: DensityMatrix
    populations: np.ndarray
    residual: float
    kernel_gap: float
    cutoff_used: int


def steady_state(L: Superoperator, psd_tol: float = PSD_TOL) -> SteadyStateResult:
    """Stationary state from the smallest right singular vector of ``L``.

    Raises
    ------
    DegenerateKernel
        If the two smallest singular values are within a factor 1e3.
    NonPositive
        If the normalized state has an eigenvalue below ``-psd_tol``.
    """
    d = L.space.dim
    _, s, vh = np.linalg.svd(L.matrix)
    gap = math.inf if s[-1] == 0 else float(s[-2] / s[-1])
    if gap < MIN_KERNEL_GAP:
        raise DegenerateKernel(
            f"smallest singular values {s[-1]:.3e}, {s[-2]:.3e} (ratio {gap:.3e}) do not isolate a kernel"
        )
    x = unvec(vh[-1].conj(), d)
    x = (x + x.conj().T) / 2
    tr = np.trace(x).real
    if tr == 0:
        raise DegenerateKernel("kernel vector has zero trace")
    x = x / tr

    w, v = np.linalg.eigh(x)
    if w[0] < -psd_tol:
        raise NonPositive(f"stationary state has eigenvalue {w[0]:.3e}")
    if w[0] < 0:
        w = np.clip(w, 0, None)
        x = (v * w) @ v.conj().T
        x = x / np.trace(x).real

    residual = float(np.linalg.norm(L.matrix @ vec(x)))
    rho = DensityMatrix(FockOperator(L.space, x), psd_tol=psd_tol)
    return SteadyStateResult(rho, rho.populations, residual, gap, d)


def initial_cutoff(p: HardParams) -> int:
    """Starting truncation: ``max(10, 3 ceil(expected excitation))``.

    The classical amplitude never exceeds ``eps2 / c``, which serves as the
    expected excitation number.
    """
    return max(10, 3 * math.ceil(p.eps2 / p.c))


def solve_steady(
    p: HardParams,
    cutoff: int | None = None,
    tail_tol: float = 1e-12,
    stability_tol: float = 1e-9,
    max_cutoff: int = 60,
) -> SteadyStateResult:
    """Stationary state of the hard oscillator.

    With ``cutoff`` given, solve once at that dimension.  Otherwise grow the
    cutoff in steps of 5 until the population ``rho[d-3]`` falls below
    ``tail_tol`` and the first six populations agree with the ``d+5`` solve
    to ``stability_tol``.
    """
    if cutoff is not None:
        return steady_state(hard_liouvillian(p, FockSpace(cutoff)))

    d = initial_cutoff(p)
    cur = steady_state(hard_liouvillian(p, FockSpace(d)))
    while d + 5 <= max_cutoff:
        nxt = steady_state(hard_liouvillian(p, FockSpace(d + 5)))
        tail_ok = cur.populations[d - 3] < tail_tol
        stable = np.max(np.abs(cur.populations[:6] - nxt.populations[:6])) <= stability_tol
        if tail_ok and stable:
            log.debug("cutoff %d accepted for %s", d, p)
            return cur
        d += 5
        cur = nxt
    raise NonConvergence(f"no cutoff <= {max_cutoff} met the tail criterion for {p}")


def rk4_propagator(L: Superoperator, dt: float) -> np.ndarray:
    """One classical RK4 step for ``dv/dt = L v``, as a matrix.

    For a linear autonomous system the four RK4 stages collapse to the
    degree-4 Taylor polynomial of ``exp(L dt)``.
    """
    a = dt * L.matrix
    n = a.shape[0]
    step = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, 5):
        term = term @ a / k
        step = step + term
    return step


def _max_step(L: Superoperator) -> float:
    nrm = L.norm_inf()
    return math.inf if nrm == 0 else 0.1 / nrm


def evolve_path(
    L: Superoperator,
    rho0: DensityMatrix,
    t_final: float,
    dt: float | None = None,
    n_samples: int = 2,
):
    """Integrate the master equation and sample it on an even time grid.

    Returns ``(times, states)`` where ``states`` are raw ``d x d`` arrays.
    Each step is followed by Hermitian symmetrization; the trace is not
    touched, so its drift measures the integration error.
    """
    if t_final < 0:
        raise ValueError("t_final must be >= 0")
    if rho0.space != L.space:
        raise DimensionMismatch("initial state and Liouvillian live on different spaces")
    d = L.space.dim
    limit = _max_step(L)
    if dt is None:
        dt = min(limit, t_final) if t_final > 0 else 1.0
    if dt <= 0:
        raise ValueError("dt must be > 0")
    if dt > limit * (1 + 1e-12):
        raise StepTooLarge(f"dt = {dt:g} exceeds stability bound 0.1/||L||_inf = {limit:g}")

    n_steps = math.ceil(t_final / dt - 1e-9) if t_final > 0 else 0
    h = t_final / n_steps if n_steps else 0.0
    prop = rk4_propagator(L, h) if n_steps else None
    n_samples = max(2, n_samples)
    marks = np.unique(np.round(np.linspace(0, n_steps, n_samples)).astype(int))

    x = np.array(rho0.matrix, dtype=complex)
    v = vec(x)
    times, states = [0.0], [x.copy()]
    for k in range(1, n_steps + 1):
        v = prop @ v
        x = unvec(v, d)
        v = vec((x + x.conj().T) / 2)
        if k in marks:
            times.append(k * h)
            states.append(unvec(v, d).copy())
    return np.array(times), states


def evolve(L: Superoperator, rho0: DensityMatrix, t_final: float, dt: float | None = None) -> DensityMatrix:
    """``rho(t_final)`` by fixed-step RK4.

    Raises
    ------
    StepTooLarge
        If ``dt > 0.1 / ||L||_inf``.
    """
    _, states = evolve_path(L, rho0, t_final, dt)
    return DensityMatrix(
        FockOperator(L.space, states[-1]),
        herm_tol=rho0.herm_tol,
        trace_tol=rho0.trace_tol,
        psd_tol=rho0.psd_tol,
    )


def diagonal_generator(p: HardParams, space: FockSpace) -> np.ndarray:
    """Population-sector generator ``M`` with ``d rho_n/dt = sum_m M[n, m] rho_m``.

    Column ``m`` is the diagonal of ``L(|m><m|)`` for the full Liouvillian.
    """
    L = hard_liouvillian(p, space)
    d = space.dim
    cols = [L.matrix[:, m * d + m] for m in range(d)]
    # diagonal element (n, n) sits at vec index n*d + n
    idx = np.arange(d) * (d + 1)
    return np.real(np.stack([c[idx] for c in cols], axis=1))

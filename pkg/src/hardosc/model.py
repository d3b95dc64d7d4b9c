"""Oscillator models: parameters, quantum operators and the classical field.

The hard-excitation oscillator obeys

    dz/dt = -i w z - eps1 z + eps2 z |z|^2 - c z |z|^4

and is quantized by writing the right-hand side as ``-i dH/dz*`` plus channel
terms with ``H = w z* z``, ``R1 = sqrt(eps1) z``, ``R2 = sqrt(eps2/2) z*^2``,
``R3 = sqrt(c/3) z^3`` and then substituting ``z -> a``, ``z* -> a^+``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import FockOperator, FockSpace, annihilation, creation, number


@dataclass(frozen=True)
class HardParams:
    """Constants of the hard-excitation oscillator.

    ``eps1`` is the linear damping, ``eps2`` the cubic gain and ``c`` the
    quintic saturation.  ``eps1 = 0`` is legal for dynamics, but then
    :attr:`gamma` is undefined.
    """

    eps1: float
    eps2: float
    c: float = 1.0
    omega: float = 0.0

    def __post_init__(self):
        for name in ("eps1", "eps2", "c", "omega"):
            v = getattr(self, name)
            if not np.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v}")
        if self.eps1 < 0:
            raise ValueError(f"eps1 must be >= 0, got {self.eps1}")
        if self.eps2 < 0:
            raise ValueError(f"eps2 must be >= 0, got {self.eps2}")
        if self.c <= 0:
            raise ValueError(f"c must be > 0, got {self.c}")
        if self.omega < 0:
            raise ValueError(f"omega must be >= 0, got {self.omega}")

    @property
    def gamma(self) -> float:
        """Control ratio ``eps2 / (2 eps1)``."""
        if self.eps1 == 0:
            raise ValueError("gamma = eps2/(2 eps1) is undefined for eps1 = 0")
        return self.eps2 / (2 * self.eps1)

    @classmethod
    def from_gamma(cls, gamma: float, eps1: float, c: float = 1.0, omega: float = 0.0) -> HardParams:
        if gamma < 0:
            raise ValueError(f"gamma must be >= 0, got {gamma}")
        return cls(eps1=eps1, eps2=2 * gamma * eps1, c=c, omega=omega)


@dataclass(frozen=True)
class SoftParams:
    """Single nonlinearity of the soft-excitation (Van der Pol type) oscillator."""

    nu: float

    def __post_init__(self):
        if not (np.isfinite(self.nu) and self.nu > 0):
            raise ValueError(f"nu must be > 0, got {self.nu}")


def hamiltonian(p: HardParams, space: FockSpace) -> FockOperator:
    return p.omega * number(space)


def channels(p: HardParams, space: FockSpace) -> list[FockOperator]:
    """Lindblad operators ``[sqrt(eps1) a, sqrt(eps2/2) a^+^2, sqrt(c/3) a^3]``."""
    a = annihilation(space)
    ad = creation(space)
    return [
        np.sqrt(p.eps1) * a,
        np.sqrt(p.eps2 / 2) * (ad @ ad),
        np.sqrt(p.c / 3) * (a @ a @ a),
    ]


def classical_rhs(p: HardParams, z: complex) -> complex:
    r = abs(z) ** 2
    return -1j * p.omega * z - p.eps1 * z + p.eps2 * z * r - p.c * z * r * r


def faq_terms(p: HardParams, z: complex) -> dict[str, complex]:
    """Per-term contributions of the quantizable form of the vector field.

    Each channel contributes ``conj(R) dR/dz* - R d conj(R)/dz*`` with the
    derivatives written out by hand; ``"H"`` is ``-i dH/dz*``.
    """
    zc = np.conj(z)
    s1, s2, s3 = np.sqrt(p.eps1), np.sqrt(p.eps2 / 2), np.sqrt(p.c / 3)

    # R1 = s1 z: dR1/dz* = 0, d(conj R1)/dz* = s1
    r1 = s1 * z
    t1 = -r1 * s1
    # R2 = s2 z*^2: dR2/dz* = 2 s2 z*, d(conj R2)/dz* = 0
    r2bar = s2 * z * z
    t2 = r2bar * 2 * s2 * zc
    # R3 = s3 z^3: dR3/dz* = 0, d(conj R3)/dz* = 3 s3 z*^2
    r3 = s3 * z ** 3
    t3 = -r3 * 3 * s3 * zc ** 2

    return {"H": -1j * p.omega * z, "R1": complex(t1), "R2": complex(t2), "R3": complex(t3)}


def faq_rhs(p: HardParams, z: complex) -> complex:
    return sum(faq_terms(p, z).values())

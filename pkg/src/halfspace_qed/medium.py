"""Dielectric half-space geometry, refraction kinematics and unit conventions.

The dielectric occupies z < 0 and is described by a single real refractive
index n >= 1, so eps(z) = 1 for z > 0 and eps(z) = n**2 for z < 0.  All
quantities are expressed in natural units (hbar = c = eps0 = 1); the single
free parameter is the test charge q carried by the energy routines.

Mode labels are spectral points (k_parallel, k_z): right-incident modes are
labelled by the vacuum-side longitudinal wavenumber k_z (real positive when
travelling, i*t with 0 < t <= Gamma on the evanescent segment), left-incident
modes by the dielectric-side wavenumber k_zd (always real positive).  The two
are linked by the refraction law k_zd = sqrt(n^2 k_z^2 + (n^2-1) |k_par|^2)
with the branch fixed by sgn(Re k_zd) = sgn(Re k_z) on the real axis.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "UnitSystem",
    "NATURAL_UNITS",
    "Medium",
    "Side",
    "Polarization",
    "SpectralPoint",
    "epsilon_profile",
    "refracted_kz",
    "vacuum_kz_from_kzd",
    "evanescent_threshold",
    "mode_frequency",
]


@dataclass(frozen=True)
class UnitSystem:
    """Global unit convention; immutable.  Default natural units."""

    hbar: float = 1.0
    c: float = 1.0
    eps0: float = 1.0
    name: str = "natural"


NATURAL_UNITS = UnitSystem()


class Side(Enum):
    """Incidence side of a mode: left (from the dielectric) or right (vacuum)."""

    LEFT = "L"
    RIGHT = "R"


class Polarization(Enum):
    TE = "TE"
    TM = "TM"


@dataclass(frozen=True)
class Medium:
    """Non-dispersive dielectric half-space at z < 0 with refractive index n."""

    n: float

    def __post_init__(self) -> None:
        if not (self.n >= 1.0) or not math.isfinite(self.n):
            raise ValueError(f"refractive index must satisfy n >= 1, got {self.n}")

    @property
    def eps_inside(self) -> float:
        return self.n * self.n

    @property
    def image_strength(self) -> float:
        """Image-charge strength (n^2-1)/(n^2+1); 0 in free space, 1 for a mirror."""
        return (self.n * self.n - 1.0) / (self.n * self.n + 1.0)


@dataclass(frozen=True)
class SpectralPoint:
    """One mode label.

    ``kz`` is the longitudinal wavenumber on the labelling side: the vacuum
    k_z for RIGHT modes (complex on the evanescent segment), the dielectric
    k_zd for LEFT modes (real positive).
    """

    kpar: tuple[float, float]
    kz: complex
    side: Side
    pol: Polarization

    @property
    def kpar_mag(self) -> float:
        return math.hypot(self.kpar[0], self.kpar[1])


def epsilon_profile(medium: Medium, z: float) -> float:
    """Piecewise dielectric profile; the z = 0 value is the midpoint average."""
    if z > 0.0:
        return 1.0
    if z < 0.0:
        return medium.eps_inside
    return 0.5 * (1.0 + medium.eps_inside)


def evanescent_threshold(medium: Medium, kpar_mag: float) -> float:
    """Branch point Gamma = |k_par| sqrt(n^2-1)/n of the refracted wavenumber."""
    if kpar_mag < 0.0:
        raise ValueError("kpar_mag must be >= 0")
    n = medium.n
    return kpar_mag * math.sqrt(n * n - 1.0) / n


def refracted_kz(medium: Medium, kpar_mag: float, kz: complex) -> complex:
    """Dielectric-side wavenumber k_zd = sqrt(n^2 kz^2 + (n^2-1) kpar^2).

    Principal square root with the sign fixed so that sgn(Re k_zd) equals
    sgn(Re k_z) on the real axis; on the evanescent segment kz = i*t,
    0 < t <= Gamma, the value is real non-negative (zero at the branch point).
    """
    if kpar_mag < 0.0:
        raise ValueError("kpar_mag must be >= 0")
    n = medium.n
    kz = complex(kz)
    val = np.sqrt(complex(n * n * kz * kz + (n * n - 1.0) * kpar_mag * kpar_mag))
    if kz.real > 0.0 and val.real < 0.0:
        val = -val
    elif kz.real < 0.0 and val.real > 0.0:
        val = -val
    return complex(val)


def vacuum_kz_from_kzd(medium: Medium, kpar_mag: float, kzd: float) -> complex:
    """Invert the refraction law for a left-incident label.

    Returns the vacuum-side k_z: real non-negative for k_zd above the total
    internal reflection threshold |k_par| sqrt(n^2-1), else i*t with
    0 < t <= Gamma (the transmitted wave is evanescent in the vacuum).
    """
    if kzd < 0.0:
        raise ValueError("left-incident labels require kzd >= 0")
    n = medium.n
    disc = kzd * kzd - (n * n - 1.0) * kpar_mag * kpar_mag
    if disc >= 0.0:
        return complex(math.sqrt(disc) / n)
    return 1j * math.sqrt(-disc) / n


def mode_frequency(medium: Medium, point: SpectralPoint) -> float:
    """Mode frequency (c = 1): omega = |k| in vacuum, |k_d|/n in the dielectric."""
    kp = point.kpar_mag
    if point.side is Side.RIGHT:
        w2 = complex(kp * kp + point.kz * point.kz)
        if abs(w2.imag) > 1e-12 * max(1.0, abs(w2.real)) or w2.real <= 0.0:
            raise ValueError(f"label has non-real frequency: omega^2 = {w2}")
        return math.sqrt(w2.real)
    kzd = complex(point.kz)
    if abs(kzd.imag) > 0.0 or kzd.real < 0.0:
        raise ValueError("left-incident labels require real kzd >= 0")
    return math.sqrt(kp * kp + kzd.real * kzd.real) / medium.n

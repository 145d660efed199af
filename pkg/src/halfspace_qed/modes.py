"""Carniglia-Mandel mode functions and the gauge-transformation mode data.

A right-incident mode (vacuum side) is the triad

    f^R(r) = (2 pi)^{-3/2} [ e(k-) e^{i k- . r} + rR e(k+) e^{i k+ . r} ]   z >= 0
           = (2 pi)^{-3/2}   tR e(kd-) e^{i kd- . r}                        z < 0

and a left-incident mode carries the extra 1/n,

    f^L(r) = (2 pi)^{-3/2}/n [ e(kd+) e^{i kd+ . r} + rL e(kd-) e^{i kd- . r} ]  z < 0
           = (2 pi)^{-3/2}/n   tL e(k+) e^{i k+ . r}                             z >= 0

where k+- = (k_par, +-k_z), kd+- = (k_par, +-k_zd) and each plane wave gets
the polarization vector of its own wavevector (the differential shorthand for
the polarization operator acts per exponential, never on the step function).
Values exactly at z = 0 use the vacuum-side representation.

The gauge transformation to the everywhere-transverse gauge is generated by a
scalar whose mode data are TM-only surface quantities: the surface-charge
coefficients g, the generating-function coefficients and the induced surface
charge density.  Their relative signs are fixed by requiring that the
generating function solve the Poisson equation sourced by the surface charge
and that subtracting its gradient from the vector potential reproduce the
free-space transverse commutator; the coefficients here satisfy both (the
test-suite checks them numerically).
"""
from __future__ import annotations

import math

import numpy as np

from .fresnel import fresnel_coefficients
from .medium import (
    Medium,
    Polarization,
    Side,
    SpectralPoint,
    mode_frequency,
    refracted_kz,
    vacuum_kz_from_kzd,
)

__all__ = [
    "polarization_vector",
    "carniglia_mandel_mode",
    "surface_charge_mode",
    "sigma_mode_coefficient",
    "chi_mode_coefficient",
]

_NORM = (2.0 * math.pi) ** (-1.5)


def polarization_vector(pol: Polarization, k: np.ndarray) -> np.ndarray:
    """Unit polarization vector of a single plane wave with wavevector k.

    TE: (k_y, -k_x, 0)/|k_par|; TM: (k_x k_z, k_y k_z, -|k_par|^2) normalised
    by |k_par| sqrt(k.k) with the principal square root (real positive on the
    evanescent segment).  Orthogonal to k under the unconjugated dot product.
    """
    kx, ky, kz = complex(k[0]), complex(k[1]), complex(k[2])
    kpar2 = kx * kx + ky * ky
    kpar = np.sqrt(kpar2)
    if kpar == 0:
        raise ValueError("polarization basis is degenerate at k_par = 0")
    if pol is Polarization.TE:
        return np.array([ky, -kx, 0.0], dtype=complex) / kpar
    k2 = kpar2 + kz * kz
    if k2 == 0:
        raise ValueError("TM normalisation singular at k.k = 0")
    norm = kpar * np.sqrt(k2)
    return np.array([kx * kz, ky * kz, -kpar2], dtype=complex) / norm


def _real_kzd(kz_or_kzd: complex) -> float:
    kzd = complex(kz_or_kzd)
    if kzd.imag != 0.0:
        raise ValueError("left-incident labels require real kzd (evanescence lives in kz)")
    return kzd.real


def _label_kz(medium: Medium, point: SpectralPoint) -> complex:
    """Vacuum-side k_z of a label (inverting refraction for left incidence)."""
    if point.side is Side.RIGHT:
        return complex(point.kz)
    return vacuum_kz_from_kzd(medium, point.kpar_mag, _real_kzd(point.kz))


def carniglia_mandel_mode(medium: Medium, point: SpectralPoint, r: np.ndarray) -> np.ndarray:
    """Evaluate the mode function of ``point`` at position r (complex 3-vector)."""
    r = np.asarray(r, dtype=float)
    kx, ky = point.kpar
    kz = _label_kz(medium, point)
    kzd = refracted_kz(medium, point.kpar_mag, kz)
    coef = fresnel_coefficients(medium, point.pol, point.kpar_mag, kz)
    phase_par = np.exp(1j * (kx * r[0] + ky * r[1]))
    z = r[2]

    def wave(kz_piece: complex) -> np.ndarray:
        kvec = np.array([kx, ky, kz_piece], dtype=complex)
        return polarization_vector(point.pol, kvec) * np.exp(1j * kz_piece * z)

    if point.side is Side.RIGHT:
        if z >= 0.0:
            val = wave(-kz) + coef.rR * wave(kz)
        else:
            val = coef.tR * wave(-kzd)
        return _NORM * phase_par * val
    if z < 0.0:
        val = wave(kzd) + coef.rL * wave(-kzd)
    else:
        val = coef.tL * wave(kz)
    return _NORM / medium.n * phase_par * val


def surface_charge_mode(
    medium: Medium, side: Side, kpar_mag: float, kz_or_kzd: complex
) -> complex:
    """Surface-charge mode coefficient g at r_par = 0 (TM only by construction).

    g^R = (2 pi)^{-3/2} (n^2-1)/(2 n^2) (1 + rR_TM)
    g^L = (2 pi)^{-3/2} (n^2-1)/(2 n^2) tL_TM / n
    """
    n = medium.n
    if n == 1.0:
        return 0.0
    chat = (n * n - 1.0) / (2.0 * n * n)
    if side is Side.RIGHT:
        kz = complex(kz_or_kzd)
    else:
        kz = vacuum_kz_from_kzd(medium, kpar_mag, _real_kzd(kz_or_kzd))
    coef = fresnel_coefficients(medium, Polarization.TM, kpar_mag, kz)
    if side is Side.RIGHT:
        return _NORM * chat * (1.0 + coef.rR)
    return _NORM * chat * coef.tL / n


def _label_frequency(medium: Medium, side: Side, kpar_mag: float, kz_or_kzd: complex) -> float:
    point = SpectralPoint(
        kpar=(kpar_mag, 0.0), kz=complex(kz_or_kzd), side=side, pol=Polarization.TM
    )
    return mode_frequency(medium, point)


def sigma_mode_coefficient(
    medium: Medium, side: Side, kpar_mag: float, kz_or_kzd: complex
) -> complex:
    """Coefficient of the annihilation operator in the surface charge density,
    at r_par = 0: sigma_k = -2i |k_par| sqrt(1/2 omega) g_k (natural units)."""
    g = surface_charge_mode(medium, side, kpar_mag, kz_or_kzd)
    if g == 0.0:
        return 0.0
    omega = _label_frequency(medium, side, kpar_mag, kz_or_kzd)
    return -2j * kpar_mag * g / math.sqrt(2.0 * omega)


def chi_mode_coefficient(
    medium: Medium,
    side: Side,
    kpar_mag: float,
    kz_or_kzd: complex,
    z: float,
    time_derivative: bool = False,
) -> complex:
    """Coefficient of the annihilation operator in the gauge generating
    function (or its time derivative), at r_par = 0 and height z.

    chi:      + sqrt(1/(2 omega^3)) g e^{-|k_par| |z|}
    chi-dot:  - i sqrt(1/(2 omega)) g e^{-|k_par| |z|}

    Symmetric in z; the ratio chi-dot/chi is -i*omega (harmonic time
    dependence).  The overall sign is the one consistent with the surface
    charge density and the Poisson equation, see the module docstring.
    """
    g = surface_charge_mode(medium, side, kpar_mag, kz_or_kzd)
    if g == 0.0:
        return 0.0
    omega = _label_frequency(medium, side, kpar_mag, kz_or_kzd)
    profile = math.exp(-kpar_mag * abs(z))
    if time_derivative:
        return -1j * g * profile / math.sqrt(2.0 * omega)
    return g * profile / math.sqrt(2.0 * omega**3)

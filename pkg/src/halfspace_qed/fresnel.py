"""Fresnel reflection/transmission coefficients for the half-space interface.

Coefficients follow the amplitude convention of the half-space mode functions:

    TE:  rR = (kz - kzd)/(kz + kzd)        tR = 2 kz/(kz + kzd)
    TM:  rR = (n^2 kz - kzd)/(n^2 kz + kzd) tR = 2 n kz/(n^2 kz + kzd)

with the left-incidence set given exactly by rL = -rR and tL = (kzd/kz) tR.
kz may sit anywhere on the travelling axis (real, nonzero) or the evanescent
segment (i*t, 0 < t < Gamma); kzd is taken from the refraction law with the
branch rule of :mod:`halfspace_qed.medium`.
"""
from __future__ import annotations

from dataclasses import dataclass

from .medium import Medium, Polarization, refracted_kz

__all__ = ["FresnelSet", "fresnel_coefficients", "cancellation_residual"]


@dataclass(frozen=True)
class FresnelSet:
    """The four coefficients of one polarization at one (kpar, kz)."""

    rR: complex
    tR: complex
    rL: complex
    tL: complex


def fresnel_coefficients(
    medium: Medium, pol: Polarization, kpar_mag: float, kz: complex
) -> FresnelSet:
    kz = complex(kz)
    if kz == 0:
        raise ValueError("kz = 0 is excluded (tL diverges); quadrature rules must not sample it")
    n = medium.n
    kzd = refracted_kz(medium, kpar_mag, kz)
    if pol is Polarization.TE:
        rR = (kz - kzd) / (kz + kzd)
        tR = 2.0 * kz / (kz + kzd)
    else:
        rR = (n * n * kz - kzd) / (n * n * kz + kzd)
        tR = 2.0 * n * kz / (n * n * kz + kzd)
    return FresnelSet(rR=rR, tR=tR, rL=-rR, tL=kzd / kz * tR)


def cancellation_residual(
    medium: Medium, pol: Polarization, kpar_mag: float, kz: complex
) -> complex:
    """(kz/kzd) tL rL + rR tR; vanishes identically and kills the cross terms
    that would otherwise obstruct closing the spectral contour."""
    c = fresnel_coefficients(medium, pol, kpar_mag, kz)
    kzd = refracted_kz(medium, kpar_mag, complex(kz))
    if kzd == 0:
        raise ValueError("branch point kz = i*Gamma is excluded from the residual")
    if medium.n == 1.0:
        return 0.0
    return (complex(kz) / kzd) * c.tL * c.rL + c.rR * c.tR

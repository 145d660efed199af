"""Electrostatic energy bookkeeping across gauges.

In the generalized gauge the whole charge-surface interaction sits in the
c-number image potential V^es.  Transforming to the everywhere-transverse
gauge redistributes it: the Hamiltonian keeps the share (n^2+1)/(2n^2) V^es
while the remaining (n^2-1)/(2n^2) V^es is recovered as the second-order
perturbative shift of the fluctuating surface-charge coupling,

    dE = -(q^2/2) int d^2k_par e^{-2 |k_par| z0}
         [ int_0^inf dk_zd |g^L|^2/omega^2 + int_0^inf dk_z |g^R|^2/omega^2 ]

(natural units, no-recoil approximation: particle kinetic denominators are
replaced by the photon frequency, so mass and momentum drop out).  The
particle self-energy is an r0-independent constant and is dropped throughout.
Left- and right-incident contributions are reported separately.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .greens import image_potential_ves
from .medium import Medium
from .spectral import (
    QuadratureSpec,
    cut_segment_integral,
    damped_radial_transform,
    decaying_halfline_integral,
)

__all__ = [
    "ShiftResult",
    "redistribution_factors",
    "second_order_shift",
    "gauge_invariance_sum",
    "double_commutator_cnumber",
]


@dataclass(frozen=True)
class ShiftResult:
    delta_e: float
    v_es: float
    ratio: float
    expected_ratio: float
    left_part: float
    right_part: float
    n: float
    z0: float
    q: float


def redistribution_factors(medium: Medium) -> tuple[float, float]:
    """((n^2-1)/2n^2, (n^2+1)/2n^2); the two shares sum to exactly 1."""
    n2 = medium.n * medium.n
    return (n2 - 1.0) / (2.0 * n2), (n2 + 1.0) / (2.0 * n2)


def _right_longitudinal(medium: Medium, kap: float, spec: QuadratureSpec) -> float:
    """int_0^inf dk_z (1 + rR_TM)^2 / (kap^2 + k_z^2)."""
    n = medium.n

    def f(kz: np.ndarray) -> np.ndarray:
        kzd = np.sqrt(n * n * kz * kz + (n * n - 1.0) * kap * kap)
        one_plus_r = 2.0 * n * n * kz / (n * n * kz + kzd)
        return one_plus_r**2 / (kap * kap + kz * kz)

    return float(np.real(decaying_halfline_integral(f, max(kap, 1e-12), spec).value))


def _left_longitudinal(medium: Medium, kap: float, spec: QuadratureSpec) -> float:
    """int_0^inf dk_zd |tL_TM/n|^2 n^2/(kap^2 + k_zd^2), split at the total
    internal reflection threshold where the vacuum k_z turns imaginary."""
    n = medium.n
    gamma_d = kap * math.sqrt(n * n - 1.0)

    def evanescent(kzd: np.ndarray) -> np.ndarray:
        # vacuum kz = i t, t = sqrt(gamma_d^2 - kzd^2)/n; |n^2 kz + kzd|^2
        t2 = np.maximum(gamma_d * gamma_d - kzd * kzd, 0.0) / (n * n)
        denom2 = kzd * kzd + n**4 * t2
        return 4.0 * n * n * kzd * kzd / (denom2 * (kap * kap + kzd * kzd))

    def travelling(kzd: np.ndarray) -> np.ndarray:
        kz = np.sqrt(np.maximum(kzd * kzd - gamma_d * gamma_d, 0.0)) / n
        denom = n * n * kz + kzd
        return 4.0 * n * n * kzd * kzd / (denom * denom * (kap * kap + kzd * kzd))

    ev = cut_segment_integral(evanescent, gamma_d, spec)
    tr = decaying_halfline_integral(travelling, max(kap, gamma_d, 1e-12), spec, offset=gamma_d)
    return float(np.real(ev.value) + np.real(tr.value))


def second_order_shift(
    q: float, medium: Medium, z0: float, spec: QuadratureSpec
) -> ShiftResult:
    """Numerical second-order shift of the surface-charge coupling, with the
    image potential and the ratio dE/V^es (analytic target (n^2-1)/2n^2)."""
    if z0 <= 0.0:
        raise ValueError("the charge must sit outside the dielectric (z0 > 0)")
    n = medium.n
    expected = redistribution_factors(medium)[0]
    v_es = image_potential_ves(q, medium, z0)
    if n == 1.0:
        return ShiftResult(0.0, v_es, 0.0, expected, 0.0, 0.0, n, z0, q)
    chat = (n * n - 1.0) / (2.0 * n * n)
    pref = -(q * q) * chat * chat / (8.0 * math.pi**2)

    def radial(kap: np.ndarray) -> np.ndarray:
        out = np.empty((len(kap), 2))
        for idx, k in enumerate(kap):
            out[idx, 0] = k * _left_longitudinal(medium, float(k), spec)
            out[idx, 1] = k * _right_longitudinal(medium, float(k), spec)
        return out

    parts = damped_radial_transform(radial, 2.0 * z0, 0, 0.0, spec)
    left = pref * float(np.real(parts.value[0]))
    right = pref * float(np.real(parts.value[1]))
    delta_e = left + right
    return ShiftResult(delta_e, v_es, delta_e / v_es, expected, left, right, n, z0, q)


def gauge_invariance_sum(q: float, medium: Medium, z0: float, spec: QuadratureSpec) -> float:
    """dE + ((n^2+1)/2n^2) V^es; gauge invariance demands this equal V^es."""
    shift = second_order_shift(q, medium, z0, spec)
    return shift.delta_e + redistribution_factors(medium)[1] * shift.v_es


def double_commutator_cnumber(
    q: float, medium: Medium, z0: float, spec: QuadratureSpec
) -> float:
    """c-number (1/2)(i/hbar)^2 [S,[S,H_field]] of the gauge transformation at
    particle height z0, as the mode integral q^2 sum_k omega_k |chi_k(z0)|^2.

    The generating-function coefficient is chi_k = g_k e^{-|k_par| z0} /
    sqrt(2 omega^3), so omega |chi_k|^2 = |g_k|^2 e^{-2 |k_par| z0}/(2 omega^2)
    and the sum collapses onto the same longitudinal integrals as the
    second-order shift with the opposite sign.
    """
    if z0 <= 0.0:
        raise ValueError("the charge must sit outside the dielectric (z0 > 0)")
    n = medium.n
    if n == 1.0:
        return 0.0
    chat = (n * n - 1.0) / (2.0 * n * n)
    pref = (q * q) * chat * chat / (8.0 * math.pi**2)

    def radial(kap: np.ndarray) -> np.ndarray:
        out = np.empty(len(kap))
        for idx, k in enumerate(kap):
            out[idx] = k * (
                _left_longitudinal(medium, float(k), spec)
                + _right_longitudinal(medium, float(k), spec)
            )
        return out

    total = damped_radial_transform(radial, 2.0 * z0, 0, 0.0, spec)
    return pref * float(np.real(total.value))

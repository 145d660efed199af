"""Two-point commutator kernels of the half-space problem.

Every kernel K reported here is the real tensor multiplying -i*hbar in the
equal-time commutator [A_i(r), eps0 E_j(r')] = -i*hbar K_ij(r, r'), and the
delta^3 / transverse-delta distributional parts are never evaluated: at
separated points the generalized-gauge kernel equals -grad_i grad'_j G
entirely.  In this convention

    GeneralizedDelta = -grad grad' (G0 + GR)   (z > 0)   |  -grad grad' GT  (z < 0)
    GaugeDifference  = -grad grad' GR          (z > 0)   |  +alpha grad grad' G0  (z < 0)
    TrueCoulomb      = GeneralizedDelta - GaugeDifference = -grad grad' G0 everywhere
    PerfectReflector = the n -> infinity image form of GeneralizedDelta.

Fixed-k_par spectral profiles take k_par along +x; writing uhat for that
direction and vhat = uhat x zhat, every kernel is a combination of the five
dyads uu, uz, zu, zz (TM) and vv (TE).  Profiles are normalised so that

    K_ij(r, r') = (2 pi)^{-3} int d^2 k_par  e^{i k_par . (r_par - r'_par)} P_ij(kpar; z, z')

The azimuthal integral reduces to Bessel kernels of orders 0-2: with
Delta r_par = rho * uhat and arguments kappa*rho,

    uu -> pi (J0 - J2)  into xx   (and pi (J0 + J2) into yy)
    vv -> pi (J0 + J2)  into xx   (and pi (J0 - J2) into yy)
    uz, zu -> 2 pi i J1 into xz, zx
    zz -> 2 pi J0       into zz,

after which the tensor is rotated about z to restore the actual azimuth.
The inner k_z quadrature (travelling axis through the oscillatory engine,
evanescent segment through the cut rule) is the numerical path that the
residue-theorem closed forms are verified against.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable

import numpy as np
from scipy.special import jv

from .greens import (
    GreenVariant,
    PointPair,
    _MIRROR,
    _grad_grad_inverse_distance,
    grad_grad_green_tensor,
)
from .medium import Medium, Polarization, Side, evanescent_threshold
from .modes import chi_mode_coefficient, sigma_mode_coefficient
from .spectral import (
    QuadratureError,
    QuadratureSpec,
    _adaptive_panels,
    cut_segment_integral,
    halfline_oscillatory_integral,
)

__all__ = [
    "KernelKind",
    "KernelAssembly",
    "kz_spectral_kernel",
    "residue_closed_form",
    "assemble_kernel",
    "assemble_kernel_result",
    "gauge_difference_closed_form",
    "curl_annihilation_residual",
    "poisson_jump_residual",
    "perfect_reflector_convergence",
]

_TWO_PI_CUBED = (2.0 * math.pi) ** 3


class KernelKind(Enum):
    GENERALIZED_DELTA = "generalized_delta"
    GAUGE_DIFFERENCE = "gauge_difference"
    TRUE_COULOMB = "true_coulomb"
    PERFECT_REFLECTOR = "perfect_reflector"


@dataclass
class KernelAssembly:
    tensor: np.ndarray
    error_estimate: float
    nodes_used: int


# ---------------------------------------------------------------------------
# fixed-k_par profiles: complex arrays [uu, uz, zu, zz, vv]
# ---------------------------------------------------------------------------

ProfileFn = Callable[[float], "_ProfileValue"]


@dataclass
class _ProfileValue:
    comps: np.ndarray  # shape (5,) complex
    error: float
    nodes: int


def _reflected_profile(medium: Medium, kap: float, z: float, zp: float,
                       spec: QuadratureSpec) -> _ProfileValue:
    """Reflected kernel profile for z, z' > 0 (both travelling half-axes plus
    the evanescent segment)."""
    n = medium.n
    s = z + zp
    if n == 1.0:
        return _ProfileValue(np.zeros(5, dtype=complex), 0.0, 0)

    def travelling(sign: float):
        def f(k: np.ndarray) -> np.ndarray:
            kz = sign * k
            kzd = sign * np.sqrt(n * n * k * k + (n * n - 1.0) * kap * kap)
            kmag2 = kap * kap + k * k
            rtm = (n * n * kz - kzd) / (n * n * kz + kzd)
            rte = (kz - kzd) / (kz + kzd)
            phase = np.exp(1j * kz * s)
            uu = rtm * (-kz * kz / kmag2) * phase
            uz = rtm * (-kz * kap / kmag2) * phase
            zu = rtm * (kap * kz / kmag2) * phase
            zz = rtm * (kap * kap / kmag2) * phase
            vv = rte * phase
            return np.stack([uu, uz, zu, zz, vv], axis=-1)
        return f

    r_pos = halfline_oscillatory_integral(travelling(+1.0), s, spec)
    r_neg = halfline_oscillatory_integral(travelling(-1.0), s, spec)

    gamma = evanescent_threshold(medium, kap)

    def evanescent(t: np.ndarray) -> np.ndarray:
        kzd = np.sqrt(np.maximum((n * n - 1.0) * kap * kap - n * n * t * t, 0.0))
        kmag2 = kap * kap - t * t
        coef_tm = 4.0 * n * n * t * kzd / (kzd * kzd + n**4 * t * t)
        coef_te = 4.0 * t * kzd / (kzd * kzd + t * t)
        damp = np.exp(-t * s)
        uu = coef_tm * (t * t / kmag2) * damp
        uz = coef_tm * (-1j * t * kap / kmag2) * damp
        zu = coef_tm * (1j * t * kap / kmag2) * damp
        zz = coef_tm * (kap * kap / kmag2) * damp
        vv = coef_te * damp
        return np.stack([uu, uz, zu, zz, vv], axis=-1)

    ev = cut_segment_integral(evanescent, gamma, spec)
    comps = np.asarray(r_pos.value) + np.asarray(r_neg.value) + np.asarray(ev.value)
    err = r_pos.error_estimate + r_neg.error_estimate + ev.error_estimate
    nodes = r_pos.nodes_used + r_neg.nodes_used + ev.nodes_used
    return _ProfileValue(comps, err, nodes)


def _transmitted_profile(medium: Medium, kap: float, z: float, zp: float,
                         spec: QuadratureSpec) -> _ProfileValue:
    """Transmitted kernel profile for z < 0, z' > 0."""
    n = medium.n
    s_eff = n * abs(z) + zp

    def travelling(sign: float):
        def f(k: np.ndarray) -> np.ndarray:
            kz = sign * k
            kzd = sign * np.sqrt(n * n * k * k + (n * n - 1.0) * kap * kap)
            kmag2 = kap * kap + k * k
            ttm = 2.0 * n * kz / (n * n * kz + kzd)
            tte = 2.0 * kz / (kz + kzd)
            phase = np.exp(-1j * kzd * z + 1j * kz * zp)
            uu = ttm * (kzd * kz / (n * kmag2)) * phase
            uz = ttm * (kzd * kap / (n * kmag2)) * phase
            zu = ttm * (kap * kz / (n * kmag2)) * phase
            zz = ttm * (kap * kap / (n * kmag2)) * phase
            vv = tte * phase
            return np.stack([uu, uz, zu, zz, vv], axis=-1)
        return f

    r_pos = halfline_oscillatory_integral(travelling(+1.0), s_eff, spec)
    r_neg = halfline_oscillatory_integral(travelling(-1.0), s_eff, spec)

    gamma = evanescent_threshold(medium, kap)

    def evanescent(t: np.ndarray) -> np.ndarray:
        kzd = np.sqrt(np.maximum((n * n - 1.0) * kap * kap - n * n * t * t, 0.0))
        kmag = np.sqrt(kap * kap - t * t)
        kz = 1j * t
        damp = np.exp(-t * zp)
        rl_tm = -(n * n * kz - kzd) / (n * n * kz + kzd)
        rl_te = -(kz - kzd) / (kz + kzd)
        # (t/kzd) T^{L*} with the kzd of T^{L*} cancelled analytically
        coef_tm = 2.0 * n * t / (kzd - 1j * n * n * t) * damp
        coef_te = 2.0 * t / (kzd - 1j * t) * damp
        ep, em = np.exp(1j * kzd * z), np.exp(-1j * kzd * z)
        au = kzd / (n * kmag) * (ep - rl_tm * em)
        az = -kap / (n * kmag) * (ep + rl_tm * em)
        bu = -1j * t / kmag
        bz = -kap / kmag
        uu = coef_tm * au * bu
        uz = coef_tm * au * bz
        zu = coef_tm * az * bu
        zz = coef_tm * az * bz
        vv = coef_te * (ep + rl_te * em)
        return np.stack([uu, uz, zu, zz, vv], axis=-1)

    ev = cut_segment_integral(evanescent, gamma, spec)
    comps = np.asarray(r_pos.value) + np.asarray(r_neg.value) + np.asarray(ev.value)
    err = r_pos.error_estimate + r_neg.error_estimate + ev.error_estimate
    nodes = r_pos.nodes_used + r_neg.nodes_used + ev.nodes_used
    return _ProfileValue(comps, err, nodes)


def _free_profile(kap: float, z: float, zp: float) -> _ProfileValue:
    """Analytic fixed-k_par profile of -grad grad' G0 (smooth part of the
    transverse delta); standard 2-D Fourier representation of 1/|r - r'|."""
    dz = z - zp
    damp = math.exp(-kap * abs(dz))
    if dz >= 0.0:
        comps = -math.pi * kap * damp * np.array([1.0, 1j, 1j, -1.0, 0.0])
    else:
        comps = -math.pi * kap * damp * np.array([1.0, -1j, -1j, -1.0, 0.0])
    return _ProfileValue(comps.astype(complex), 0.0, 0)


def _gauge_difference_profile(medium: Medium, kap: float, z: float, zp: float,
                              spec: QuadratureSpec) -> _ProfileValue:
    """Mode-sum profile of the gauge-difference kernel (TM surface modes only)."""
    n = medium.n
    if n == 1.0:
        return _ProfileValue(np.zeros(5, dtype=complex), 0.0, 0)
    chat = (n * n - 1.0) / (2.0 * n * n)

    def right_modes(k: np.ndarray) -> np.ndarray:
        kzd = np.sqrt(n * n * k * k + (n * n - 1.0) * kap * kap)
        kmag = np.sqrt(kap * kap + k * k)
        r = (n * n * k - kzd) / (n * n * k + kzd)
        pref = (1.0 + r) / kmag  # 1/omega = 1/kmag
        ju = pref * (-k / kmag * np.exp(1j * k * zp) + r * k / kmag * np.exp(-1j * k * zp))
        jz = pref * (-kap / kmag) * (np.exp(1j * k * zp) + r * np.exp(-1j * k * zp))
        return np.stack([ju, jz], axis=-1)

    def left_travelling(k: np.ndarray) -> np.ndarray:
        kzd = np.sqrt(n * n * k * k + (n * n - 1.0) * kap * kap)
        kmag = np.sqrt(kap * kap + k * k)
        tl = 2.0 * n * kzd / (n * n * k + kzd)
        pref = (k / kzd) * tl * tl / kmag
        phase = np.exp(-1j * k * zp)
        ju = pref * (k / kmag) * phase
        jz = pref * (-kap / kmag) * phase
        return np.stack([ju, jz], axis=-1)

    gamma = evanescent_threshold(medium, kap)

    def left_evanescent(t: np.ndarray) -> np.ndarray:
        kzd = np.sqrt(np.maximum((n * n - 1.0) * kap * kap - n * n * t * t, 0.0))
        kmag = np.sqrt(kap * kap - t * t)
        coef = 4.0 * n * n * t * kzd / (kzd * kzd + n**4 * t * t) / kmag
        damp = np.exp(-t * zp)
        ju = coef * (-1j * t / kmag) * damp
        jz = coef * (-kap / kmag) * damp
        return np.stack([ju, jz], axis=-1)

    jr = halfline_oscillatory_integral(right_modes, zp, spec)
    jl = halfline_oscillatory_integral(left_travelling, zp, spec)
    je = cut_segment_integral(left_evanescent, gamma, spec)
    j = np.asarray(jr.value) + np.asarray(jl.value) + np.asarray(je.value)
    sgn = 1.0 if z >= 0.0 else -1.0
    front = 1j * kap * chat * math.exp(-kap * abs(z))
    comps = front * np.array([j[0], j[1], 1j * sgn * j[0], 1j * sgn * j[1], 0.0])
    err = abs(front) * (jr.error_estimate + jl.error_estimate + je.error_estimate)
    nodes = jr.nodes_used + jl.nodes_used + je.nodes_used
    return _ProfileValue(comps, err, nodes)


def _residue_profile(medium: Medium, kap: float, z: float, zp: float) -> np.ndarray:
    """Closed-form profile from the TM pole at k_z = i|k_par| (TE vanishes)."""
    n = medium.n
    if z >= 0.0:
        al = medium.image_strength
        pref = math.pi * al * kap * math.exp(-kap * (z + zp))
        return pref * np.array([1.0, -1j, 1j, 1.0, 0.0])
    pref = -2.0 * math.pi * kap / (n * n + 1.0) * math.exp(kap * (z - zp))
    return pref * np.array([1.0, -1j, -1j, -1.0, 0.0])


def _profile_tensor(comps: np.ndarray, pol: Polarization | None) -> np.ndarray:
    """Reconstruct the 3x3 tensor from dyadic components (k_par along +x)."""
    uu, uz, zu, zz, vv = comps
    t = np.zeros((3, 3), dtype=complex)
    if pol is not Polarization.TE:
        t[0, 0] = uu
        t[0, 2] = uz
        t[2, 0] = zu
        t[2, 2] = zz
    if pol is not Polarization.TM:
        t[1, 1] = vv
    return t


def kz_spectral_kernel(
    medium: Medium,
    pol: Polarization,
    i: int,
    j: int,
    kpar_mag: float,
    z: float,
    zprime: float,
    spec: QuadratureSpec,
) -> complex:
    """Numerically assembled k_z integral at fixed k_par for one polarization
    and tensor component: the reflected kernel for z > 0, the transmitted one
    for z < 0.  k_par points along +x; the (2 pi)^{-3} measure and the
    parallel plane-wave factor of the full assembly are not included.
    """
    if zprime <= 0.0:
        raise ValueError("the primed point must lie outside the dielectric (z' > 0)")
    if z >= 0.0:
        prof = _reflected_profile(medium, kpar_mag, z, zprime, spec)
    else:
        prof = _transmitted_profile(medium, kpar_mag, z, zprime, spec)
    return complex(_profile_tensor(prof.comps, pol)[i, j])


def residue_closed_form(
    medium: Medium, i: int, j: int, kpar_mag: float, z: float, zprime: float
) -> complex:
    """Residue-theorem value of the same k_z integral (TM pole only; the TE
    integrand is entire in the upper half-plane and integrates to zero)."""
    if zprime <= 0.0:
        raise ValueError("the primed point must lie outside the dielectric (z' > 0)")
    comps = _residue_profile(medium, kpar_mag, z, zprime)
    return complex(_profile_tensor(comps, None)[i, j])


# ---------------------------------------------------------------------------
# radial assembly
# ---------------------------------------------------------------------------

def _bessel_combination(comps: np.ndarray, kap: float, rho: float) -> np.ndarray:
    """Map profile components to the radial integrand of the aligned tensor,
    returning [xx, yy, zz, xz, zx] including the kappa measure factor."""
    uu, uz, zu, zz, vv = comps
    x = kap * rho
    j0 = jv(0, x)
    j1 = jv(1, x)
    j2 = jv(2, x)
    pi = math.pi
    w_xx = pi * (j0 - j2) * uu + pi * (j0 + j2) * vv
    w_yy = pi * (j0 + j2) * uu + pi * (j0 - j2) * vv
    w_zz = 2.0 * pi * j0 * zz
    w_xz = 2.0j * pi * j1 * uz
    w_zx = 2.0j * pi * j1 * zu
    return kap * np.array([w_xx, w_yy, w_zz, w_xz, w_zx])


def _radial_assemble(
    profile_fn: Callable[[float], _ProfileValue],
    rho: float,
    damping: float,
    spec: QuadratureSpec,
) -> tuple[np.ndarray, float, int]:
    """Integrate the profile against the Bessel weights over kappa in (0, inf).

    Exponentially damped profiles are truncated after the configured number
    of decay decades; profiles whose damping scale is much shorter than the
    Bessel period instead go through the oscillatory engine with the Bessel
    zeros as partition (the free-space part at z ~ z' needs this).
    """
    nodes_extra = 0
    err_inner_rate = 0.0  # peak of (inner error x Bessel weight scale) over kappa
    k_seen_max = 0.0

    def integrand(karr: np.ndarray) -> np.ndarray:
        nonlocal nodes_extra, err_inner_rate, k_seen_max
        out = np.empty((len(karr), 5), dtype=complex)
        for idx, kap in enumerate(karr):
            prof = profile_fn(float(kap))
            nodes_extra += prof.nodes
            err_inner_rate = max(err_inner_rate, prof.error * float(kap) * 2.0 * math.pi)
            k_seen_max = max(k_seen_max, float(kap))
            out[idx] = _bessel_combination(prof.comps, float(kap), rho)
        return out

    use_truncation = rho == 0.0
    if damping > 0.0 and rho > 0.0:
        kmax = spec.damped_truncation_decades * math.log(10.0) / damping
        # truncation unless the damping scale is so short that the range would
        # need an unreasonable number of Bessel panels
        use_truncation = kmax * rho <= 2.0 * math.pi or kmax <= 40.0 * math.pi / rho
    if use_truncation:
        if damping <= 0.0:
            raise ValueError("profile without damping needs rho > 0 for the assembly")
        kmax = spec.damped_truncation_decades * math.log(10.0) / damping
        npanels = max(8, min(256, int(math.ceil(kmax * rho / math.pi)) if rho > 0.0 else 8))
        breaks = np.linspace(0.0, kmax, npanels + 1)
        total, err, nodes, ok = _adaptive_panels(integrand, breaks, spec, max_panels=600)
        if not ok:
            raise QuadratureError("radial assembly stalled")
        result = np.asarray(total)
        err_total = err
    else:
        # undamped profiles converge through the Bessel oscillation alone;
        # a mildly relaxed tolerance keeps the accelerated partial sums well
        # inside the assembly target without demanding engine-level precision
        osc_spec = replace(
            spec,
            abs_tol=spec.abs_tol * 30.0,
            rel_tol=spec.rel_tol * 30.0,
            max_oscillation_periods=max(spec.max_oscillation_periods, 64),
        )
        res = halfline_oscillatory_integral(integrand, rho, osc_spec)
        result = np.asarray(res.value)
        err_total = res.error_estimate
        nodes = res.nodes_used
    xx, yy, zz, xz, zx = result
    tensor = np.array(
        [[xx, 0.0, xz], [0.0, yy, 0.0], [zx, 0.0, zz]], dtype=complex
    ) / _TWO_PI_CUBED
    err_total = (err_total + err_inner_rate * k_seen_max) / _TWO_PI_CUBED
    return tensor, err_total, nodes + nodes_extra


def _rotation_about_z(phi: float) -> np.ndarray:
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _image_grad_grad(pair: PointPair, strength: float) -> np.ndarray:
    """grad grad' of the image term with explicit strength (alpha or 1)."""
    dbar = pair.r - pair.image_point
    return -strength / (4.0 * math.pi) * (_grad_grad_inverse_distance(dbar) @ _MIRROR)


def assemble_kernel_result(
    medium: Medium, kind: KernelKind, pair: PointPair, spec: QuadratureSpec
) -> KernelAssembly:
    """Assemble the requested kernel at separated points (full quadrature path
    except PerfectReflector, which is the analytic image form)."""
    if pair.separation == 0.0:
        raise ValueError("coincident points: distributional parts are never evaluated")
    z, zp = float(pair.r[2]), float(pair.rprime[2])

    if kind is KernelKind.PERFECT_REFLECTOR:
        if z < 0.0:
            raise ValueError("the perfect-reflector kernel lives in z, z' > 0")
        tensor = -(
            _grad_grad_inverse_distance(pair.r - pair.rprime) / (4.0 * math.pi)
            + _image_grad_grad(pair, 1.0)
        )
        return KernelAssembly(tensor.astype(complex), 0.0, 0)

    delta_par = pair.r[:2] - pair.rprime[:2]
    rho = float(np.hypot(delta_par[0], delta_par[1]))
    phi0 = math.atan2(delta_par[1], delta_par[0]) if rho > 0.0 else 0.0

    parts: list[tuple[Callable[[float], _ProfileValue], float, float]] = []
    # (profile function, damping scale, sign)
    if kind in (KernelKind.GENERALIZED_DELTA, KernelKind.TRUE_COULOMB):
        if z >= 0.0:
            parts.append(
                (lambda kap: _free_profile(kap, z, zp), abs(z - zp), 1.0)
            )
            if medium.n > 1.0:
                parts.append(
                    (lambda kap: _reflected_profile(medium, kap, z, zp, spec), z + zp, 1.0)
                )
        else:
            parts.append(
                (lambda kap: _transmitted_profile(medium, kap, z, zp, spec), zp - z, 1.0)
            )
    if kind is KernelKind.GAUGE_DIFFERENCE or (
        kind is KernelKind.TRUE_COULOMB and medium.n > 1.0
    ):
        sign = -1.0 if kind is KernelKind.TRUE_COULOMB else 1.0
        parts.append(
            (
                lambda kap: _gauge_difference_profile(medium, kap, z, zp, spec),
                abs(z) + zp,
                sign,
            )
        )

    total = np.zeros((3, 3), dtype=complex)
    err = 0.0
    nodes = 0
    for profile_fn, damping, sign in parts:
        t, e, nd = _radial_assemble(profile_fn, rho, damping, spec)
        total += sign * t
        err += e
        nodes += nd
    rot = _rotation_about_z(phi0)
    return KernelAssembly(rot @ total @ rot.T, err, nodes)


def assemble_kernel(
    medium: Medium, kind: KernelKind, pair: PointPair, spec: QuadratureSpec
) -> np.ndarray:
    return assemble_kernel_result(medium, kind, pair, spec).tensor


def gauge_difference_closed_form(medium: Medium, pair: PointPair) -> np.ndarray:
    """Closed form of the gauge-difference kernel in the -i*hbar convention:
    -grad grad' GR for z > 0, +alpha grad grad' G0 for z < 0 (primed
    derivatives literal; they may not be traded for unprimed ones in the
    reflected term)."""
    z = float(pair.r[2])
    if z >= 0.0:
        return -grad_grad_green_tensor(medium, GreenVariant.REFLECTED, pair)
    al = medium.image_strength
    return al * grad_grad_green_tensor(medium, GreenVariant.FREE, pair)


# ---------------------------------------------------------------------------
# verification residuals
# ---------------------------------------------------------------------------

def _fd_first_index_derivatives(
    tensor_fn: Callable[[np.ndarray], np.ndarray], r: np.ndarray, step: float
) -> np.ndarray:
    """Central finite-difference d/dr_l of a tensor field, shape (3, 3, 3) [l, i, j]."""
    out = np.empty((3, 3, 3))
    for axis in range(3):
        dr = np.zeros(3)
        dr[axis] = step
        out[axis] = (tensor_fn(r + dr) - tensor_fn(r - dr)) / (2.0 * step)
    return out


def fd_curl_first_index(
    tensor_fn: Callable[[np.ndarray], np.ndarray], r: np.ndarray, step: float
) -> tuple[np.ndarray, float]:
    """FD curl over the first index: curl[m, j] = eps_{mli} d_l K_{ij}.

    Returns the curl matrix and the max first-derivative magnitude, the
    natural scale for a relative residual.
    """
    d = _fd_first_index_derivatives(tensor_fn, r, step)
    curl = np.empty((3, 3))
    curl[0] = d[1, 2] - d[2, 1]
    curl[1] = d[2, 0] - d[0, 2]
    curl[2] = d[0, 1] - d[1, 0]
    return curl, float(np.max(np.abs(d)))


def curl_annihilation_residual(
    medium: Medium, pair: PointPair, fd_step: float | None = None
) -> float:
    """Relative FD-curl residual of the gauge-difference kernel over its first
    index; the kernel is a pure gradient there, so the residual is FD noise."""
    if medium.n == 1.0:
        return 0.0
    step = fd_step if fd_step is not None else 1e-3 * pair.separation

    def field(r: np.ndarray) -> np.ndarray:
        return gauge_difference_closed_form(medium, PointPair(r, pair.rprime))

    curl, scale = fd_curl_first_index(field, pair.r, step)
    if scale == 0.0:
        return 0.0
    return float(np.max(np.abs(curl))) / scale


def poisson_jump_residual(
    medium: Medium, kpar_mag: float, kz_or_kzd: complex, side: Side
) -> float:
    """Per-mode check of the Poisson equation for the gauge potential: away
    from the interface the e^{-|k_par||z|} profile is harmonic exactly, and
    the derivative jump must reproduce the surface-charge coefficient:
    2 |k_par| * chidot(0) = sigma / eps0.  Returns the normalised residual."""
    chidot0 = chi_mode_coefficient(
        medium, side, kpar_mag, kz_or_kzd, z=0.0, time_derivative=True
    )
    lhs = 2.0 * kpar_mag * chidot0
    rhs = sigma_mode_coefficient(medium, side, kpar_mag, kz_or_kzd)
    scale = max(abs(lhs), abs(rhs))
    if scale == 0.0:
        return 0.0
    return abs(lhs - rhs) / scale


def perfect_reflector_convergence(
    pair: PointPair, n_values: list[float], spec: QuadratureSpec
) -> list[float]:
    """Max-component deviation of the assembled generalized-gauge kernel from
    the perfect-reflector image form, for each n; decays like 2/(n^2+1)."""
    if pair.r[2] <= 0.0:
        raise ValueError("the perfect-reflector comparison needs z, z' > 0")
    target = assemble_kernel(
        Medium(1.0), KernelKind.PERFECT_REFLECTOR, pair, spec
    )
    devs = []
    for n in n_values:
        kern = assemble_kernel(Medium(n), KernelKind.GENERALIZED_DELTA, pair, spec)
        devs.append(float(np.max(np.abs(kern - target))))
    return devs

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from halfspace_qed.greens import GreenVariant, PointPair, grad_grad_green_tensor
from halfspace_qed.kernels import (
    KernelKind,
    assemble_kernel,
    assemble_kernel_result,
    curl_annihilation_residual,
    gauge_difference_closed_form,
    kz_spectral_kernel,
    perfect_reflector_convergence,
    poisson_jump_residual,
    residue_closed_form,
)
from halfspace_qed.medium import Medium, Polarization, Side
from halfspace_qed.spectral import QuadratureSpec, damped_radial_transform

SPEC = QuadratureSpec()


def pair(r, rp):
    return PointPair(np.array(r, dtype=float), np.array(rp, dtype=float))


def test_kz_kernel_matches_residue_form():
    med = Medium(2.0)
    for kpar, z, zp in [(1.3, 0.7, 0.4), (0.6, -0.8, 0.6)]:
        scale = max(
            abs(residue_closed_form(med, i, j, kpar, z, zp)) for i in range(3) for j in range(3)
        )
        for i, j in [(0, 0), (0, 2), (2, 0), (2, 2), (1, 1)]:
            quad = kz_spectral_kernel(med, Polarization.TM, i, j, kpar, z, zp, SPEC)
            closed = residue_closed_form(med, i, j, kpar, z, zp)
            assert abs(quad - closed) < 1e-6 * scale


def test_kz_kernel_te_suppressed():
    med = Medium(2.0)
    kpar, z, zp = 1.1, 0.5, 0.5
    scale = abs(residue_closed_form(med, 2, 2, kpar, z, zp))
    for i in range(3):
        for j in range(3):
            te = kz_spectral_kernel(med, Polarization.TE, i, j, kpar, z, zp, SPEC)
            assert abs(te) < 1e-8 * scale


def test_kz_kernel_free_space_zero():
    med = Medium(1.0)
    val = kz_spectral_kernel(med, Polarization.TM, 2, 2, 0.9, 0.6, 0.4, SPEC)
    assert abs(val) < 1e-12
    assert residue_closed_form(med, 2, 2, 0.9, 0.6, 0.4) == 0.0


def test_kz_kernel_rejects_source_inside():
    with pytest.raises(ValueError):
        kz_spectral_kernel(Medium(2.0), Polarization.TM, 0, 0, 1.0, 0.5, -0.5, SPEC)


def test_residue_form_assembles_to_reflected_green_tensor():
    # radial Bessel transform of the closed spectral profile reproduces
    # -grad grad' GR componentwise (zz and xz flavours exercise J0 and J1)
    med = Medium(2.0)
    z, zp, rho = 0.8, 0.5, 0.7
    p = pair((rho, 0.0, z), (0.0, 0.0, zp))
    target = -grad_grad_green_tensor(med, GreenVariant.REFLECTED, p)
    pref = 1.0 / (2 * math.pi) ** 3
    # un-damping the profile leaves polynomial growth, so push the truncation
    spec = QuadratureSpec(damped_truncation_decades=14.0)

    def f_zz(kap):
        return np.array([residue_closed_form(med, 2, 2, float(k), z, zp) for k in kap]) * kap * 2 * math.pi * np.exp(kap * (z + zp))

    res = damped_radial_transform(f_zz, z + zp, 0, rho, spec)
    assert abs(pref * res.value - target[2, 2]) < 1e-6 * np.max(np.abs(target))

    def f_xz(kap):
        return np.array([residue_closed_form(med, 0, 2, float(k), z, zp) for k in kap]) * kap * 2j * math.pi * np.exp(kap * (z + zp))

    res = damped_radial_transform(f_xz, z + zp, 1, rho, spec)
    assert abs(pref * res.value - target[0, 2]) < 1e-6 * np.max(np.abs(target))


def test_assembled_generalized_delta_both_regions():
    med = Medium(2.0)
    for p in (pair((0.4, -0.2, 0.8), (0.1, 0.3, 0.5)), pair((0.5, 0.2, -0.6), (0.0, -0.3, 0.7))):
        res = assemble_kernel_result(med, KernelKind.GENERALIZED_DELTA, p, SPEC)
        target = -grad_grad_green_tensor(med, GreenVariant.FULL, p)
        scale = np.max(np.abs(target))
        assert np.max(np.abs(res.tensor - target)) < 1e-4 * scale
        # assembled kernels are real up to the quadrature error estimate
        assert np.max(np.abs(res.tensor.imag)) <= max(res.error_estimate, 1e-13 * scale)


def test_assembled_kernel_equal_heights_path():
    # z = z' sends the free-space part through the Bessel-oscillation route
    med = Medium(1.5)
    p = pair((0.6, 0.4, 0.7), (-0.2, 0.2, 0.7))
    kern = assemble_kernel(med, KernelKind.GENERALIZED_DELTA, p, SPEC)
    target = -grad_grad_green_tensor(med, GreenVariant.FULL, p)
    assert np.max(np.abs(kern - target)) < 1e-4 * np.max(np.abs(target))


def test_gauge_difference_profile_matches_residue_profile_pointwise():
    # at fixed k_par the surface-mode bilinear sum reproduces the reflected
    # residue profile exactly (not only after assembly), including complex
    # off-diagonal structure; the z < 0 branch follows by the profile's
    # z-dependence, so check both signs
    from halfspace_qed.kernels import _gauge_difference_profile, _residue_profile

    med = Medium(2.0)
    for kap, z, zp in [(1.3, 0.7, 0.4), (0.5, 1.1, 0.8), (0.9, -0.6, 0.5)]:
        prof = _gauge_difference_profile(med, kap, z, zp, SPEC)
        if z >= 0.0:
            target = _residue_profile(med, kap, z, zp)
        else:
            al = med.image_strength
            pref = math.pi * al * kap * math.exp(kap * (z - zp))
            target = pref * np.array([1.0, -1j, -1j, -1.0, 0.0])
        scale = np.max(np.abs(target))
        assert np.max(np.abs(prof.comps - target)) < 1e-8 * scale


def test_assembled_gauge_difference_matches_closed_form():
    med = Medium(2.0)
    for p in (pair((0.4, -0.2, 0.8), (0.1, 0.3, 0.5)), pair((0.5, 0.2, -0.6), (0.0, -0.3, 0.7))):
        res = assemble_kernel_result(med, KernelKind.GAUGE_DIFFERENCE, p, SPEC)
        target = gauge_difference_closed_form(med, p)
        scale = np.max(np.abs(target))
        assert np.max(np.abs(res.tensor - target)) < 1e-4 * scale
        assert np.max(np.abs(res.tensor.imag)) <= max(res.error_estimate, 1e-13 * scale)


def test_true_coulomb_reduces_to_free_transverse_kernel():
    p = pair((0.4, -0.2, 0.8), (0.1, 0.3, 0.5))
    results = {}
    for n in (1.5, 4.0):
        kern = assemble_kernel(Medium(n), KernelKind.TRUE_COULOMB, p, SPEC)
        target = -grad_grad_green_tensor(Medium(n), GreenVariant.FREE, p)
        assert np.max(np.abs(kern - target)) < 1e-4 * np.max(np.abs(target))
        results[n] = kern
    assert np.max(np.abs(results[1.5] - results[4.0])) < 1e-4 * np.max(np.abs(results[1.5]))


def test_transmitted_sum_rule():
    # transmitted tensor plus gauge-difference tensor equals the free tensor
    # (the prefactors 2/(n^2+1) and (n^2-1)/(n^2+1) sum to 1)
    med = Medium(2.0)
    p = pair((0.2, 0.6, -1.0), (-0.1, 0.0, 0.5))
    gen = assemble_kernel(med, KernelKind.GENERALIZED_DELTA, p, SPEC)
    gauge = assemble_kernel(med, KernelKind.GAUGE_DIFFERENCE, p, SPEC)
    free = -grad_grad_green_tensor(med, GreenVariant.FREE, p)
    assert np.max(np.abs(gen - gauge - free)) < 1e-4 * np.max(np.abs(free))


def test_gauge_difference_closed_form_branches():
    med = Medium(math.sqrt(3.0))  # alpha = 1/2
    assert np.allclose(gauge_difference_closed_form(Medium(1.0), pair((0.3, 0, 0.4), (0, 0, 0.8))), 0.0)
    p_up = pair((0.3, 0.0, 0.4), (0.0, 0.0, 0.8))
    up = gauge_difference_closed_form(med, p_up)
    assert_allclose(up, -grad_grad_green_tensor(med, GreenVariant.REFLECTED, p_up), rtol=1e-14)
    p_down = pair((0.3, 0.0, -0.4), (0.0, 0.0, 0.8))
    down = gauge_difference_closed_form(med, p_down)
    assert_allclose(down, 0.5 * grad_grad_green_tensor(med, GreenVariant.FREE, p_down), rtol=1e-14)


def test_rotation_invariance_about_z():
    med = Medium(2.0)
    p = pair((0.5, -0.3, 0.8), (0.1, 0.2, 0.5))
    kern = assemble_kernel(med, KernelKind.GENERALIZED_DELTA, p, SPEC)
    rot = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    p_rot = PointPair(rot @ p.r, rot @ p.rprime)
    kern_rot = assemble_kernel(med, KernelKind.GENERALIZED_DELTA, p_rot, SPEC)
    assert np.max(np.abs(kern_rot - rot @ kern @ rot.T)) < 1e-7 * np.max(np.abs(kern))


def test_coincident_points_rejected():
    p = PointPair(np.array([0.1, 0.2, 0.5]), np.array([0.1, 0.2, 0.5]))
    with pytest.raises(ValueError):
        assemble_kernel(Medium(2.0), KernelKind.GENERALIZED_DELTA, p, SPEC)


def test_curl_annihilation():
    assert curl_annihilation_residual(Medium(1.0), pair((0.2, 0, 1.0), (0, 0, 1.2))) == 0.0
    resid = curl_annihilation_residual(Medium(2.0), pair((0.1, 0.05, 1.0), (0.0, 0.0, 1.2)))
    assert resid < 1e-6


def test_poisson_jump_identity():
    assert poisson_jump_residual(Medium(1.0), 1.0, 0.7, Side.RIGHT) == 0.0
    assert poisson_jump_residual(Medium(2.0), 1.0, 0.7, Side.RIGHT) < 1e-12
    assert poisson_jump_residual(Medium(2.0), 1.0, 1.9, Side.LEFT) < 1e-12
    assert poisson_jump_residual(Medium(1e4), 1.0, 0.7, Side.RIGHT) < 1e-12


def test_perfect_reflector_deviation_scaling():
    from halfspace_qed.kernels import _image_grad_grad

    p = pair((0.3, 0.0, 0.7), (0.0, 0.2, 0.5))
    devs = perfect_reflector_convergence(p, [10.0, 30.0, 100.0], SPEC)
    assert devs[0] > devs[1] > devs[2]
    slope = np.polyfit(np.log([10.0, 30.0, 100.0]), np.log(devs), 1)[0]
    assert slope == pytest.approx(-2.0, abs=0.2)
    # deviation magnitude is (1 - alpha(n)) = 2/(n^2+1) of the unit image term
    image_scale = np.max(np.abs(_image_grad_grad(p, 1.0)))
    for n, dev in zip([10.0, 30.0, 100.0], devs):
        assert dev == pytest.approx(2.0 / (n * n + 1.0) * image_scale, rel=2e-2)
    # n = 1 deviation equals the full image-term magnitude
    pr = assemble_kernel(Medium(1.0), KernelKind.PERFECT_REFLECTOR, p, SPEC)
    free = -grad_grad_green_tensor(Medium(1.0), GreenVariant.FREE, p)
    dev_n1 = perfect_reflector_convergence(p, [1.0], SPEC)[0]
    assert dev_n1 == pytest.approx(np.max(np.abs(pr - free)), rel=1e-6)


def test_perfect_reflector_kernel_is_image_form():
    p = pair((0.3, 0.0, 0.7), (0.0, 0.2, 0.5))
    pr = assemble_kernel(Medium(2.0), KernelKind.PERFECT_REFLECTOR, p, SPEC)
    free = grad_grad_green_tensor(Medium(2.0), GreenVariant.FREE, p)
    # image term with unit strength: reflected tensor scaled by 1/alpha
    med = Medium(2.0)
    image = grad_grad_green_tensor(med, GreenVariant.REFLECTED, p) / med.image_strength
    assert_allclose(pr, -(free + image), rtol=1e-12)

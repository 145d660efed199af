import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from halfspace_qed.spectral import (
    CutSubstitution,
    QuadratureError,
    QuadratureSpec,
    cut_segment_integral,
    damped_radial_transform,
    decaying_halfline_integral,
    halfline_oscillatory_integral,
)

SPEC = QuadratureSpec()
TIGHT = QuadratureSpec(damped_truncation_decades=13.0)


def test_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(abs_tol=0.0)
    with pytest.raises(ValueError):
        QuadratureSpec(max_oscillation_periods=4)
    with pytest.raises(ValueError):
        QuadratureSpec(acceleration_order=1)


def test_oscillatory_sin_over_x():
    res = halfline_oscillatory_integral(lambda x: np.sinc(x / np.pi), 1.0, SPEC)
    assert abs(res.value - math.pi / 2) < 1e-10
    assert res.converged


def test_oscillatory_cos_lorentzian():
    res = halfline_oscillatory_integral(lambda x: np.cos(x) / (1 + x * x), 1.0, SPEC)
    assert abs(res.value - math.pi / (2 * math.e)) < 1e-10


def test_oscillatory_zero_integrand_minimal_nodes():
    res = halfline_oscillatory_integral(lambda x: np.zeros_like(x), 1.0, SPEC)
    assert res.value == 0.0
    assert res.converged
    assert res.nodes_used <= 60


def test_oscillatory_abel_values():
    # bounded non-decaying amplitudes converge to the Abel-regularised value
    res = halfline_oscillatory_integral(lambda x: np.exp(1j * x), 1.0, SPEC)
    assert abs(res.value - 1j) < 1e-10
    res = halfline_oscillatory_integral(lambda x: np.sin(2.0 * x), 2.0, SPEC)
    assert abs(res.value - 0.5) < 1e-10


def test_oscillatory_scaled_frequency():
    # int_0^inf sin(5x)/x = pi/2 regardless of the scale
    res = halfline_oscillatory_integral(lambda x: 5.0 * np.sinc(5 * x / np.pi), 5.0, SPEC)
    assert abs(res.value - math.pi / 2) < 1e-10


def test_oscillatory_converged_error_contract():
    for f, s in [(lambda x: np.sinc(x / np.pi), 1.0), (lambda x: np.cos(x) / (1 + x * x), 1.0)]:
        res = halfline_oscillatory_integral(f, s, SPEC)
        assert res.converged
        assert res.error_estimate <= max(SPEC.abs_tol, SPEC.rel_tol * abs(res.value))


def test_oscillatory_requires_positive_scale():
    with pytest.raises(ValueError):
        halfline_oscillatory_integral(lambda x: np.sin(x), 0.0, SPEC)


def test_oscillatory_nonconvergence_raises():
    # amplitude growing too fast for the declared order within few periods
    spec = QuadratureSpec(max_oscillation_periods=8, acceleration_order=2, rel_tol=1e-13)
    with pytest.raises(QuadratureError):
        halfline_oscillatory_integral(lambda x: x**6 * np.exp(1j * x), 1.0, spec)


def test_cut_segment_examples():
    res = cut_segment_integral(lambda t: 1.0 / np.sqrt(1.0 - t * t), 1.0, SPEC)
    assert abs(res.value - math.pi / 2) < 1e-12
    res = cut_segment_integral(lambda t: t, 2.0, SPEC)
    assert abs(res.value - 2.0) < 1e-13
    res = cut_segment_integral(lambda t: np.zeros_like(t), 1.5, SPEC)
    assert res.value == 0.0
    assert cut_segment_integral(lambda t: t, 0.0, SPEC).value == 0.0


def test_cut_segment_without_substitution():
    spec = QuadratureSpec(cut_substitution=CutSubstitution.NONE)
    res = cut_segment_integral(lambda t: t * t, 1.5, spec)
    assert abs(res.value - 1.5**3 / 3) < 1e-12


def test_damped_radial_lipschitz():
    a, rho = 2.0, 1.5
    res = damped_radial_transform(lambda k: np.ones_like(k), a, 0, rho, TIGHT)
    assert abs(res.value - 1.0 / math.hypot(a, rho)) < 1e-10


def test_damped_radial_moment():
    res = damped_radial_transform(lambda k: k, 1.3, 0, 0.0, TIGHT)
    assert abs(res.value - 1.0 / 1.3**2) < 1e-10
    res = damped_radial_transform(lambda k: np.zeros_like(k), 1.0, 0, 0.5, TIGHT)
    assert res.value == 0.0


def test_damped_radial_rejects_zero_damping():
    with pytest.raises(ValueError):
        damped_radial_transform(lambda k: np.ones_like(k), 0.0, 0, 1.0, SPEC)


def test_decaying_halfline():
    res = decaying_halfline_integral(lambda k: 1.0 / (1.0 + k * k), 1.0, SPEC)
    assert abs(res.value - math.pi / 2) < 1e-12
    res = decaying_halfline_integral(lambda k: np.exp(-k), 1.0, SPEC, offset=2.0)
    assert abs(res.value - math.exp(-2.0)) < 1e-12


def test_vector_valued_integrands():
    res = halfline_oscillatory_integral(
        lambda x: np.stack([np.sinc(x / np.pi), np.cos(x) / (1 + x * x)], axis=-1), 1.0, SPEC
    )
    assert np.allclose(res.value, [math.pi / 2, math.pi / (2 * math.e)], atol=1e-10)


@settings(max_examples=30, deadline=None)
@given(alpha=st.floats(-3.0, 3.0), beta=st.floats(-3.0, 3.0))
def test_linearity_property(alpha, beta):
    f = lambda x: np.sinc(x / np.pi)
    g = lambda x: np.cos(x) / (1 + x * x)
    combo = halfline_oscillatory_integral(lambda x: alpha * f(x) + beta * g(x), 1.0, SPEC)
    fa = halfline_oscillatory_integral(f, 1.0, SPEC)
    gb = halfline_oscillatory_integral(g, 1.0, SPEC)
    expect = alpha * fa.value + beta * gb.value
    budget = combo.error_estimate + abs(alpha) * fa.error_estimate + abs(beta) * gb.error_estimate
    assert abs(combo.value - expect) <= budget + 1e-12


def test_tightening_tolerance_stays_within_estimate():
    loose = QuadratureSpec(abs_tol=1e-9, rel_tol=1e-6)
    tight = QuadratureSpec(abs_tol=1e-10, rel_tol=1e-7)
    for f, s in [(lambda x: np.sinc(x / np.pi), 1.0), (lambda x: np.cos(x) / (1 + x * x), 1.0)]:
        r1 = halfline_oscillatory_integral(f, s, loose)
        r2 = halfline_oscillatory_integral(f, s, tight)
        assert abs(r1.value - r2.value) <= r1.error_estimate
    r1 = cut_segment_integral(lambda t: 1 / np.sqrt(4 - t * t), 2.0, loose)
    r2 = cut_segment_integral(lambda t: 1 / np.sqrt(4 - t * t), 2.0, tight)
    assert abs(r1.value - r2.value) <= max(r1.error_estimate, 1e-15)


def test_deterministic_bit_identical():
    f = lambda x: np.cos(0.7 * x) / (1 + x * x)
    runs = [
        (halfline_oscillatory_integral, (f, 0.7, SPEC)),
        (cut_segment_integral, (lambda t: t / np.sqrt(2.25 - t * t), 1.5, SPEC)),
        (damped_radial_transform, (lambda k: 1.0 / (1 + k), 0.8, 1, 0.6, SPEC)),
    ]
    for fn, args in runs:
        a = fn(*args)
        b = fn(*args)
        assert a.value == b.value
        assert a.error_estimate == b.error_estimate
        assert a.nodes_used == b.nodes_used

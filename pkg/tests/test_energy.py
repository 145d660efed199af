import math

import pytest

from halfspace_qed.energy import (
    double_commutator_cnumber,
    gauge_invariance_sum,
    redistribution_factors,
    second_order_shift,
)
from halfspace_qed.greens import image_potential_ves
from halfspace_qed.medium import Medium
from halfspace_qed.spectral import QuadratureSpec

SPEC = QuadratureSpec()


def test_redistribution_factors():
    assert redistribution_factors(Medium(1.0)) == (0.0, 1.0)
    surf, ham = redistribution_factors(Medium(math.sqrt(2.0)))
    assert surf == pytest.approx(0.25)
    assert ham == pytest.approx(0.75)
    surf, ham = redistribution_factors(Medium(1e6))
    assert surf == pytest.approx(0.5, abs=1e-12)
    assert ham == pytest.approx(0.5, abs=1e-12)
    for n in (1.0, 1.3, 2.7, 9.0):
        a, b = redistribution_factors(Medium(n))
        assert a + b == 1.0


def test_free_space_shift_vanishes():
    shift = second_order_shift(1.0, Medium(1.0), 1.0, SPEC)
    assert shift.delta_e == 0.0
    assert shift.v_es == 0.0


def test_shift_ratio_reference_value():
    shift = second_order_shift(1.0, Medium(2.0), 1.0, SPEC)
    assert abs(shift.ratio - 0.375) < 1e-4
    assert shift.expected_ratio == pytest.approx(0.375)
    assert shift.delta_e < 0.0
    assert shift.left_part < 0.0 and shift.right_part < 0.0
    assert shift.left_part + shift.right_part == pytest.approx(shift.delta_e)


def test_shift_ratio_independent_of_height():
    med = Medium(1.5)
    r1 = second_order_shift(1.0, med, 0.5, SPEC)
    r2 = second_order_shift(1.0, med, 2.0, SPEC)
    assert abs(r1.ratio - r2.ratio) < 1e-4


def test_shift_scales_inversely_with_height():
    med = Medium(2.0)
    e1 = second_order_shift(1.0, med, 0.7, SPEC).delta_e
    e2 = second_order_shift(1.0, med, 1.4, SPEC).delta_e
    assert abs(e2 / e1 - 0.5) < 1e-4


def test_shift_grows_with_index():
    vals = [abs(second_order_shift(1.0, Medium(n), 1.0, SPEC).delta_e) for n in (1.2, 1.8, 3.0)]
    assert vals[0] < vals[1] < vals[2]


def test_shift_rejects_charge_inside():
    with pytest.raises(ValueError):
        second_order_shift(1.0, Medium(2.0), -0.5, SPEC)


def test_gauge_invariance_sum():
    for n in (1.5, 2.0):
        med = Medium(n)
        total = gauge_invariance_sum(1.0, med, 1.0, SPEC)
        ves = image_potential_ves(1.0, med, 1.0)
        assert abs(total / ves - 1.0) < 1e-4
    # n = 2 closed value: V^es = -(1/4pi)(3/5)(1/4)
    total = gauge_invariance_sum(1.0, Medium(2.0), 1.0, SPEC)
    assert total == pytest.approx(-3.0 / (80.0 * math.pi), rel=1e-4)


def test_gauge_invariance_perfect_reflector_asymptote():
    total = gauge_invariance_sum(1.0, Medium(1e3), 1.0, SPEC)
    n2 = 1e6
    expected = -1.0 / (16.0 * math.pi) * (1.0 - 2.0 / (n2 + 1.0))
    assert total == pytest.approx(expected, rel=1e-4)


def test_double_commutator_is_minus_shift():
    assert double_commutator_cnumber(1.0, Medium(1.0), 1.0, SPEC) == 0.0
    for n in (1.5, 4.0):
        cnum = double_commutator_cnumber(1.0, Medium(n), 1.0, SPEC)
        shift = second_order_shift(1.0, Medium(n), 1.0, SPEC)
        assert cnum == pytest.approx(-shift.delta_e, rel=1e-6)
    cnum = double_commutator_cnumber(1.0, Medium(2.0), 1.0, SPEC)
    assert cnum == pytest.approx(3.0 / 8.0 * 3.0 / (80.0 * math.pi), rel=1e-4)


def test_charge_scaling():
    med = Medium(2.0)
    e1 = second_order_shift(1.0, med, 1.0, SPEC).delta_e
    e2 = second_order_shift(2.0, med, 1.0, SPEC).delta_e
    assert e2 == pytest.approx(4.0 * e1, rel=1e-12)

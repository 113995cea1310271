"""Hulls, indicators, certified comparisons, characteristic predictions."""
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from exposc import E, GaussianRational, I, Polynomial, X, differentiate, log_eval
from exposc.geometry import (
    IndicatorCombo,
    certify_strict,
    characteristic_prediction,
    conjugated_frequency_points,
    hull,
    indicator_eval,
    indicator_of,
)

GR = GaussianRational.of


def test_hull_square_with_interior_origin():
    pts = [GR(0), GR(2), GR(-2), GR((0, 2)), GR((0, -2))]
    h = hull(pts)
    assert not h.degenerate
    assert len(h.vertices) == 4
    assert h.circumference == pytest.approx(8 * math.sqrt(2))


def test_hull_degenerate_segment():
    h = hull([GR(0), GR(1), GR(2)])
    assert h.degenerate
    assert h.circumference == pytest.approx(4.0)
    assert h.segment_length == pytest.approx(2.0)


def test_hull_two_point_segment():
    zeta2 = GR((1, 1))
    zeta1 = GR(Fraction(9, 10)) * zeta2
    h = hull([zeta1.conjugate(), zeta2.conjugate()])
    assert h.degenerate
    assert h.circumference == pytest.approx(2 * 0.1 * abs(zeta2.to_complex()))


def test_hull_single_point():
    h = hull([GR((3, 4))])
    assert h.degenerate and h.circumference == 0.0


def test_hull_float_path():
    h = hull([0j, 1 + 0j, 0.5 + 1j])
    assert not h.degenerate
    assert len(h.vertices) == 3


def test_hull_rotation_dilation_invariance():
    rng = random.Random(3)
    for _ in range(100):
        pts = [complex(rng.uniform(-3, 3), rng.uniform(-3, 3)) for _ in range(rng.randint(2, 8))]
        c0 = hull(pts).circumference
        phi = rng.uniform(0, math.tau)
        lam = rng.uniform(0.2, 4.0)
        u = complex(math.cos(phi), math.sin(phi))
        assert hull([u * z for z in pts]).circumference == pytest.approx(c0, rel=1e-9)
        assert hull([lam * z for z in pts]).circumference == pytest.approx(lam * c0, rel=1e-9)


def test_indicator_single_term():
    h = indicator_of(E(GR((0, 2)), n=3))
    assert h.degree == 3
    th = 0.4
    assert indicator_eval(h, th) == pytest.approx((2j * np.exp(3j * th)).real)


def test_indicator_cosh_pair():
    h = indicator_of(E(1) + E(-1))
    th = np.linspace(-math.pi, math.pi, 101)
    assert np.allclose(indicator_eval(h, th), np.abs(np.cos(th)))
    assert indicator_eval(h, math.pi / 2) == pytest.approx(0.0, abs=1e-15)


def test_indicator_triple_negative_sector():
    h = indicator_of(E(1) + E(2) + E(3))
    for th in (2.0, 2.5, 3.0):
        assert indicator_eval(h, th) == pytest.approx(math.cos(th))


def test_indicator_eval_examples():
    one = indicator_of(E(1))
    assert indicator_eval(one, 0.0) == pytest.approx(1.0)
    pair = indicator_of(E(1) + E(-1))
    assert indicator_eval(pair, math.pi / 2) == pytest.approx(0.0, abs=1e-15)
    floor = indicator_of(E(1) + 1)  # h0 != 0 adds the zero atom
    assert indicator_eval(floor, math.pi) == pytest.approx(0.0, abs=1e-15)


def test_indicator_requires_exponential_part():
    with pytest.raises(ValueError):
        indicator_of(Polynomial.of([1, 2]))


def test_certify_proven_on_domain():
    a = E(1) + E(Fraction(2, 5))
    b = E(Fraction(2, 5))
    ha, hb = indicator_of(a), indicator_of(b)
    res = certify_strict(ha, IndicatorCombo(((2.0, hb),)), domain=hb)
    assert res.status == "proven"
    assert res.margin > 0


def test_certify_equality_case_not_proven():
    # removing the smaller frequency of -(e^z + e^{2z}) leaves h_A = 2 h_B
    a = -E(1) - E(2)
    b = -E(1)
    ha, hb = indicator_of(a), indicator_of(b)
    res = certify_strict(ha, IndicatorCombo(((2.0, hb),)), domain=hb)
    assert res.status == "disproven"
    assert res.margin == pytest.approx(0.0, abs=1e-12)


def test_certify_identical_sides():
    h = indicator_of(E(1) + E(2))
    res = certify_strict(h, IndicatorCombo.of(h))
    assert res.status in ("disproven", "undecided")
    assert res.margin == pytest.approx(0.0, abs=1e-12)


def test_certify_strict_all_theta():
    # h of e^z + e^{-z} is |cos|, touching zero at +-pi/2: not strictly positive
    h = indicator_of(E(1) + E(-1))
    res = certify_strict(h)
    assert res.status == "disproven"
    # but h + 1 > 0 everywhere
    res2 = certify_strict(IndicatorCombo(((1.0, h),), 1.0))
    assert res2.status == "proven"
    assert res2.margin == pytest.approx(1.0, abs=1e-9)


def test_certify_sampled_fallback_mixed_degrees():
    h1 = indicator_of(E(1))
    h2 = indicator_of(E(1, n=2))
    res = certify_strict(IndicatorCombo(((1.0, h1),), 3.0), IndicatorCombo.of(h2))
    assert res.status == "proven"


def test_certify_soundness_against_fine_grid():
    rng = random.Random(17)
    for _ in range(60):
        atoms_a = [complex(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(2)]
        atoms_b = [complex(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(2)]
        a = sum((E(GR((int(m.real), int(m.imag)))) for m in atoms_a if m != 0), E(3))
        b = sum((E(GR((int(m.real), int(m.imag)))) for m in atoms_b if m != 0), E(Fraction(1, 2)))
        ha, hb = indicator_of(a), indicator_of(b)
        res = certify_strict(ha, IndicatorCombo(((2.0, hb),)), domain=hb)
        if res.status != "proven":
            continue
        th = np.linspace(-math.pi, math.pi, 40960, endpoint=False)
        mask = indicator_eval(hb, th) > 1e-9
        if np.any(mask):
            assert np.all(indicator_eval(ha, th)[mask] - 2 * indicator_eval(hb, th)[mask] > -1e-9)


def test_derivative_indicator_dominated():
    rng = random.Random(23)
    th = np.linspace(-math.pi, math.pi, 10_000)
    for _ in range(40):
        freqs = set()
        while len(freqs) < 2:
            f = (rng.randint(-2, 2), rng.randint(-2, 2))
            if f != (0, 0):
                freqs.add(f)
        a = Polynomial.of([rng.randint(0, 2), 1])
        for f in freqs:
            a = a + E(GR(f), coefficient=Polynomial.of([1, rng.randint(0, 1)]))
        da = differentiate(a)
        ha, hd = indicator_of(a), indicator_of(da)
        assert set(np.round(np.array(hd.atoms), 12)) <= set(np.round(np.array(ha.atoms + (0j,)), 12))
        assert np.all(indicator_eval(hd, th) <= indicator_eval(ha, th) + 1e-12)


def test_indicator_matches_log_eval_limit():
    rng = random.Random(41)
    r = 40.0
    checked = 0
    while checked < 100:
        n = rng.choice([1, 2])
        freqs = set()
        for _ in range(rng.randint(1, 3)):
            f = (rng.randint(-2, 2), rng.randint(-2, 2))
            if f != (0, 0):
                freqs.add(f)
        if not freqs:
            continue
        a = None
        for f in freqs:
            num = rng.choice([Fraction(1), Fraction(-1), Fraction(5, 4), Fraction(-3, 4)])
            term = E(GR(f), n=n, coefficient=Polynomial.constant(num))
            a = term if a is None else a + term
        h = indicator_of(a)
        th = rng.uniform(-math.pi, math.pi)
        vals = sorted((np.real(m * np.exp(1j * n * th)) for m in h.atoms), reverse=True)
        if len(vals) > 1 and vals[0] - vals[1] < 0.1:
            continue  # near-exceptional direction: argmax tie
        lv = log_eval(a, r * complex(math.cos(th), math.sin(th)))
        assert lv.logmag / r ** n == pytest.approx(indicator_eval(h, th), abs=0.02)
        checked += 1


def test_characteristic_prediction_examples():
    p = characteristic_prediction(E(1))
    assert p.t_coeff == pytest.approx(1 / math.pi)
    assert p.n_coeff == pytest.approx(0.0)
    assert p.m_inverse_class == "N/A"

    a_power2 = Fraction(-1, 16) * (E(1) + 1) * (E(1) + 1)
    p2 = characteristic_prediction(a_power2)
    assert p2.t_coeff == pytest.approx(2 / math.pi)
    assert p2.n_coeff is None
    assert p2.m_inverse_class == "O(log r)"

    a_rat = Polynomial.constant(Fraction(-49, 4)) - 36 * E(-1) - 9 * E(-2)
    p3 = characteristic_prediction(a_rat)
    assert p3.m_inverse_class == "O(log r)"
    # hull of {0,-1,-2} is the segment [-2,0]: circumference 4
    assert p3.hull_w0.circumference == pytest.approx(4.0)
    assert p3.t_coeff == pytest.approx(2 / math.pi)


def test_characteristic_transcendental_h0_class():
    # normalize e^{z^2} + e^{z}: the e^z part has order 1 < 2, landing in h0
    from exposc import mul, normalize

    z = X()
    b = normalize([(1, mul(z, z)), (1, z)])
    pb = characteristic_prediction(b)
    assert pb.m_inverse_class == "o(r^n)"
    assert pb.n_coeff is None


def test_conjugated_points():
    a = E(GR((0, 1))) + E(1)
    pts = conjugated_frequency_points(a, include_zero=True)
    assert len(pts) == 3
    assert any(p.is_zero for p in pts)

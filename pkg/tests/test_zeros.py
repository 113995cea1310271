"""Argument-principle censuses and real-ray sign-change counting."""
import math
import random
from fractions import Fraction

import mpmath
import pytest

from exposc import E, GaussianRational, Polynomial
from exposc.zeros import (
    Box,
    Disc,
    count_zeros_real_ray,
    count_zeros_region,
)

F = Fraction


def test_exp_plus_one_in_disc_ten():
    c = count_zeros_region(E(1) + 1, Disc(0, 10.0))
    assert c.count == 4
    assert c.complete
    got = sorted(z.location.imag for z in c.zeros)
    expect = [-3 * math.pi, -math.pi, math.pi, 3 * math.pi]
    for g, e in zip(got, expect):
        assert g == pytest.approx(e, abs=1e-8)
        assert all(abs(z.location.real) < 1e-8 for z in c.zeros)


def test_exp_minus_sixteenth_in_box():
    c = count_zeros_region(E(1) - F(1, 16), Box(-1, 4, -4, 4))
    assert c.count == 0
    # zeros sit at -ln 16 + 2 pi i k, left of the box
    c2 = count_zeros_region(E(1) - F(1, 16), Box(-4, 4, -4, 4))
    assert c2.count == 1
    assert c2.zeros[0].location.real == pytest.approx(-math.log(16), abs=1e-8)


def test_double_zero_multiplicity():
    c = count_zeros_region((E(1) + 1) * (E(1) + 1), Disc(0, 4.0))
    assert c.count == 4  # two double zeros at +-i pi
    assert sorted(z.multiplicity for z in c.zeros) == [2, 2]
    assert c.complete


def test_winding_integrality_randomized():
    rng = random.Random(31)
    cases = 0
    while cases < 100:
        freqs = set()
        for _ in range(rng.randint(1, 3)):
            f = (rng.randint(-2, 2), rng.randint(-2, 2))
            if f != (0, 0):
                freqs.add(f)
        if not freqs:
            continue
        a = Polynomial.of([rng.randint(-2, 2)])
        for f in freqs:
            a = a + E(GaussianRational.of(f), coefficient=rng.choice([1, -1, 2]))
        if not hasattr(a, "order"):
            continue
        cx, cy = rng.uniform(-2, 2), rng.uniform(-2, 2)
        w = rng.uniform(0.5, 3.0)
        census = count_zeros_region(a, Box(cx - w, cx + w, cy - w, cy + w),
                                    budget=200_000)
        assert census.winding_residual < 1e-3
        if census.complete:
            assert census.count == sum(z.multiplicity for z in census.zeros)
        cases += 1


def test_sign_changes_harmonic():
    c = count_zeros_real_ray(Polynomial.constant(1), 0.0, 10.0, (0.0, 1.0))
    assert c.count == 3
    roots = sorted(z.location.real for z in c.zeros)
    for got, expect in zip(roots, [math.pi, 2 * math.pi, 3 * math.pi]):
        assert got == pytest.approx(expect, abs=1e-8)


def test_sign_changes_bessel_count():
    # f(t) = J0(2 e^{t/2}): zeros on [0, 10) where j_{0,k} in (2, 2e^5]
    init = (float(mpmath.besselj(0, 2.0)), float(-mpmath.besselj(1, 2.0)))
    c = count_zeros_real_ray(E(1), 0.0, 10.0, init, tol=1e-10)
    target = 2 * math.exp(5.0)
    k, oracle = 1, 0
    while True:
        j = float(mpmath.besseljzero(0, k))
        if j > target:
            break
        if j > 2.0:
            oracle += 1
        k += 1
    assert oracle == 94
    assert abs(c.count - oracle) <= 1


def test_real_ray_requires_real_coefficient():
    with pytest.raises(ValueError):
        count_zeros_real_ray(E(GaussianRational.of((0, 1))), 0.0, 5.0, (1.0, 0.0))
    with pytest.raises(ValueError):
        count_zeros_real_ray(Polynomial.constant(1), 0.7, 5.0, (1.0, 0.0))


def test_real_ray_theta_pi():
    # A(z) = e^{-z} is real on the negative axis; f'' + e^{-z} f = 0 along
    # theta = pi is the Bessel case again in disguise
    init = (float(mpmath.besselj(0, 2.0)), float(mpmath.besselj(1, 2.0)))
    c = count_zeros_real_ray(E(-1), math.pi, 6.0, init, tol=1e-10)
    target = 2 * math.exp(3.0)
    oracle = 0
    k = 1
    while True:
        j = float(mpmath.besseljzero(0, k))
        if j > target:
            break
        if j > 2.0:
            oracle += 1
        k += 1
    assert abs(c.count - oracle) <= 1

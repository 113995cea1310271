"""Tower algebra: construction, normalization, calculus, evaluation."""
import math
import random
from fractions import Fraction

import pytest

from exposc import (
    E,
    ExpPoly,
    GaussianRational,
    I,
    Polynomial,
    X,
    add,
    differentiate,
    equals_zero,
    eval_complex,
    log_eval,
    mul,
    normalize,
    sub,
)
from exposc.exppoly import ZERO_POLY, as_scaled_exponential, order_of, rotate


def test_gaussian_rational_arithmetic():
    a = GaussianRational.of((Fraction(1, 2), Fraction(-3, 4)))
    b = GaussianRational.of("2/3") + I
    assert (a * b / b) == a
    assert (a - a).is_zero
    assert (I * I).re == -1
    with pytest.raises(ZeroDivisionError):
        a / GaussianRational.of(0)


def test_gaussian_rational_lowest_terms():
    x = GaussianRational.of(Fraction(2, 4))
    assert x.re.numerator == 1 and x.re.denominator == 2
    assert (x * 2).re == 1


def test_polynomial_basics():
    p = Polynomial.of([1, 0, Fraction(-1, 2)])  # 1 - z^2/2
    assert p.degree == 2
    assert p.derivative() == Polynomial.of([0, -1])
    assert p.eval_exact(Fraction(2)) == GaussianRational.of(-1)
    assert Polynomial.of([0, 0]).is_zero
    assert (p - p).is_zero


def test_normalize_single_term_already_normal():
    a = normalize([(1, X())])
    assert isinstance(a, ExpPoly)
    assert a.order == 1
    assert equals_zero(a.h0)
    assert len(a.terms) == 1
    assert a.terms[0].frequency == GaussianRational.of(1)
    assert a.terms[0].coefficient == Polynomial.constant(1)


def test_normalize_groups_by_leading_frequency():
    # e^(z^2+z) + e^(z^2) = (e^z + 1) e^(z^2)
    z = X()
    a = normalize([(1, mul(z, z) + z), (1, mul(z, z))])
    assert isinstance(a, ExpPoly) and a.order == 2
    assert equals_zero(a.h0)
    assert len(a.terms) == 1
    coef = a.terms[0].coefficient
    assert coef == E(1) + 1


def test_normalize_constant_exponent_goes_to_h0():
    a = normalize([(1, X()), (Fraction(-1, 16), ZERO_POLY)])
    assert a == E(1) - Fraction(1, 16)
    assert a.h0 == Polynomial.constant(Fraction(-1, 16))


def test_normalize_rejects_transcendental_constant():
    with pytest.raises(ValueError):
        normalize([(1, Polynomial.of([1, 1]))])  # e^(z+1)


def test_normalize_rejects_zero_p():
    with pytest.raises(ValueError):
        normalize([(ZERO_POLY, X())])
    with pytest.raises(ValueError):
        normalize([])


def test_add_cancellation_and_merge():
    assert equals_zero(E(1) - E(1))
    a = (E(1) + 1) + E(2)
    assert [t.frequency.to_complex() for t in a.terms] == [1, 2]
    assert a.h0 == Polynomial.constant(1)


def test_add_paper_half_example():
    a_half = Fraction(-1, 4) * (E(2) - 2 * E(1) + 4)
    got = a_half + Fraction(1, 4) * E(2)
    assert got == Fraction(1, 2) * E(1) - 1


def test_mul_difference_of_squares():
    assert (E(1) + 1) * (E(1) - 1) == E(2) - 1


def test_mul_half_example_factorization():
    # (e^z - w)(e^z - conj w) = e^{2z} - 2 e^z + 4 for w = 1 + sqrt(3) i
    lhs = E(2) - 2 * E(1) + 4
    a = Fraction(-1, 4) * lhs
    assert a == Fraction(-1, 4) * E(2) + Fraction(1, 2) * E(1) - 1


def test_mul_square():
    g = Fraction(1, 2) * E(1) - 1
    assert g * g == Fraction(1, 4) * E(2) - E(1) + 1


def test_differentiate_examples():
    assert differentiate(E(1)) == E(1)
    assert differentiate(Fraction(1, 2) * E(1) - 1) == Fraction(1, 2) * E(1)
    d = differentiate(E(1, n=2))
    assert d == E(1, n=2, coefficient=Polynomial.monomial(2, 1))


def test_differentiate_polynomial_h0():
    g = 2 * I * E(Fraction(1, 2)) - X() / 4
    gp = differentiate(g)
    assert gp == I * E(Fraction(1, 2)) - Fraction(1, 4)


def test_equals_zero():
    assert equals_zero(ZERO_POLY)
    assert equals_zero(sub(E(1), E(1)))
    assert not equals_zero(sub(E(1), E(2)))


def test_log_eval_simple():
    lv = log_eval(E(1), 100.0)
    assert lv.logmag == pytest.approx(100.0)
    assert lv.phase == pytest.approx(0.0)


def test_log_eval_cancellation():
    lv = log_eval(E(1) + 1, 1j * math.pi)
    assert lv.logmag < -30


def test_log_eval_dominant_term():
    a = Fraction(-1, 16) * (E(1) + 1) * (E(1) + 1)
    lv = log_eval(a, 50.0)
    assert lv.logmag == pytest.approx(100 - math.log(16), abs=1e-6)


def test_log_eval_matches_direct_eval():
    rng = random.Random(7)
    a = Fraction(1, 3) * E(2) - 2 * E(1) + X() + Fraction(1, 2)
    for _ in range(200):
        z = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        direct = (math.exp(2 * z.real) * complex(math.cos(2 * z.imag), math.sin(2 * z.imag)) / 3
                  - 2 * math.exp(z.real) * complex(math.cos(z.imag), math.sin(z.imag))
                  + z + 0.5)
        mag = abs(direct)
        if not (1e-200 < mag < 1e200):
            continue
        got = eval_complex(a, z)
        assert abs(got - direct) <= 1e-9 * mag


def _random_tower(rng, depth=0):
    n = rng.choice([1, 1, 2])
    nterms = rng.randint(1, 2)
    acc = Polynomial.of([rng.randint(-2, 2) for _ in range(rng.randint(0, 2))])
    for _ in range(nterms):
        f = GaussianRational.of((rng.randint(-2, 2), rng.randint(-2, 2)))
        if f.is_zero:
            f = GaussianRational.of(1)
        if depth == 0 and n > 1 and rng.random() < 0.5:
            coef = _random_tower(rng, depth + 1)
            if order_of(coef) >= n:
                coef = Polynomial.constant(1)
        else:
            coef = Polynomial.of([rng.randint(-2, 2), rng.randint(-1, 1)])
            if coef.is_zero:
                coef = Polynomial.constant(1)
        acc = acc + E(f, n=n, coefficient=coef)
    return acc


def test_differentiation_is_a_derivation():
    rng = random.Random(2024)
    for _ in range(120):
        a = _random_tower(rng)
        b = _random_tower(rng)
        lhs = differentiate(mul(a, b))
        rhs = add(mul(differentiate(a), b), mul(a, differentiate(b)))
        assert equals_zero(sub(lhs, rhs))


def test_canonical_commutativity_bitwise():
    rng = random.Random(5)
    for _ in range(100):
        a = _random_tower(rng)
        b = _random_tower(rng)
        assert add(a, b) == add(b, a)
        assert mul(a, b) == mul(b, a)


def test_normalize_roundtrip_under_term_splitting():
    # normalize(sum P_j e^{Q_j}) is invariant under randomized splitting of
    # the P_j into pieces and reordering of the term list.
    rng = random.Random(11)
    z = X()
    base = [
        (Polynomial.of([1, 1]), mul(z, z)),
        (Polynomial.constant(2), z),
        (Polynomial.of([0, 0, 1]), mul(z, z) + z),
        (Polynomial.constant(Fraction(-1, 3)), ZERO_POLY),
    ]
    ref = normalize(base)
    for _ in range(60):
        parts = []
        for p, q in base:
            if rng.random() < 0.5 and not p.is_zero:
                split = Polynomial.of([rng.randint(-3, 3) for _ in range(len(p.coeffs))])
                parts.append((p - split, q))
                parts.append((split, q))
            else:
                parts.append((p, q))
        parts = [(p, q) for p, q in parts if not p.is_zero]
        rng.shuffle(parts)
        assert normalize(parts) == ref


def test_rotate_exact():
    u = GaussianRational.of((Fraction(3, 5), Fraction(4, 5)))
    a = E(1) + Fraction(1, 2) * E(2) + X()
    r = rotate(a, u)
    freqs = sorted((f.to_complex() for f in (t.frequency for t in r.terms)),
                   key=lambda w: (abs(w), w.real))
    # frequencies multiply by u^n = u
    assert freqs[0] == pytest.approx(complex(0.6, 0.8))
    assert rotate(r, u.conjugate()) == a
    with pytest.raises(ValueError):
        rotate(a, GaussianRational.of(2))


def test_as_scaled_exponential():
    k, s = as_scaled_exponential(E(2, n=2))
    assert k == GaussianRational.of(1)
    assert s == Polynomial.monomial(2, 2)
    got = as_scaled_exponential(normalize([(1, Polynomial.of([0, 1, 1]))]))
    assert got is not None
    k, s = got
    assert k == GaussianRational.of(1) and s == Polynomial.of([0, 1, 1])
    assert as_scaled_exponential(E(1) + 1) is None

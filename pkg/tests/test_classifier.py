"""Theorem predicates, verdict traces, syntheses, and soundness fixtures."""
import random
from fractions import Fraction

import pytest

from exposc import E, GaussianRational, I, Polynomial, X, equals_zero, normalize, rotate, sub
from exposc.classifier import (
    Conclusion,
    check_indicator_domination,
    check_opposite_collinear,
    check_perimeter,
    check_theta_ramification,
    check_two_term,
    classify,
    match_zero_free_base,
    synth_referee_B,
    synth_sixteenth,
    synth_zero_free_base,
)

GR = GaussianRational.of
F = Fraction


def conclusions(verdicts):
    return {v.conclusion for v in verdicts}


# ---- the paper's explicit zero-free / finite-lambda coefficients ----------

def zero_free_fixture_coefficients():
    a_q1 = E(1) - F(1, 16)
    a_q3 = E(1) - F(9, 16)
    a_half = F(-1, 4) * (E(2) - 2 * E(1) + 4)
    a_power2 = F(-1, 16) * (E(1) + 1) * (E(1) + 1)
    a_rat = Polynomial.constant(F(-49, 4)) - 36 * E(-1) - 9 * E(-2)
    a_ex8_n1 = -E(1) - E(2)
    z2 = Polynomial.monomial(1, 2)
    a_ex8_n2 = (E(1, n=2, coefficient=Polynomial.of([-2, 0, -4]))
                + E(2, n=2, coefficient=-4 * z2))
    a_col1 = -E(-1) - E(-2) - E(1) - E(2) + 2
    a_col2 = -E(-1) - E(-2) + 4 * E(1) - 4 * E(2) - 4 * E(4)
    i = GR((0, 1))
    a_square = (E(i) + E(-i) - E(1) - E(-1) + E(2 * i) + E(-2 * i) - E(2) - E(-2)
                + 2 * I * E(1 - i) + 2 * I * E(i - 1) - 2 * I * E(1 + i) - 2 * I * E(-(1 + i)))
    return {
        "q1": a_q1, "q3": a_q3, "half": a_half, "power2": a_power2,
        "rationals": a_rat, "ex8-n1": a_ex8_n1, "ex8-n2": a_ex8_n2,
        "collinear-a": a_col1, "collinear-b": a_col2, "square": a_square,
    }


def test_classify_soundness_on_zero_free_fixtures():
    bad = {Conclusion.LambdaAtLeastN, Conclusion.LambdaInfinite,
           Conclusion.LambdaBarAtLeastRho, Conclusion.MaxLambdaBarFFprimeAtLeastRho}
    for name, a in zero_free_fixture_coefficients().items():
        got = conclusions(classify(a))
        assert not (got & bad), f"unsound verdict for fixture {name}: {got & bad}"


def test_classify_q1_zero_free_base_possible():
    got = classify(E(1) - F(1, 16))
    assert Conclusion.ZeroFreeBasePossible in conclusions(got)
    v = next(v for v in got if v.conclusion is Conclusion.ZeroFreeBasePossible)
    assert any("q = 1" in val for _, val, _ in v.trace)


def test_classify_different_degrees_is_lambda_infinite():
    z = X()
    a = normalize([(1, z * z), (1, z)])  # e^{z^2} + e^{z}
    assert Conclusion.LambdaInfinite in conclusions(classify(a))


def test_classify_e_z_contains_lambda_at_least_n():
    got = classify(E(1))
    cs = conclusions(got)
    assert Conclusion.LambdaAtLeastN in cs
    assert Conclusion.LambdaBarAtLeastRho in cs  # sparse-zeros variant, m = 1
    assert Conclusion.LambdaInfinite in cs       # e^z - K with K = 0


def test_classify_rejects_zero_and_polynomial():
    with pytest.raises(ValueError):
        classify(Polynomial())
    with pytest.raises(ValueError):
        classify(Polynomial.of([1, 2]))


# ---- check_two_term --------------------------------------------------------

def test_two_term_ratio_quarter():
    v = check_two_term(GR(1), GR(4), 1, q_nonzero=True)
    assert v.conclusion is Conclusion.LambdaAtLeastN


def test_two_term_non_real_ratio():
    v = check_two_term(GR((0, 1)), GR(1), 1, q_nonzero=False)
    assert v.conclusion is Conclusion.LambdaInfinite


def test_two_term_boundary_half():
    v = check_two_term(GR(1), GR(2), 1, q_nonzero=False)
    assert v.conclusion is Conclusion.Inconclusive
    assert v.theorem == "two_term_gap"


def test_two_term_opposite_rays():
    v = check_two_term(GR(1), GR(-3), 1, q_nonzero=False)
    assert v.conclusion is Conclusion.LambdaInfinite
    assert v.theorem == "opposite_rays"


def test_two_term_window_and_d_case():
    assert check_two_term(GR(F(7, 10)), GR(1), 1, False).conclusion is Conclusion.Inconclusive
    assert check_two_term(GR(F(4, 5)), GR(1), 1, False).conclusion is Conclusion.LambdaAtLeastN
    assert check_two_term(GR(F(4, 5)), GR(1), 1, True).conclusion is Conclusion.Inconclusive
    assert check_two_term(GR(1), GR(1), 1, True).conclusion is Conclusion.LambdaAtLeastN
    with pytest.raises(ValueError):
        check_two_term(GR(0), GR(1), 1, False)


# ---- check_perimeter -------------------------------------------------------

def segment_pair(rho: Fraction):
    return E(GR(rho)) + E(1)


def test_perimeter_segment_examples():
    assert check_perimeter(segment_pair(F(9, 10))).conclusion is Conclusion.LambdaAtLeastN
    v = check_perimeter(segment_pair(F(1, 2)))
    assert v.conclusion is Conclusion.Inconclusive
    assert any("sharp" in h for h, _, _ in v.trace)


def test_perimeter_single_term():
    v = check_perimeter(E(1, n=2))
    assert v.conclusion is Conclusion.LambdaAtLeastN


def test_perimeter_requires_vanishing_h0():
    v = check_perimeter(E(1) + 1)
    assert v.conclusion is Conclusion.Inconclusive


def test_perimeter_threshold_scan():
    for k in range(1, 100):
        rho = F(k, 100)
        v = check_perimeter(segment_pair(rho))
        expect_pass = rho > F(1, 2)
        assert (v.conclusion is Conclusion.LambdaAtLeastN) == expect_pass, rho


# ---- check_theta_ramification ----------------------------------------------

def test_theta_single_term_part1():
    v = check_theta_ramification(E(1), K=5.0)
    assert v.conclusion is Conclusion.LambdaBarAtLeastRho


def test_theta_segment_pass_and_fail():
    v = check_theta_ramification(segment_pair(F(9, 10)), K=4.5)
    assert v.conclusion is Conclusion.LambdaAtLeastN
    v2 = check_theta_ramification(segment_pair(F(3, 5)), K=4.5)
    assert v2.conclusion is Conclusion.Inconclusive


def test_theta_part2_window():
    # Theta-hat = rho = 0.7; 1 - 1/K = 0.6 for K = 2.5 in (2, 4]
    v = check_theta_ramification(segment_pair(F(7, 10)), K=2.5)
    assert v.conclusion is Conclusion.MaxLambdaBarFFprimeAtLeastRho


def test_theta_rejects_bad_k():
    with pytest.raises(ValueError):
        check_theta_ramification(E(1), K=0.0)


# ---- check_indicator_domination --------------------------------------------

def test_domination_proves_two_fifths():
    a = E(1) + E(F(2, 5))
    # canonical order sorts 2/5 before 1; removing index 1 removes e^z
    v = check_indicator_domination(a, 1)
    assert v.conclusion is Conclusion.LambdaAtLeastN


def test_domination_example8_equality_fails():
    a = -E(1) - E(2)
    for idx in (0, 1):
        assert check_indicator_domination(a, idx).conclusion is Conclusion.Inconclusive


def test_domination_preconditions():
    with pytest.raises(ValueError):
        check_indicator_domination(E(1), 0)
    with pytest.raises(IndexError):
        check_indicator_domination(E(1) + E(2), 5)


# ---- check_opposite_collinear ----------------------------------------------

def test_opposite_pair_infinite():
    v = check_opposite_collinear(E(1) + E(-1) + 1)
    assert v.conclusion is Conclusion.LambdaInfinite


def test_opposite_many_collinear_inconclusive():
    a = -E(-1) - E(-2) - E(1) - E(2) + 2
    v = check_opposite_collinear(a)
    assert v.conclusion is Conclusion.Inconclusive
    assert v.theorem == "opposite_rays_many"


def test_opposite_same_side_not_applicable():
    v = check_opposite_collinear(E(1) + E(2))
    assert v.conclusion is Conclusion.Inconclusive


# ---- syntheses --------------------------------------------------------------

def test_synth_sixteenth_linear():
    out = synth_sixteenth(X())
    assert out.q == Polynomial.constant(F(-1, 16))
    assert out.a == E(1) - F(1, 16)
    assert out.verdict.conclusion is Conclusion.ZeroFreeBaseExists


def test_synth_sixteenth_quadratic():
    out = synth_sixteenth(Polynomial.monomial(1, 2))
    # Q = -(2z)^2/16 + 2/4 = -z^2/4 + 1/2
    assert out.q == Polynomial.of([F(1, 2), 0, F(-1, 4)])


def test_synth_sixteenth_scaled_linear():
    out = synth_sixteenth(Polynomial.of([0, 2]))
    assert out.q == Polynomial.constant(F(-1, 4))


def test_synth_sixteenth_rejects_constant():
    with pytest.raises(ValueError):
        synth_sixteenth(Polynomial.constant(3))


def test_synth_zero_free_base_linear():
    a = synth_zero_free_base(X())
    assert a == F(-1, 4) * (E(2) + 1)


def test_synth_zero_free_base_quadratic():
    a = synth_zero_free_base(Polynomial.monomial(1, 2))
    # -1/4 (e^{2 z^2} + 4 z^2 - 4)
    expect = F(-1, 4) * E(2, n=2) + Polynomial.of([1, 0, -1])
    assert equals_zero(sub(a, expect))


def test_match_zero_free_base_roundtrip():
    assert match_zero_free_base(F(-1, 4) * (E(2) + 1)) == X()
    p2 = Polynomial.monomial(1, 2)
    assert match_zero_free_base(synth_zero_free_base(p2)) == p2
    assert match_zero_free_base(E(1) - F(1, 16)) is None


def test_synth_referee_examples():
    out = synth_referee_B(E(1))
    assert out.b == Polynomial.constant(F(-1, 16))
    out2 = synth_referee_B(E(1, n=2))
    assert out2.b == Polynomial.of([F(1, 2), 0, F(-1, 4)])
    out3 = synth_referee_B(E(2))
    assert out3.b == Polynomial.constant(F(-1, 4))


def test_synth_referee_rejects_non_single_term():
    with pytest.raises(ValueError):
        synth_referee_B(E(1) + E(2))
    with pytest.raises(ValueError):
        synth_referee_B(E(1, coefficient=Polynomial.of([1, 1])))  # H = 1 + z has zeros


# ---- rotation invariance ----------------------------------------------------

UNITS = [GR((0, 1)), GR(-1), GR((F(3, 5), F(4, 5))), GR((F(5, 13), F(-12, 13)))]

# Checks driven by frequency ratios, hulls and indicators are covariant under
# z -> u z.  The literal shape matches (e^z - K, the 1/16-form, the zero-free
# base normal form) are not: rotating z rescales the equation by u^-2, which
# genuinely leaves those theorems' hypotheses.  The invariance property is
# therefore asserted for the geometric checks' conclusions.
GEOMETRIC = {"two_term", "two_term_gap", "opposite_rays", "opposite_rays_many",
             "perimeter", "ramification", "ram_part1", "ram_part2",
             "dominant_term", "order_split", "pure_exponential", "pair_advisory"}


def geometric_conclusions(verdicts):
    return sorted(v.conclusion.value for v in verdicts if v.theorem in GEOMETRIC)


def test_classify_rotation_invariance():
    rng = random.Random(99)
    fixtures = list(zero_free_fixture_coefficients().values())
    fixtures += [E(1) + E(F(2, 5)), E(1) + E(2) + E(3), E(1), segment_pair(F(9, 10))]
    cases = 0
    while cases < 100:
        a = rng.choice(fixtures)
        u = rng.choice(UNITS)
        assert geometric_conclusions(classify(a)) == geometric_conclusions(classify(rotate(a, u)))
        cases += 1

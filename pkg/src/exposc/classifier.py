"""Theorem-predicate engine: checked hypotheses, cited verdicts, syntheses.

Each check inspects a coefficient in normalized tower form, records every
hypothesis it evaluated in a trace, and emits a conclusion about the
exponent of convergence of zeros of solutions of f'' + A f = 0.  The
dispatcher `classify` runs all applicable checks in a fixed registry order
and returns every verdict, so callers can see both the conclusions and the
reasons the remaining checks did not fire.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

from .rationals import GaussianRational, ONE
from .exppoly import (
    Coef,
    ExpPoly,
    Polynomial,
    add,
    as_scaled_exponential,
    differentiate,
    equals_zero,
    frequencies,
    h0_of,
    mul,
    neg,
    normalize,
    order_of,
    scale,
    sub,
    terms_of,
)
from .geometry import (
    IndicatorCombo,
    certify_strict,
    conjugated_frequency_points,
    hull,
    indicator_of,
)

__all__ = [
    "Conclusion",
    "Verdict",
    "CITATIONS",
    "classify",
    "check_two_term",
    "check_perimeter",
    "check_theta_ramification",
    "check_indicator_domination",
    "check_opposite_collinear",
    "synth_sixteenth",
    "synth_zero_free_base",
    "match_zero_free_base",
    "synth_referee_B",
]


class Conclusion(Enum):
    LambdaAtLeastN = "LambdaAtLeastN"
    LambdaInfinite = "LambdaInfinite"
    LambdaBarAtLeastRho = "LambdaBarAtLeastRho"
    MaxLambdaBarFFprimeAtLeastRho = "MaxLambdaBarFFprimeAtLeastRho"
    ZeroFreeBasePossible = "ZeroFreeBasePossible"
    ZeroFreeBaseExists = "ZeroFreeBaseExists"
    Inconclusive = "Inconclusive"


#: default human-readable labels; serialization accepts a replacement map
#: since numbering of these results drifts between venues.
CITATIONS = {
    "bll0": "classification of e^z - K (zero-free base iff K = q^2/16, q odd)",
    "sixteenth": "1/16-criterion: Q = -P'^2/16 + P''/4 admits a zero-free base",
    "two_term": "two-exponential-term ratio dichotomy",
    "two_term_gap": "ratio in [1/2, 3/4]: counterexamples with zero-free solutions exist",
    "opposite_rays": "two opposite-ray frequencies with polynomial coefficients",
    "opposite_rays_many": ">2 collinear frequencies: zero-free solutions exist",
    "perimeter": "hull-circumference criterion C(co W0) > 4 C(co W)",
    "ramification": "zero-ramification bound Theta(0,A) > 1 - 1/K with K > 4",
    "ram_part1": "sparse-zeros variant: lambda-bar(f) >= rho(A)",
    "ram_part2": "zeros-or-critical-points variant: max(lambda-bar(f), lambda-bar(f')) >= rho(A)",
    "dominant_term": "dominant-term removal: h_A > 2 h_B on {h_B > 0} and C(co W0^A) > 2 C(co W0^B)",
    "pure_exponential": "A = c e^P with nonconstant polynomial P: every solution has lambda(f) = infinity",
    "special_base": "zero-free base normal form -4A = e^{2P} + P'^2 - 2P''",
    "referee": "improved 1/16-criterion with sectorial smallness of B",
    "order_split": "exponential terms of different polynomial degrees",
    "pair_advisory": ("perturbation advisory: for any entire B of order < n, solution "
                      "pairs of f'' + (A+B) f = 0 satisfy max(lambda(g1), lambda(g2)) >= n"),
}


@dataclass(frozen=True)
class Verdict:
    conclusion: Conclusion
    theorem: str
    trace: tuple  # of (hypothesis: str, value: str, passed: bool)
    n: int

    def __post_init__(self):
        if self.conclusion is not Conclusion.Inconclusive:
            assert all(ok for _, _, ok in self.trace), "conclusive verdict with failed hypothesis"
        assert self.theorem in CITATIONS, f"unknown citation key {self.theorem!r}"

    @property
    def citation(self) -> str:
        return CITATIONS[self.theorem]

    @property
    def conclusive(self) -> bool:
        return self.conclusion is not Conclusion.Inconclusive


def _verdict(conclusion, theorem, trace, n) -> Verdict:
    return Verdict(conclusion, theorem, tuple(trace), n)


# ---------------------------------------------------------------------------
# structural helpers
# ---------------------------------------------------------------------------

def _pure_exponential_terms(a: Coef):
    """[(k_j, zeta_j)] when every exponential term is constant * e^{poly}."""
    out = []
    for t in terms_of(a):
        m = as_scaled_exponential(t.coefficient)
        if m is None:
            return None
        out.append((m[0], t.frequency))
    return out


def _h0_is_polynomial(a: Coef) -> bool:
    return order_of(h0_of(a)) == 0


def _odd_square_over_16(k: GaussianRational) -> Optional[int]:
    """Return odd positive q with k == q^2/16, else None."""
    if not k.is_real or k.re <= 0:
        return None
    v = k.re * 16
    if v.denominator != 1:
        return None
    q = math.isqrt(v.numerator)
    if q * q != v.numerator or q % 2 == 0:
        return None
    return q


def _sixteenth_q(p: Polynomial) -> Polynomial:
    dp = p.derivative()
    return scale(mul(dp, dp), GaussianRational.of(Fraction(-1, 16))) + \
        scale(dp.derivative(), GaussianRational.of(Fraction(1, 4)))


# ---------------------------------------------------------------------------
# individual checks
# ---------------------------------------------------------------------------

def check_two_term(zeta1, zeta2, n: int, q_nonzero: bool) -> Verdict:
    """Ratio dichotomy for A = e^{P1} + e^{P2} + Q with leading coefficients
    zeta1, zeta2 of the common degree n."""
    z1, z2 = GaussianRational.of(zeta1), GaussianRational.of(zeta2)
    if z1.is_zero or z2.is_zero:
        raise ValueError("frequencies must be nonzero")
    trace = []
    if z1 == z2:
        trace.append(("zeta1 == zeta2", str(z1), True))
        return _verdict(Conclusion.LambdaAtLeastN, "two_term", trace, n)
    ratio = z1 / z2
    if not ratio.is_real:
        trace.append(("zeta1/zeta2 non-real", str(ratio), True))
        return _verdict(Conclusion.LambdaInfinite, "two_term", trace, n)
    r = ratio.re
    if r < 0:
        trace.append(("zeta1/zeta2 < 0 (opposite rays)", str(r), True))
        return _verdict(Conclusion.LambdaInfinite, "opposite_rays", trace, n)
    if r > 1:
        r = 1 / r  # symmetric in the two terms
    trace.append(("ratio (smaller/larger, same ray)", str(r), True))
    if r < Fraction(1, 2):
        trace.append(("0 < ratio < 1/2", str(r), True))
        return _verdict(Conclusion.LambdaAtLeastN, "two_term", trace, n)
    if Fraction(1, 2) <= r <= Fraction(3, 4):
        trace.append(("ratio in [1/2, 3/4]: boundary window", str(r), False))
        return _verdict(Conclusion.Inconclusive, "two_term_gap", trace, n)
    # 3/4 < r < 1
    if not q_nonzero:
        trace.append(("3/4 < ratio < 1 and Q == 0", str(r), True))
        return _verdict(Conclusion.LambdaAtLeastN, "two_term", trace, n)
    trace.append(("3/4 < ratio < 1 but Q != 0: counterexample at 3/4", str(r), False))
    return _verdict(Conclusion.Inconclusive, "two_term_gap", trace, n)


def check_perimeter(a: Coef) -> Verdict:
    """Hull-circumference criterion for coefficients with vanishing H0.

    Degenerate co(W) is measured as the plain segment length here (the
    published arithmetic for two-term segments places the pass threshold at
    ratio 1/2, which corresponds to C(co W0) > 4 * length(co W)); everywhere
    else in the package degenerate hulls use the doubled circumference.
    """
    n = order_of(a)
    trace = []
    if n < 1:
        trace.append(("coefficient transcendental", "polynomial", False))
        return _verdict(Conclusion.Inconclusive, "perimeter", trace, 0)
    if not equals_zero(h0_of(a)):
        trace.append(("H0 == 0", str(h0_of(a)), False))
        return _verdict(Conclusion.Inconclusive, "perimeter", trace, n)
    trace.append(("H0 == 0", "0", True))
    w = hull(conjugated_frequency_points(a, include_zero=False))
    w0 = hull(conjugated_frequency_points(a, include_zero=True))
    trace.append(("C(co W0)", f"{w0.circumference:.12g}", True))
    trace.append(("C(co W)", f"{w.circumference:.12g}", True))
    lhs = w0.circumference
    rhs = 4.0 * w.segment_length
    ok = lhs > rhs * (1 + 1e-12) if rhs else lhs > 0
    trace.append(("C(co W0) > 4 C(co W)", f"{lhs:.12g} vs {rhs:.12g}", ok))
    if ok:
        return _verdict(Conclusion.LambdaAtLeastN, "perimeter", trace, n)
    if abs(lhs - rhs) <= 1e-12 * max(lhs, rhs):
        trace.append(("equality is sharp: zero-free example at ratio 1/2", "", False))
    return _verdict(Conclusion.Inconclusive, "perimeter", trace, n)


def check_theta_ramification(a: Coef, K: float) -> Verdict:
    """Ramification criterion Theta(0, A) > 1 - 1/K plus its two variants.

    Theta-hat = 1 - C(co W)/C(co W0) estimates 1 - limsup N-bar/T via the
    Steinmetz characteristic; it needs H0 == 0 so that the zero-counting
    asymptotics apply.
    """
    if K <= 0:
        raise ValueError("K must be positive")
    n = order_of(a)
    trace = []
    if n < 1:
        trace.append(("coefficient transcendental", "polynomial", False))
        return _verdict(Conclusion.Inconclusive, "ramification", trace, 0)
    if not equals_zero(h0_of(a)):
        trace.append(("H0 == 0 (zero-counting asymptotics apply)", str(h0_of(a)), False))
        return _verdict(Conclusion.Inconclusive, "ramification", trace, n)
    trace.append(("H0 == 0", "0", True))
    terms = terms_of(a)
    if len(terms) == 1:
        trace.append(("single exponential term: N-bar(r, 1/A) = S(r, A)", "m = 1", True))
        return _verdict(Conclusion.LambdaBarAtLeastRho, "ram_part1", trace, n)
    w = hull(conjugated_frequency_points(a, include_zero=False))
    w0 = hull(conjugated_frequency_points(a, include_zero=True))
    theta_hat = 1.0 - (w.circumference / w0.circumference if w0.circumference else 0.0)
    trace.append(("Theta-hat = 1 - C(co W)/C(co W0)", f"{theta_hat:.12g}", True))
    need = 1.0 - 1.0 / K
    if K > 4 and theta_hat > need:
        trace.append((f"K > 4 and Theta-hat > 1 - 1/K = {need:.6g}", f"K={K:.6g}", True))
        return _verdict(Conclusion.LambdaAtLeastN, "ramification", trace, n)
    if K > 2 and theta_hat > need:
        trace.append((f"K > 2 and Theta-hat > 1 - 1/K = {need:.6g}", f"K={K:.6g}", True))
        trace.append(("N-bar(r, 1/A) != S(r, A)", "m >= 2", True))
        return _verdict(Conclusion.MaxLambdaBarFFprimeAtLeastRho, "ram_part2", trace, n)
    trace.append((f"Theta-hat > 1 - 1/K = {need:.6g}", f"{theta_hat:.12g}", False))
    return _verdict(Conclusion.Inconclusive, "ramification", trace, n)


def check_indicator_domination(a: Coef, removed_index: int) -> Verdict:
    """Remove the term at removed_index (canonical order) as the dominant
    one; require h_A > 2 h_B on {h_B > 0} and C(co W0^A) > 2 C(co W0^B)."""
    terms = terms_of(a)
    if len(terms) < 2:
        raise ValueError("dominant-term removal requires m >= 2 exponential terms")
    if not 0 <= removed_index < len(terms):
        raise IndexError("removed_index out of range")
    n = order_of(a)
    kept = tuple(t for i, t in enumerate(terms) if i != removed_index)
    b: Coef = ExpPoly(n, h0_of(a), kept)
    trace = [("removed term frequency", str(terms[removed_index].frequency), True)]
    ha, hb = indicator_of(a), indicator_of(b)
    cmp = certify_strict(ha, IndicatorCombo(((2.0, hb),)), domain=hb)
    ok1 = cmp.status == "proven"
    trace.append(("h_A > 2 h_B whenever h_B > 0",
                  f"{cmp.status} (margin {cmp.margin:.3g}, arcs {cmp.samples})", ok1))
    w0a = hull(conjugated_frequency_points(a, include_zero=True))
    w0b = hull(conjugated_frequency_points(b, include_zero=True))
    ok2 = w0a.circumference > 2.0 * w0b.circumference * (1 + 1e-12)
    trace.append(("C(co W0^A) > 2 C(co W0^B)",
                  f"{w0a.circumference:.12g} vs 2*{w0b.circumference:.12g}", ok2))
    if ok1 and ok2:
        return _verdict(Conclusion.LambdaAtLeastN, "dominant_term", trace, n)
    return _verdict(Conclusion.Inconclusive, "dominant_term", trace, n)


def check_opposite_collinear(a: Coef) -> Verdict:
    """Exactly two opposite-ray frequencies with polynomial data force
    lambda(f) = infinity; more than two collinear ones may not."""
    n = order_of(a)
    trace = []
    freqs = frequencies(a)
    if n < 1 or not freqs:
        trace.append(("exponential terms present", "none", False))
        return _verdict(Conclusion.Inconclusive, "opposite_rays", trace, max(n, 0))
    # collinear through the origin?
    f0 = freqs[0]
    ratios = [f / f0 for f in freqs]
    collinear = all(r.is_real for r in ratios)
    both_sides = collinear and any(r.re < 0 for r in ratios)
    if len(freqs) == 2 and both_sides:
        poly_ok = all(order_of(t.coefficient) == 0 for t in terms_of(a)) and _h0_is_polynomial(a)
        trace.append(("zeta1/zeta2 real and negative", str(ratios[1]), True))
        trace.append(("P1, P2, Q polynomials", "yes" if poly_ok else "no", poly_ok))
        if poly_ok:
            return _verdict(Conclusion.LambdaInfinite, "opposite_rays", trace, n)
        return _verdict(Conclusion.Inconclusive, "opposite_rays", trace, n)
    if len(freqs) > 2 and both_sides:
        trace.append(("more than two collinear frequencies through 0",
                      f"m = {len(freqs)}", False))
        return _verdict(Conclusion.Inconclusive, "opposite_rays_many", trace, n)
    trace.append(("exactly two frequencies on opposite rays", "not matched", False))
    return _verdict(Conclusion.Inconclusive, "opposite_rays", trace, n)


# ---------------------------------------------------------------------------
# syntheses
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SixteenthSynthesis:
    q: Polynomial
    a: Coef
    verdict: Verdict


def synth_sixteenth(p: Polynomial) -> SixteenthSynthesis:
    """Build Q = -P'^2/16 + P''/4 and A = e^P + Q with a zero-free base."""
    p = p if isinstance(p, Polynomial) else Polynomial.of(p)
    if p.degree < 1:
        raise ValueError("P must be nonconstant")
    if p.coeffs and not p.coeffs[0].is_zero:
        raise ValueError("P must have zero constant term for an exact e^P")
    q = _sixteenth_q(p)
    a = add(normalize([(1, p)]), q)
    n = p.degree
    v = _verdict(Conclusion.ZeroFreeBaseExists, "sixteenth",
                 [("Q == -P'^2/16 + P''/4", str(q), True)], n)
    return SixteenthSynthesis(q, a, v)


def synth_zero_free_base(p: Polynomial) -> Coef:
    """A with -4A = e^{2P} + P'^2 - 2P''; the equation then has a zero-free base."""
    p = p if isinstance(p, Polynomial) else Polynomial.of(p)
    if p.degree < 1:
        raise ValueError("P must be nonconstant")
    if p.coeffs and not p.coeffs[0].is_zero:
        raise ValueError("P must have zero constant term for an exact e^{2P}")
    dp = p.derivative()
    quarter = GaussianRational.of(Fraction(-1, 4))
    poly_part = sub(mul(dp, dp), scale(dp.derivative(), GaussianRational.of(2)))
    return add(scale(normalize([(1, scale(p, GaussianRational.of(2)))]), quarter),
               scale(poly_part, quarter))


def match_zero_free_base(a: Coef) -> Optional[Polynomial]:
    """Recognize the zero-free-base normal form literally.

    Matches exactly one exponential term whose coefficient is -1/4 * e^{S}
    with polynomial remainder -1/4 (P'^2 - 2 P'') for P = (zeta z^n + S)/2.
    Algebraically equivalent rescalings (absorbing constants into P via
    complex shifts) are reported as non-matches.
    """
    terms = terms_of(a)
    if len(terms) != 1:
        return None
    n = order_of(a)
    m = as_scaled_exponential(terms[0].coefficient)
    if m is None:
        return None
    k, s = m
    if k != GaussianRational.of(Fraction(-1, 4)):
        return None
    if not _h0_is_polynomial(a):
        return None
    two_p = add(Polynomial.monomial(terms[0].frequency, n), s)
    half = GaussianRational.of(Fraction(1, 2))
    p = scale(two_p, half)
    if not isinstance(p, Polynomial) or p.degree < 1:
        return None
    dp = p.derivative()
    required = scale(sub(mul(dp, dp), scale(dp.derivative(), GaussianRational.of(2))),
                     GaussianRational.of(Fraction(-1, 4)))
    if equals_zero(sub(h0_of(a), required)):
        return p
    return None


@dataclass(frozen=True)
class RefereeSynthesis:
    b: Polynomial
    a: Coef
    t_log_derivative: Polynomial


def synth_referee_B(t_term: Coef) -> RefereeSynthesis:
    """From T = H e^{zeta z^n} with zero-free H, build
    B = -(T'/T)^2/16 + (T'/T)'/4 and A = T + B.

    Supports H = constant or a zero-free scaled exponential (the tower
    cannot represent other zero-free entire H exactly); H with zeros is a
    domain error since B would acquire poles.
    """
    terms = terms_of(t_term)
    if len(terms) != 1 or not equals_zero(h0_of(t_term)):
        raise ValueError("T must be a single exponential term")
    n = order_of(t_term)
    term = terms[0]
    m = as_scaled_exponential(term.coefficient)
    if m is None:
        raise ValueError("H must be zero-free (constant or scaled exponential)")
    _, s = m
    # t = T'/T = S' + n zeta z^(n-1), a polynomial of degree n-1
    t_log = add(s.derivative(), Polynomial.monomial(term.frequency * n, n - 1))
    b = add(scale(mul(t_log, t_log), GaussianRational.of(Fraction(-1, 16))),
            scale(t_log.derivative(), GaussianRational.of(Fraction(1, 4))))
    assert isinstance(b, Polynomial)
    expected_deg = 2 * (n - 1)
    assert b.degree == expected_deg, "B must be a polynomial of degree 2(n-1)"
    lead = b.coeffs[-1] if b.coeffs else GaussianRational.of(0)
    want = term.frequency * term.frequency * (n * n) * Fraction(-1, 16)
    assert lead == want, "leading term must be -n^2 zeta^2 z^{2(n-1)} / 16"
    return RefereeSynthesis(b, add(t_term, b), t_log)


# ---------------------------------------------------------------------------
# dispatcher
# ---------------------------------------------------------------------------

def classify(a: Coef) -> list:
    """Run every applicable check against the coefficient, in fixed order."""
    if equals_zero(a):
        raise ValueError("cannot classify the zero coefficient")
    n = order_of(a)
    if n < 1:
        raise ValueError("coefficient must be transcendental (have an exponential term)")
    verdicts: list = []
    pure = _pure_exponential_terms(a)
    h0 = h0_of(a)
    freqs = frequencies(a)

    # normal form -4A = e^{2P} + P'^2 - 2P''
    p_match = match_zero_free_base(a)
    if p_match is not None:
        verdicts.append(_verdict(
            Conclusion.ZeroFreeBaseExists, "special_base",
            [("-4A == e^{2P} + P'^2 - 2P''", f"P = {p_match}", True)], n))

    # A = e^z - K
    if (n == 1 and len(freqs) == 1 and freqs[0] == ONE
            and terms_of(a)[0].coefficient == Polynomial.constant(1)
            and order_of(h0) == 0):
        if isinstance(h0, Polynomial) and h0.degree <= 0:
            k_val = neg(h0).eval_exact(0) if not h0.is_zero else GaussianRational.of(0)
            q = _odd_square_over_16(k_val)
            if q is not None:
                verdicts.append(_verdict(
                    Conclusion.ZeroFreeBasePossible, "bll0",
                    [("A == e^z - K", f"K = {k_val}", True),
                     ("K == q^2/16 with q odd", f"q = {q}", True)], 1))
            else:
                verdicts.append(_verdict(
                    Conclusion.LambdaInfinite, "bll0",
                    [("A == e^z - K", f"K = {k_val}", True),
                     ("K != q^2/16 for every odd q", str(k_val), True)], 1))

    # A = c e^P, a single zero-free exponential term and nothing else
    if pure is not None and len(pure) == 1 and equals_zero(h0):
        verdicts.append(_verdict(
            Conclusion.LambdaInfinite, "pure_exponential",
            [("A == c e^P, P nonconstant", f"zeta = {pure[0][1]}", True)], n))

    # A = e^P + Q with the 1/16-form Q
    if (pure is not None and len(pure) == 1 and pure[0][0] == ONE
            and order_of(h0) == 0 and isinstance(h0, Polynomial)):
        p_full = add(Polynomial.monomial(pure[0][1], n), as_scaled_exponential(terms_of(a)[0].coefficient)[1])
        if isinstance(p_full, Polynomial) and p_full.degree >= 1:
            required = _sixteenth_q(p_full)
            if equals_zero(sub(h0, required)):
                verdicts.append(_verdict(
                    Conclusion.ZeroFreeBaseExists, "sixteenth",
                    [("A == e^P + Q", f"P = {p_full}", True),
                     ("Q == -P'^2/16 + P''/4", str(required), True)], n))

    # two pure exponential terms of different degrees: e^{P1} + e^{P2} + Q
    if pure is not None and len(pure) == 1 and order_of(h0) >= 1:
        inner_pure = _pure_exponential_terms(h0)
        if inner_pure is not None and len(inner_pure) == 1 and _h0_is_polynomial(h0):
            verdicts.append(_verdict(
                Conclusion.LambdaInfinite, "order_split",
                [("A == e^{P1} + e^{P2} + Q with deg P1 != deg P2",
                  f"degrees {n} and {order_of(h0)}", True)], n))

    # two pure exponential terms of the same degree (Q may be any order < n)
    if pure is not None and len(pure) == 2:
        q_nonzero = not equals_zero(h0)
        verdicts.append(check_two_term(pure[0][1], pure[1][1], n, q_nonzero))

    verdicts.append(check_opposite_collinear(a))
    verdicts.append(check_perimeter(a))

    # ramification with the best hull-implied K
    if equals_zero(h0):
        w = hull(conjugated_frequency_points(a, include_zero=False))
        w0 = hull(conjugated_frequency_points(a, include_zero=True))
        k_hat = math.inf if w.circumference == 0 else w0.circumference / w.circumference
        verdicts.append(check_theta_ramification(a, K=min(k_hat, 1e9) if k_hat > 0 else 1.0))
    else:
        verdicts.append(check_theta_ramification(a, K=4.5))

    # dominant-term removal over every index; keep the first proven one,
    # else record the first attempt
    if len(terms_of(a)) >= 2:
        attempts = [check_indicator_domination(a, i) for i in range(len(terms_of(a)))]
        chosen = next((v for v in attempts if v.conclusive), attempts[0])
        verdicts.append(chosen)

    verdicts.append(_verdict(Conclusion.Inconclusive, "pair_advisory",
                             [("advisory only: constrains solution pairs, "
                               "not a predicate on A", "", False)], n))
    return verdicts

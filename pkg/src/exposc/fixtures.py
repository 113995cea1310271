"""Built-in worked examples: coefficients with known solutions and splits.

Each fixture carries the coefficient A of f'' + A f = 0 in exact tower
form, and, when a closed-form solution f = pi e^g is known, the solution
specification (with exact g').  Splits (B, C) with A = B + C and two-target
pairs feed the inequality audits.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .rationals import GaussianRational, I
from .exppoly import Coef, E, Polynomial, X, differentiate, mul
from .audits import SolutionSpec

__all__ = ["Fixture", "fixtures", "fixture"]

F = Fraction
GR = GaussianRational.of


@dataclass(frozen=True)
class Fixture:
    name: str
    description: str
    coefficient: Coef
    solution: Optional[SolutionSpec] = None
    split: Optional[tuple] = None      # (B, C) with A = B + C
    targets: Optional[tuple] = None    # (a1, a2) small targets
    analyses: tuple = ("classify",)


def _bll0(q: int, sign: int) -> Fixture:
    """A = e^z - q^2/16 with f = ((-1)^j i/2 e^{-z/2} + 1_{q=3}) exp(2i(-1)^j e^{z/2} - z/4)."""
    a = E(1) - F(q * q, 16)
    s = 1 if sign > 0 else -1
    g = 2 * s * I * E(F(1, 2)) - X() / 4
    if q == 1:
        pi: Coef = Polynomial.constant(1)
    else:
        pi = s * I * F(1, 2) * E(F(-1, 2)) + 1
    return Fixture(
        f"bll0-q{q}",
        f"exponential-minus-constant coefficient with K = {q}^2/16",
        a,
        SolutionSpec(pi, differentiate(g), g, label=f"bll0-q{q}"),
        analyses=("classify", "characteristic", "audits"),
    )


def _build() -> list:
    z = X()
    out = []

    out.append(_bll0(1, +1))
    out.append(_bll0(3, +1))

    # A = -1/4 (e^{2z} - 2 e^z + 4), f = exp(e^z/2 - z)
    a_half = F(-1, 4) * (E(2) - 2 * E(1) + 4)
    g_half = F(1, 2) * E(1) - z
    out.append(Fixture(
        "half",
        "ratio-1/2 coefficient with zero-free solution exp(e^z/2 - z)",
        a_half,
        SolutionSpec.from_exponent(Polynomial.constant(1), g_half, "half"),
        split=(F(-1, 4) * E(2) + F(1, 2) * E(1), Polynomial.constant(-1)),
        analyses=("classify", "characteristic", "audits"),
    ))

    # same A and f; B = -g'^2, C = -g'' is the excluded-split illustration
    gp = F(1, 2) * E(1) - 1
    out.append(Fixture(
        "half-splits",
        "ratio-1/2 coefficient with the degenerate split B = -g'^2, C = -g''",
        a_half,
        SolutionSpec.from_exponent(Polynomial.constant(1), g_half, "half-splits"),
        split=(-mul(gp, gp), -differentiate(gp)),
        analyses=("classify", "audits"),
    ))

    # A = -(e^z+1)^2/16, f = exp((e^z - z)/4)
    a_p2 = F(-1, 16) * (E(1) + 1) * (E(1) + 1)
    out.append(Fixture(
        "power2",
        "squared-factor coefficient with solution exp((e^z - z)/4)",
        a_p2,
        SolutionSpec.from_exponent(Polynomial.constant(1),
                                   F(1, 4) * E(1) - z / 4, "power2"),
        targets=(Polynomial(), Polynomial.constant(F(-1, 16))),
        analyses=("classify", "characteristic", "zeros", "audits"),
    ))

    # A = -49/4 - 36 e^{-z} - 9 e^{-2z}, f = (e^z+1)(e^z+1/2) exp(3e^{-z} - 11z/2)
    a_rat = Polynomial.constant(F(-49, 4)) - 36 * E(-1) - 9 * E(-2)
    pi_rat = (E(1) + 1) * (E(1) + F(1, 2))
    g_rat = 3 * E(-1) - F(11, 2) * z
    out.append(Fixture(
        "rationals",
        "rational-coefficient example with infinitely many solution zeros",
        a_rat,
        SolutionSpec.from_exponent(pi_rat, g_rat, "rationals"),
        targets=(Polynomial(), Polynomial.constant(F(-49, 4))),
        analyses=("classify", "characteristic", "audits"),
    ))

    # A = -1/4 e^{-2z}(e^{4z} - 4e^{3z} + 3e^{2z} - 4e^z + 1),
    # f = (e^z + 1) exp(-e^{-z}/2 - e^z/2 - z/2)
    a_penta = (F(-1, 4) * E(2) + E(1) - F(3, 4)
               + E(-1) - F(1, 4) * E(-2))
    g_penta = F(-1, 2) * E(-1) - F(1, 2) * E(1) - z / 2
    out.append(Fixture(
        "penta",
        "five-frequency coefficient with factored solution (e^z + 1) e^g",
        a_penta,
        SolutionSpec.from_exponent(E(1) + 1, g_penta, "penta"),
        analyses=("classify", "audits"),
    ))

    # zero-free f = exp(e^{z^n}) for n = 1, 2
    out.append(Fixture(
        "ex8-n1",
        "boundary case of the dominant-term criterion, order 1",
        -E(1) - E(2),
        SolutionSpec.from_exponent(Polynomial.constant(1), E(1), "ex8-n1"),
        split=(-E(1), -E(2)),
        analyses=("classify", "audits"),
    ))
    z2 = Polynomial.monomial(1, 2)
    out.append(Fixture(
        "ex8-n2",
        "boundary case of the dominant-term criterion, order 2",
        E(1, n=2, coefficient=Polynomial.of([-2, 0, -4])) + E(2, n=2, coefficient=-4 * z2),
        SolutionSpec.from_exponent(Polynomial.constant(1), E(1, n=2), "ex8-n2"),
        analyses=("classify", "audits"),
    ))

    # collinear frequency pairs with zero-free solutions
    out.append(Fixture(
        "collinear-pair",
        "four collinear frequencies, zero-free solution exp(e^{-z} + e^z)",
        -E(-1) - E(-2) - E(1) - E(2) + 2,
        SolutionSpec.from_exponent(Polynomial.constant(1), E(-1) + E(1), "collinear-pair"),
        analyses=("classify", "audits"),
    ))
    out.append(Fixture(
        "collinear-skew",
        "five collinear frequencies, zero-free solution exp(e^{-z} + e^{2z})",
        -E(-1) - E(-2) + 4 * E(1) - 4 * E(2) - 4 * E(4),
        SolutionSpec.from_exponent(Polynomial.constant(1), E(-1) + E(2), "collinear-skew"),
        analyses=("classify",),
    ))

    # square-hull coefficient, zero-free solution exp(e^z + e^{-z} + e^{iz} + e^{-iz})
    i = GR((0, 1))
    a_sq = (E(i) + E(-i) - E(1) - E(-1) + E(2 * i) + E(-2 * i) - E(2) - E(-2)
            + 2 * I * E(1 - i) + 2 * I * E(i - 1) - 2 * I * E(1 + i) - 2 * I * E(-(1 + i)))
    g_sq = E(1) + E(-1) + E(i) + E(-i)
    out.append(Fixture(
        "square-hull",
        "square-hull coefficient (circumference 8 sqrt 2) with zero-free solution",
        a_sq,
        SolutionSpec.from_exponent(Polynomial.constant(1), g_sq, "square-hull"),
        analyses=("classify", "characteristic"),
    ))

    # three-term coefficient with a genuinely negative indicator sector
    out.append(Fixture(
        "triple",
        "e^z + e^{2z} + e^{3z}: negative indicator on the left half-plane",
        E(1) + E(2) + E(3),
        None,
        analyses=("classify", "characteristic", "sectors"),
    ))
    return out


_REGISTRY = {f.name: f for f in _build()}


def fixtures() -> list:
    """All built-in fixtures, in a fixed order."""
    return list(_REGISTRY.values())


def fixture(name: str) -> Fixture:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {sorted(_REGISTRY)}")

"""Exact Gaussian-rational scalars.

All coefficient arithmetic in the package runs over Q(i) so that identity
tests (e.g. residuals of candidate solutions) are exact rather than
floating-point comparisons.  ``fractions.Fraction`` keeps denominators
positive and in lowest terms, which gives us both invariants for free.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = ["GaussianRational", "as_fraction", "ZERO", "ONE", "I"]


def as_fraction(value) -> Fraction:
    """Coerce ints, strings like '3/4', and exact dyadic floats to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, float):
        # exact: every finite float is a dyadic rational
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


@dataclass(frozen=True)
class GaussianRational:
    """An element of Q(i): exact real and imaginary rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            return GaussianRational(as_fraction(value.real), as_fraction(value.imag))
        if isinstance(value, tuple) and len(value) == 2:
            return GaussianRational(as_fraction(value[0]), as_fraction(value[1]))
        return GaussianRational(as_fraction(value))

    # ---- predicates -------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.re and not self.im

    @property
    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return not self.is_zero

    # ---- arithmetic --------------------------------------------------
    @staticmethod
    def _try(other):
        try:
            return GaussianRational.of(other)
        except TypeError:
            return None

    def __add__(self, other):
        other = GaussianRational._try(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = GaussianRational._try(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = GaussianRational._try(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = GaussianRational._try(other)
        if other is None:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "GaussianRational":
        other = GaussianRational.of(other)
        d = other.abs2()
        if not d:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * other.conjugate()
        return GaussianRational(num.re / d, num.im / d)

    def __rtruediv__(self, other) -> "GaussianRational":
        return GaussianRational.of(other) / self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """|z|^2, exact."""
        return self.re * self.re + self.im * self.im

    # ---- conversions -------------------------------------------------
    def to_complex(self) -> complex:
        return complex(self.re, self.im)

    def __complex__(self) -> complex:
        return self.to_complex()

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        if self.re:
            parts.append(str(self.re))
        if self.im:
            sign = "-" if self.im < 0 else ("+" if parts else "")
            mag = abs(self.im)
            parts.append(f"{sign}{mag}i" if mag != 1 else f"{sign}i")
        return "".join(parts)


ZERO = GaussianRational()
ONE = GaussianRational(Fraction(1))
I = GaussianRational(Fraction(0), Fraction(1))

"""Exact algebra of polynomials and nested exponential polynomials.

A value is a tower ``H0 + sum_j H_j * exp(zeta_j z^n)`` whose coefficients
``H_j`` are towers of strictly smaller order; order-0 towers are plain
polynomials.  Frequencies and polynomial coefficients live in Q(i), so
construction, +, *, d/dz and identity tests are exact.

Numerically stable evaluation goes through :func:`log_eval`, which keeps
values in log-magnitude/phase form and combines terms log-sum-exp style so
that nothing overflows for moderate |z| even though the values themselves
may be astronomically large.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Optional, Union

import numpy as np

from .rationals import GaussianRational, ZERO, ONE

__all__ = [
    "Polynomial",
    "ExpTerm",
    "ExpPoly",
    "Coef",
    "LogValue",
    "normalize",
    "add",
    "sub",
    "mul",
    "neg",
    "scale",
    "differentiate",
    "equals_zero",
    "order_of",
    "frequencies",
    "h0_of",
    "terms_of",
    "log_eval",
    "log_eval_grid",
    "eval_complex",
    "rotate",
    "as_scaled_exponential",
    "max_coeff_abs",
    "E",
    "X",
]

Scalar = Union[int, str, Fraction, GaussianRational]


def _coerce_scalar(x) -> GaussianRational:
    return GaussianRational.of(x)


class _Arith:
    """Operator sugar shared by Polynomial and ExpPoly."""

    def __add__(self, other):
        return add(self, _coerce(other))

    def __radd__(self, other):
        return add(_coerce(other), self)

    def __sub__(self, other):
        return add(self, neg(_coerce(other)))

    def __rsub__(self, other):
        return add(_coerce(other), neg(self))

    def __mul__(self, other):
        return mul(self, _coerce(other))

    def __rmul__(self, other):
        return mul(_coerce(other), self)

    def __neg__(self):
        return neg(self)

    def __truediv__(self, other):
        k = _coerce_scalar(other)
        return scale(self, ONE / k)


@dataclass(frozen=True)
class Polynomial(_Arith):
    """Dense polynomial, coefficients ascending by degree, trailing zeros trimmed."""

    coeffs: tuple = ()

    def __post_init__(self):
        cs = tuple(_coerce_scalar(c) for c in self.coeffs)
        while cs and cs[-1].is_zero:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    @staticmethod
    def of(coeffs: Iterable) -> "Polynomial":
        return Polynomial(tuple(coeffs))

    @staticmethod
    def constant(c) -> "Polynomial":
        return Polynomial((_coerce_scalar(c),))

    @staticmethod
    def monomial(c, k: int) -> "Polynomial":
        c = _coerce_scalar(c)
        if c.is_zero:
            return Polynomial()
        return Polynomial((ZERO,) * k + (c,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> GaussianRational:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(c * k for k, c in enumerate(self.coeffs) if k))

    def eval_exact(self, z) -> GaussianRational:
        z = _coerce_scalar(z)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __call__(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c.to_complex()
        return acc

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero:
                continue
            if k == 0:
                parts.append(f"{c}")
            elif k == 1:
                parts.append(f"({c})*z")
            else:
                parts.append(f"({c})*z^{k}")
        return " + ".join(parts)


@dataclass(frozen=True)
class ExpTerm:
    """One summand H(z) * exp(zeta * z^n) of an order-n tower."""

    frequency: GaussianRational
    coefficient: "Coef"


@dataclass(frozen=True)
class ExpPoly(_Arith):
    """Normalized tower of order n >= 1.

    Invariants: frequencies nonzero, pairwise distinct, canonically sorted
    by (|zeta|^2, arg zeta); every coefficient and h0 has order < n; no
    zero coefficients.  Construct via the module operations, not directly.
    """

    order: int
    h0: "Coef"
    terms: tuple

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("ExpPoly order must be >= 1")

    @property
    def is_zero(self) -> bool:
        return not self.terms and equals_zero(self.h0)

    def __str__(self) -> str:
        chunks = []
        if not equals_zero(self.h0):
            chunks.append(str(self.h0))
        zs = "z" if self.order == 1 else f"z^{self.order}"
        for t in self.terms:
            coef = str(t.coefficient)
            head = "" if coef == "1" else f"({coef})*"
            chunks.append(f"{head}e^[({t.frequency}){zs}]")
        return " + ".join(chunks) if chunks else "0"


Coef = Union[Polynomial, ExpPoly]

ZERO_POLY = Polynomial()
ONE_POLY = Polynomial.constant(1)


def X() -> Polynomial:
    """The identity polynomial z."""
    return Polynomial.monomial(1, 1)


def E(freq, n: int = 1, coefficient=None) -> ExpPoly:
    """exp(freq * z^n), optionally scaled: coefficient * exp(freq * z^n)."""
    f = _coerce_scalar(freq)
    if f.is_zero:
        raise ValueError("frequency must be nonzero; use a polynomial instead")
    coef: Coef = ONE_POLY if coefficient is None else _coerce(coefficient)
    if order_of(coef) >= n:
        raise ValueError("coefficient order must be < n")
    return ExpPoly(n, ZERO_POLY, (ExpTerm(f, coef),))


def _coerce(x) -> Coef:
    if isinstance(x, (Polynomial, ExpPoly)):
        return x
    return Polynomial.constant(_coerce_scalar(x))


def order_of(a: Coef) -> int:
    return 0 if isinstance(a, Polynomial) else a.order


def h0_of(a: Coef) -> Coef:
    return a if isinstance(a, Polynomial) else a.h0


def terms_of(a: Coef) -> tuple:
    return () if isinstance(a, Polynomial) else a.terms


def frequencies(a: Coef) -> list:
    return [t.frequency for t in terms_of(a)]


def equals_zero(a: Coef) -> bool:
    """Exact identity-to-zero test on canonical forms."""
    if isinstance(a, Polynomial):
        return a.is_zero
    return not a.terms and equals_zero(a.h0)


# ---------------------------------------------------------------------------
# canonical form
# ---------------------------------------------------------------------------

def _angle_group(u: GaussianRational) -> int:
    # angles in [-pi, 0) sort before [0, pi)
    if u.im < 0 or (u.im == 0 and u.re < 0):
        return 0
    return 1


def _freq_cmp(u: GaussianRational, v: GaussianRational) -> int:
    au, av = u.abs2(), v.abs2()
    if au != av:
        return -1 if au < av else 1
    gu, gv = _angle_group(u), _angle_group(v)
    if gu != gv:
        return -1 if gu < gv else 1
    cross = u.re * v.im - u.im * v.re
    if cross > 0:
        return -1
    if cross < 0:
        return 1
    return 0


_FREQ_KEY = cmp_to_key(_freq_cmp)


def _canon(n: int, h0: Coef, bucket: dict) -> Coef:
    terms = []
    for f in sorted(bucket, key=_FREQ_KEY):
        c = bucket[f]
        if equals_zero(c):
            continue
        if f.is_zero:
            raise AssertionError("zero frequency must be merged into h0")
        if order_of(c) >= n:
            raise AssertionError("coefficient order must be < tower order")
        terms.append(ExpTerm(f, c))
    if not terms:
        return h0
    if order_of(h0) >= n:
        raise AssertionError("h0 order must be < tower order")
    return ExpPoly(n, h0, tuple(terms))


def _lift(a: Coef, n: int):
    """View a as (h0, terms) at order n (a has order <= n)."""
    if order_of(a) < n:
        return a, ()
    return a.h0, a.terms


# ---------------------------------------------------------------------------
# ring operations
# ---------------------------------------------------------------------------

def add(a: Coef, b: Coef) -> Coef:
    if isinstance(a, Polynomial) and isinstance(b, Polynomial):
        m = max(len(a.coeffs), len(b.coeffs))
        ca = a.coeffs + (ZERO,) * (m - len(a.coeffs))
        cb = b.coeffs + (ZERO,) * (m - len(b.coeffs))
        return Polynomial(tuple(x + y for x, y in zip(ca, cb)))
    n = max(order_of(a), order_of(b))
    ha, ta = _lift(a, n)
    hb, tb = _lift(b, n)
    bucket: dict = {}
    for t in ta + tb:
        cur = bucket.get(t.frequency)
        bucket[t.frequency] = t.coefficient if cur is None else add(cur, t.coefficient)
    return _canon(n, add(ha, hb), bucket)


def neg(a: Coef) -> Coef:
    return scale(a, GaussianRational.of(-1))


def sub(a: Coef, b: Coef) -> Coef:
    return add(a, neg(b))


def scale(a: Coef, k: GaussianRational) -> Coef:
    k = _coerce_scalar(k)
    if isinstance(a, Polynomial):
        return Polynomial(tuple(c * k for c in a.coeffs))
    if k.is_zero:
        return ZERO_POLY
    return ExpPoly(
        a.order,
        scale(a.h0, k),
        tuple(ExpTerm(t.frequency, scale(t.coefficient, k)) for t in a.terms),
    )


def mul(a: Coef, b: Coef) -> Coef:
    if isinstance(a, Polynomial) and isinstance(b, Polynomial):
        if a.is_zero or b.is_zero:
            return ZERO_POLY
        out = [ZERO] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, ca in enumerate(a.coeffs):
            if ca.is_zero:
                continue
            for j, cb in enumerate(b.coeffs):
                out[i + j] = out[i + j] + ca * cb
        return Polynomial(tuple(out))
    n = max(order_of(a), order_of(b))
    ha, ta = _lift(a, n)
    hb, tb = _lift(b, n)
    h = mul(ha, hb)
    bucket: dict = {}

    def put(f: GaussianRational, c: Coef):
        nonlocal h
        if equals_zero(c):
            return
        if f.is_zero:
            h = add(h, c)
            return
        cur = bucket.get(f)
        bucket[f] = c if cur is None else add(cur, c)

    if not equals_zero(ha):
        for t in tb:
            put(t.frequency, mul(ha, t.coefficient))
    if not equals_zero(hb):
        for t in ta:
            put(t.frequency, mul(t.coefficient, hb))
    for t1 in ta:
        for t2 in tb:
            put(t1.frequency + t2.frequency, mul(t1.coefficient, t2.coefficient))
    return _canon(n, h, bucket)


def differentiate(a: Coef) -> Coef:
    """d/dz; termwise (H' + n*zeta*z^(n-1) H) e^(zeta z^n)."""
    if isinstance(a, Polynomial):
        return a.derivative()
    n = a.order
    bucket: dict = {}
    for t in a.terms:
        chain = Polynomial.monomial(t.frequency * n, n - 1)
        bucket[t.frequency] = add(differentiate(t.coefficient), mul(chain, t.coefficient))
    return _canon(n, differentiate(a.h0), bucket)


def normalize(pairs) -> Coef:
    """Rewrite sum_j P_j e^{Q_j} (polynomial P_j, Q_j) in normalized tower form.

    The exponent polynomials must have zero constant term: a nonzero
    constant would contribute a transcendental factor e^c that Q(i)
    coefficients cannot represent exactly (fold such factors into P_j,
    numerically, via the inexact input path of the CLI).
    """
    items = [(_coerce(p), _coerce(q)) for p, q in pairs]
    if not items:
        raise ValueError("normalize requires at least one (P, Q) term")
    for p, q in items:
        if not isinstance(p, Polynomial) or not isinstance(q, Polynomial):
            raise ValueError("normalize takes polynomial (P, Q) pairs")
        if p.is_zero:
            raise ValueError("each P_j must be nonzero")
    n = max(max(q.degree, 0) for _, q in items)
    if n == 0:
        acc: Coef = ZERO_POLY
        for p, q in items:
            if not q.is_zero:
                raise ValueError(
                    "constant exponent must be 0 exactly (e^c is transcendental; "
                    "fold the factor into P numerically instead)"
                )
            acc = add(acc, p)
        return acc
    h: Coef = ZERO_POLY
    bucket: dict = {}
    for p, q in items:
        if q.degree < n:
            h = add(h, normalize([(p, q)]))
            continue
        zeta = q.leading
        rest = Polynomial(q.coeffs[:-1])
        coef: Coef = p if rest.is_zero else normalize([(p, rest)])
        cur = bucket.get(zeta)
        bucket[zeta] = coef if cur is None else add(cur, coef)
    return _canon(n, h, bucket)


def rotate(a: Coef, unit: GaussianRational) -> Coef:
    """Exact reparameterization z -> unit*z for |unit| = 1 in Q(i)."""
    unit = _coerce_scalar(unit)
    if unit.abs2() != 1:
        raise ValueError("rotation unit must have |u|^2 == 1 exactly")
    if isinstance(a, Polynomial):
        out, p = [], ONE
        for c in a.coeffs:
            out.append(c * p)
            p = p * unit
        return Polynomial(tuple(out))
    un = ONE
    for _ in range(a.order):
        un = un * unit
    bucket = {t.frequency * un: rotate(t.coefficient, unit) for t in a.terms}
    return _canon(a.order, rotate(a.h0, unit), bucket)


def as_scaled_exponential(a: Coef):
    """Match a == k * e^S for a constant k != 0 and polynomial S with S(0)=0.

    Returns (k, S) or None.  This recognizes the 'pure exponential towers'
    produced by normalize from a single (constant, Q) input.
    """
    if isinstance(a, Polynomial):
        if a.degree == 0:
            return a.coeffs[0], ZERO_POLY
        return None
    if a.terms and not equals_zero(a.h0):
        return None
    if len(a.terms) != 1:
        return None
    t = a.terms[0]
    inner = as_scaled_exponential(t.coefficient)
    if inner is None:
        return None
    k, s = inner
    return k, add(s, Polynomial.monomial(t.frequency, a.order))


def max_coeff_abs(a: Coef) -> float:
    """Largest |coefficient| in the tower (float); 0 for the zero value."""
    if isinstance(a, Polynomial):
        return max((abs(c.to_complex()) for c in a.coeffs), default=0.0)
    m = max_coeff_abs(a.h0)
    for t in a.terms:
        m = max(m, max_coeff_abs(t.coefficient))
    return m


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LogValue:
    """A complex value in log form: exp(logmag) * e^(i*phase).

    logmag may be -inf (an exact zero, or total cancellation); phase is in
    [-pi, pi) and accumulates mod 2*pi only.
    """

    logmag: float
    phase: float


def _wrap(x: float) -> float:
    y = math.remainder(x, math.tau)
    return -math.pi if y >= math.pi else y


def log_eval(a: Coef, z: complex) -> LogValue:
    """Evaluate in log-magnitude/phase form without intermediate overflow."""
    z = complex(z)
    if isinstance(a, Polynomial):
        v = a(z)
        if v == 0:
            return LogValue(-math.inf, 0.0)
        return LogValue(math.log(abs(v)), cmath.phase(v))
    zn = z ** a.order
    parts = []
    if not equals_zero(a.h0):
        parts.append(log_eval(a.h0, z))
    for t in a.terms:
        sv = log_eval(t.coefficient, z)
        w = t.frequency.to_complex() * zn
        if sv.logmag == -math.inf:
            continue
        parts.append(LogValue(sv.logmag + w.real, _wrap(sv.phase + w.imag)))
    parts = [p for p in parts if p.logmag > -math.inf]
    if not parts:
        return LogValue(-math.inf, 0.0)
    m = max(p.logmag for p in parts)
    s = sum(math.exp(p.logmag - m) * cmath.exp(1j * p.phase) for p in parts)
    if s == 0:
        return LogValue(-math.inf, 0.0)
    return LogValue(m + math.log(abs(s)), cmath.phase(s))


def log_eval_grid(a: Coef, zs: np.ndarray):
    """Vectorized log_eval: returns (logmag, phase) arrays over zs."""
    zs = np.asarray(zs, dtype=complex)
    if isinstance(a, Polynomial):
        if a.is_zero:
            return np.full(zs.shape, -np.inf), np.zeros(zs.shape)
        desc = [c.to_complex() for c in reversed(a.coeffs)]
        v = np.polyval(desc, zs)
        with np.errstate(divide="ignore"):
            lm = np.log(np.abs(v))
        return lm, np.angle(v)
    zn = zs ** a.order
    lms, phs = [], []
    if not equals_zero(a.h0):
        lm0, ph0 = log_eval_grid(a.h0, zs)
        lms.append(lm0)
        phs.append(ph0)
    for t in a.terms:
        slm, sph = log_eval_grid(t.coefficient, zs)
        w = t.frequency.to_complex() * zn
        lms.append(slm + w.real)
        ph = sph + w.imag
        phs.append(np.remainder(ph + np.pi, math.tau) - np.pi)
    if not lms:
        return np.full(zs.shape, -np.inf), np.zeros(zs.shape)
    lmat = np.stack(lms)
    pmat = np.stack(phs)
    m = np.max(lmat, axis=0)
    finite = np.isfinite(m)
    out_lm = np.full(zs.shape, -np.inf)
    out_ph = np.zeros(zs.shape)
    if np.any(finite):
        delta = lmat[:, finite] - m[finite]
        s = np.sum(np.exp(delta) * np.exp(1j * pmat[:, finite]), axis=0)
        with np.errstate(divide="ignore"):
            out_lm[finite] = m[finite] + np.log(np.abs(s))
        out_ph[finite] = np.angle(s)
    return out_lm, out_ph


def phase_rate_bound(a: Coef, radius: float) -> float:
    """Heuristic bound on |d/dz log a| away from zeros, for |z| <= radius.

    Dominated by the top-level frequencies: n * max|zeta| * radius^(n-1),
    plus the same bound for coefficient towers.  Used to pick a Nyquist-safe
    sampling density for phase tracking; adaptive refinement remains the
    safety net near zeros.
    """
    m = max(radius, 1.0)
    if isinstance(a, Polynomial):
        return max(a.degree, 0) / m
    best = phase_rate_bound(a.h0, radius) if not equals_zero(a.h0) else 0.0
    fmax = 0.0
    for t in a.terms:
        fmax = max(fmax, abs(t.frequency.to_complex()))
        best = max(best, phase_rate_bound(t.coefficient, radius))
    return a.order * fmax * m ** (a.order - 1) + best


def eval_complex(a: Coef, z: complex) -> complex:
    """Plain complex value; raises OverflowError when it cannot fit a double."""
    lv = log_eval(a, z)
    if lv.logmag == -math.inf:
        return 0j
    if lv.logmag > 709.0:
        raise OverflowError(f"|value| ~ exp({lv.logmag:.3g}) overflows a double")
    return math.exp(lv.logmag) * cmath.exp(1j * lv.phase)

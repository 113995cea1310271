"""Nevanlinna functionals by quadrature and censuses.

m(r, f) is the circle average of log+ |f|, computed on a periodic trapezoid
grid from log-magnitude evaluations (spectrally accurate between the kinks
of log+ and the near-zero dips, which the log+ cap keeps benign).  N(r)
comes from a zero census of the pole-producing factor via
N(r) = sum log(r/|z_k|) + n(0) log r.  Entire targets have N(r, f) = 0 and
T = m.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from .exppoly import Coef, equals_zero, log_eval, log_eval_grid
from .zeros import Disc, ZeroCensus, count_zeros_region

__all__ = [
    "NevanlinnaSample",
    "RatioTarget",
    "nevanlinna_sample",
    "proximity",
    "counting_from_census",
    "fitted_leading_coefficient",
]


@dataclass(frozen=True)
class RatioTarget:
    """A quotient numerator/denominator of exact towers."""

    numerator: Coef
    denominator: Coef


Target = Union[Coef, RatioTarget, tuple]


@dataclass(frozen=True)
class NevanlinnaSample:
    r: float
    m: float
    n: float
    t: float
    quadrature_points: int
    converged: bool  # doubling the grid moved m by < 0.5%

    def __post_init__(self):
        assert self.m >= 0 and self.n >= -1e-12


def _as_ratio(target: Target) -> Tuple[Coef, Optional[Coef]]:
    if isinstance(target, RatioTarget):
        return target.numerator, target.denominator
    if isinstance(target, tuple):
        num, den = target
        return num, den
    return target, None


def _m_on_circle(num: Coef, den: Optional[Coef], r: float, q: int) -> float:
    th = np.linspace(-math.pi, math.pi, q, endpoint=False)
    zs = r * np.exp(1j * th)
    lm, _ = log_eval_grid(num, zs)
    if den is not None:
        lm_d, _ = log_eval_grid(den, zs)
        lm = lm - lm_d
    vals = np.maximum(lm, 0.0)
    vals = np.where(np.isfinite(vals), vals, 0.0)  # log+ of a zero is 0
    return float(np.mean(vals))


def _den_clear_of_circle(den: Coef, r: float, q: int) -> bool:
    th = np.linspace(-math.pi, math.pi, q, endpoint=False)
    lm, _ = log_eval_grid(den, r * np.exp(1j * th))
    med = float(np.median(lm[np.isfinite(lm)])) if np.any(np.isfinite(lm)) else -math.inf
    return bool(np.all(lm > med - 25.0))


def counting_from_census(census: ZeroCensus, r: float, distinct: bool = False,
                         mult_at_origin: int = 0) -> float:
    """N(r) = sum_{0<|z_k|<=r} mult * log(r/|z_k|) + n(0) log r."""
    total = mult_at_origin * math.log(r) if mult_at_origin else 0.0
    for z in census.zeros:
        az = abs(z.location)
        if 0 < az <= r:
            total += (1 if distinct else z.multiplicity) * math.log(r / az)
    return total


def proximity(target: Target, r: float, quadrature_points: int = 2048) -> float:
    """m(r, target) alone (no census)."""
    num, den = _as_ratio(target)
    return _m_on_circle(num, den, r, quadrature_points)


def nevanlinna_sample(target: Target, r: float, quadrature_points: int = 2048,
                      census: Optional[ZeroCensus] = None,
                      zero_budget: int = 10 ** 6) -> NevanlinnaSample:
    """m, N, T at radius r.

    For a ratio target the circle must keep clear of denominator zeros; the
    radius is nudged outward by 1e-4 steps (up to 10 attempts) when the
    denominator dips too close.  A precomputed census of the denominator's
    zeros may be supplied to avoid recounting.
    """
    if r <= 0:
        raise ValueError("radius must be positive")
    num, den = _as_ratio(target)
    r_eff = r
    if den is not None:
        for attempt in range(11):
            if _den_clear_of_circle(den, r_eff, max(quadrature_points, 512)):
                break
            if attempt == 10:
                raise ArithmeticError(
                    f"could not keep the circle |z| = {r} clear of denominator zeros")
            r_eff = r + 1e-4 * (attempt + 1)
    m1 = _m_on_circle(num, den, r_eff, quadrature_points)
    m2 = _m_on_circle(num, den, r_eff, 2 * quadrature_points)
    converged = abs(m2 - m1) <= 0.005 * max(abs(m2), 1e-12)
    n_val = 0.0
    if den is not None:
        if census is None:
            census = count_zeros_region(den, Disc(0, r_eff), budget=zero_budget)
        mult0 = 0
        lv0 = log_eval(den, 0.0)
        if lv0.logmag == -math.inf:
            tiny = count_zeros_region(den, Disc(0, 1e-4), budget=zero_budget)
            mult0 = tiny.count
        n_val = counting_from_census(census, r_eff, mult_at_origin=mult0)
    return NevanlinnaSample(r_eff, m2, n_val, m2 + n_val, quadrature_points, converged)


def fitted_leading_coefficient(radii, values) -> float:
    """Leading r^n coefficient from samples, removing constant offsets.

    With two radii this is the difference quotient (any constant drift
    cancels); with more it is the least-squares slope against r.  Finite-r
    Nevanlinna samples carry O(1)-to-O(log r) offsets which point values at
    a single radius cannot separate from the leading term.
    """
    rs = np.asarray(radii, dtype=float)
    vs = np.asarray(values, dtype=float)
    if len(rs) < 2:
        raise ValueError("need at least two radii")
    if len(rs) == 2:
        return float((vs[1] - vs[0]) / (rs[1] - rs[0]))
    A = np.stack([rs, np.ones_like(rs)], axis=1)
    sol, *_ = np.linalg.lstsq(A, vs, rcond=None)
    return float(sol[0])

"""Zero censuses: sign changes on real rays and argument-principle counts.

Winding numbers come from continuous phase tracking along region boundaries
with adaptive step halving (|delta arg| < pi/2 per step).  Regions subdivide
until each sub-box isolates at most one zero location; isolated simple zeros
are polished by Newton iteration on the exact derivative, while clustered
windings that persist at radius 1e-6 are reported as one location with
multiplicity.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .exppoly import Coef, differentiate, eval_complex, log_eval_grid, phase_rate_bound
from .ode import BoundaryZero, NumericError, integrate_ray

__all__ = [
    "Box",
    "Disc",
    "SectorRegion",
    "RayInterval",
    "ZeroLocation",
    "ZeroCensus",
    "count_zeros_region",
    "count_zeros_real_ray",
]


# ---------------------------------------------------------------------------
# regions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Box:
    x0: float
    x1: float
    y0: float
    y1: float

    def contains(self, z: complex) -> bool:
        return self.x0 <= z.real <= self.x1 and self.y0 <= z.imag <= self.y1

    @property
    def diameter(self) -> float:
        return math.hypot(self.x1 - self.x0, self.y1 - self.y0)

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.x0 + self.x1), 0.5 * (self.y0 + self.y1))

    def corners(self):
        return [complex(self.x0, self.y0), complex(self.x1, self.y0),
                complex(self.x1, self.y1), complex(self.x0, self.y1)]

    def grown(self, d: float) -> "Box":
        return Box(self.x0 - d, self.x1 + d, self.y0 - d, self.y1 + d)

    # split fractions are irrational-ish so that zeros at nice coordinates
    # (multiples of pi, rational points) do not land on subdivision edges
    _SPLIT = 0.5 + 0.013793103448275862

    def split(self):
        cx = self.x0 + (self.x1 - self.x0) * self._SPLIT
        cy = self.y0 + (self.y1 - self.y0) * self._SPLIT
        return [Box(self.x0, cx, self.y0, cy), Box(cx, self.x1, self.y0, cy),
                Box(self.x0, cx, cy, self.y1), Box(cx, self.x1, cy, self.y1)]


@dataclass(frozen=True)
class Disc:
    center: complex
    radius: float

    def contains(self, z: complex) -> bool:
        return abs(z - self.center) <= self.radius

    def bounding_box(self) -> Box:
        c, r = self.center, self.radius
        return Box(c.real - r, c.real + r, c.imag - r, c.imag + r)


@dataclass(frozen=True)
class SectorRegion:
    alpha: float
    beta: float
    r0: float
    r1: float

    def contains(self, z: complex) -> bool:
        r = abs(z)
        if not self.r0 <= r <= self.r1:
            return False
        th = cmath.phase(z)
        for shift in (-math.tau, 0.0, math.tau):
            if self.alpha <= th + shift <= self.beta:
                return True
        return False

    def bounding_box(self) -> Box:
        ths = np.linspace(self.alpha, self.beta, 64)
        pts = [self.r1 * cmath.exp(1j * t) for t in ths]
        pts += [self.r0 * cmath.exp(1j * t) for t in ths]
        xs = [p.real for p in pts]
        ys = [p.imag for p in pts]
        return Box(min(xs), max(xs), min(ys), max(ys))


@dataclass(frozen=True)
class RayInterval:
    theta: float
    r0: float
    r1: float


Region = Union[Box, Disc, SectorRegion, RayInterval]


@dataclass(frozen=True)
class ZeroLocation:
    location: complex
    radius: float
    multiplicity: int = 1


@dataclass
class ZeroCensus:
    region: Region
    zeros: list
    count: int
    method: str
    complete: bool = True
    winding_residual: float = 0.0

    def count_within(self, r: float, distinct: bool = False) -> int:
        """Zeros with |z| <= r (argument-principle censuses carry locations)."""
        tot = 0
        for z in self.zeros:
            if abs(z.location) <= r:
                tot += 1 if distinct else z.multiplicity
        return tot


# ---------------------------------------------------------------------------
# boundary phase tracking for exact coefficients
# ---------------------------------------------------------------------------

class _Budget:
    def __init__(self, n: int):
        self.left = int(n)

    def spend(self, n: int) -> bool:
        self.left -= n
        return self.left >= 0


def _boundary_nodes(region) -> list:
    """Closed boundary as a list of parametric pieces (zfun over [0, 1])."""
    if isinstance(region, Box):
        cs = region.corners()
        return [(lambda t, a=cs[i], b=cs[(i + 1) % 4]: a + (b - a) * t) for i in range(4)]
    if isinstance(region, Disc):
        return [(lambda t, c=region.center, r=region.radius:
                 c + r * cmath.exp(1j * math.tau * t))]
    if isinstance(region, SectorRegion):
        a, b, r0, r1 = region.alpha, region.beta, region.r0, region.r1
        pieces = [lambda t: (r0 + (r1 - r0) * t) * cmath.exp(1j * a),
                  lambda t: r1 * cmath.exp(1j * (a + (b - a) * t)),
                  lambda t: (r1 + (r0 - r1) * t) * cmath.exp(1j * b)]
        if r0 > 0:
            pieces.append(lambda t: r0 * cmath.exp(1j * (b + (a - b) * t)))
        return pieces
    raise TypeError(f"unsupported region {region!r}")


def _piece_winding(a: Coef, zfun, budget: _Budget, floor_drop: float = 60.0):
    """Total phase increment of a along one boundary piece.

    Refinement triggers on phase steps >= pi/2 AND on log-magnitude steps
    >= 1: a zero passing close to the path always dips the magnitude, which
    de-aliases full-turn phase swings that the wrapped difference alone
    would miss.  The zero floor is relative to the median boundary level so
    that wide low plateaus (small h0 against a large exponential ridge) do
    not masquerade as zeros.
    """
    probe = np.array([zfun(t) for t in np.linspace(0.0, 1.0, 33)])
    length = float(np.sum(np.abs(np.diff(probe))))
    radius = float(np.max(np.abs(probe)))
    rate = phase_rate_bound(a, radius)
    n0 = int(min(max(33, rate * length / 0.8 + 1), 500_000))
    ts = list(np.linspace(0.0, 1.0, n0))
    zs = np.array([zfun(t) for t in ts])
    lm_arr, ph_arr = log_eval_grid(a, zs)
    if not budget.spend(len(ts)):
        raise _BudgetExhausted()
    lm = list(lm_arr)
    ph = list(ph_arr)
    finite = [x for x in lm if x > -math.inf]
    if not finite:
        raise BoundaryZero("boundary identically collapsed")
    floor = float(np.median(finite)) - floor_drop
    i = 0
    guard = 0
    while i < len(ts) - 1:
        if lm[i] == -math.inf or lm[i] < floor:
            raise BoundaryZero(f"boundary magnitude collapsed at t = {ts[i]}")
        dphi = math.remainder(ph[i + 1] - ph[i], math.tau)
        dlm = abs(lm[i + 1] - lm[i])
        if abs(dphi) < math.pi / 2 and dlm < 1.0:
            i += 1
            continue
        guard += 1
        if guard > 500_000:
            raise NumericError("boundary refinement budget exhausted", ts[i])
        if ts[i + 1] - ts[i] < 1e-13:
            raise BoundaryZero(f"unresolvable boundary feature at t = {ts[i]}")
        tm = 0.5 * (ts[i] + ts[i + 1])
        lmm, phm = log_eval_grid(a, np.array([zfun(tm)]))
        if not budget.spend(1):
            raise _BudgetExhausted()
        ts.insert(i + 1, tm)
        lm.insert(i + 1, float(lmm[0]))
        ph.insert(i + 1, float(phm[0]))
    if lm[-1] == -math.inf or lm[-1] < floor:
        raise BoundaryZero("boundary magnitude collapsed at endpoint")
    total = 0.0
    for k in range(len(ts) - 1):
        total += math.remainder(ph[k + 1] - ph[k], math.tau)
    return total


class _BudgetExhausted(Exception):
    pass


def _region_winding(a: Coef, region, budget: _Budget):
    total = 0.0
    for piece in _boundary_nodes(region):
        total += _piece_winding(a, piece, budget)
    w = total / math.tau
    return w


def _winding_with_perturbation(a: Coef, region, budget: _Budget, grow0: float):
    """Winding number, perturbing the region outward when a zero sits on it."""
    grow = 0.0
    for attempt in range(4):
        reg = region
        if grow and isinstance(region, Box):
            reg = region.grown(grow)
        elif grow and isinstance(region, Disc):
            reg = Disc(region.center, region.radius + grow)
        elif grow and isinstance(region, SectorRegion):
            reg = SectorRegion(region.alpha - grow / max(region.r1, 1.0),
                               region.beta + grow / max(region.r1, 1.0),
                               max(region.r0 - grow, 0.0), region.r1 + grow)
        try:
            w = _region_winding(a, reg, budget)
            return w, reg
        except BoundaryZero:
            grow = (grow or grow0) * 3.0
    raise BoundaryZero(f"zero pinned to the boundary of {region!r}")


def _newton_polish(a: Coef, da: Coef, z0: complex, box: Box):
    z = z0
    step = math.inf
    for _ in range(60):
        fv = eval_complex(a, z)
        dv = eval_complex(da, z)
        if dv == 0:
            return None
        dz = fv / dv
        z -= dz
        step = abs(dz)
        if abs(z - box.center) > 4 * box.diameter + 1e-9:
            return None
        if step < 1e-13 * max(1.0, abs(z)):
            return z, max(step, 1e-14)
    if step < 1e-9 * max(1.0, abs(z)):
        return z, step
    return None


def _grow_scale(region) -> float:
    if isinstance(region, Box):
        return max(1.0, region.diameter)
    if isinstance(region, Disc):
        return max(1.0, region.radius)
    if isinstance(region, SectorRegion):
        return max(1.0, region.r1)
    return 1.0


def _dedupe(target: Coef, zeros: list, bud: _Budget, scale: float) -> list:
    """Merge repeated findings of the same zero (boundary-straddling boxes)."""
    out: list = []
    for z in sorted(zeros, key=lambda w: w.radius):
        dup = None
        for o in out:
            if abs(o.location - z.location) <= 5e-6 * max(1.0, abs(o.location)):
                dup = o
                break
        if dup is None:
            out.append(z)
        elif z.multiplicity != dup.multiplicity:
            # conflicting multiplicities: ask a tight verification winding
            c = dup.location
            d = 5e-5
            box = Box(c.real - d, c.real + d * 1.07, c.imag - d, c.imag + d * 1.07)
            try:
                w, _ = _winding_with_perturbation(target, box, bud, scale)
                k = int(round(w))
                out[out.index(dup)] = ZeroLocation(dup.location, dup.radius, max(k, 1))
            except (BoundaryZero, _BudgetExhausted):
                pass
    return out


def count_zeros_region(target: Coef, region: Region, budget: int = 10 ** 6) -> ZeroCensus:
    """Argument-principle census of an exact coefficient's zeros in a region.

    The total count comes from the winding over the region boundary; zero
    locations come from quadtree subdivision of the bounding box, Newton
    polishing once a box isolates a simple zero.  Multiplicity > 1 windings
    that survive subdivision to radius 1e-6 are reported as one location
    carrying the multiplicity.
    """
    bud = _Budget(budget)
    scale = _grow_scale(region)
    try:
        w_total, _ = _winding_with_perturbation(target, region, bud, 1e-3 * scale)
    except _BudgetExhausted:
        return ZeroCensus(region, [], 0, "argument_principle", complete=False)
    residual = abs(w_total - round(w_total))
    total = int(round(w_total))

    root = region if isinstance(region, Box) else region.bounding_box()
    da = differentiate(target)
    zeros: list = []
    complete = True

    def recurse(box: Box):
        nonlocal complete
        try:
            w, used = _winding_with_perturbation(target, box, bud, 1e-3 * scale)
        except (_BudgetExhausted, BoundaryZero):
            complete = False
            return
        k = int(round(w))
        if abs(w - k) > 1e-3:
            complete = False
            return
        if k == 0:
            return
        if k == 1:
            polished = _newton_polish(target, da, box.center, box)
            if polished is not None:
                z, rad = polished
                if used.contains(z):
                    zeros.append(ZeroLocation(z, rad, 1))
                    return
        if box.diameter <= 2e-6:
            zeros.append(ZeroLocation(box.center, max(box.diameter / 2, 1e-6), k))
            return
        for sub in box.split():
            recurse(sub)

    recurse(root)
    zeros = _dedupe(target, zeros, bud, 1e-3 * scale)
    if not isinstance(region, Box):
        zeros = [z for z in zeros if region.contains(z.location)]
    located = sum(z.multiplicity for z in zeros)
    complete = complete and located == total
    return ZeroCensus(region, zeros, total, "argument_principle",
                      complete=complete, winding_residual=residual)


# ---------------------------------------------------------------------------
# sign changes on a real ray
# ---------------------------------------------------------------------------

def count_zeros_real_ray(a: Coef, theta: float, r1: float, init,
                         r0: float = 0.0, tol: float = 1e-10) -> ZeroCensus:
    """Count zeros of the real solution on [r0, r1) by dense sign changes.

    Requires the coefficient restricted to the ray to be real (checked by
    sampling); each bracketed sign change is refined by bisection to radius
    1e-9.  theta must be 0 or pi.
    """
    if not (abs(theta) < 1e-12 or abs(theta - math.pi) < 1e-12):
        raise ValueError("real-ray counting requires theta in {0, pi}")
    u = -1.0 if abs(theta - math.pi) < 1e-12 else 1.0
    for t in np.linspace(r0, r1, 33):
        v = eval_complex(a, u * t)
        if abs(v.imag) > 1e-10 * (abs(v) + 1.0):
            raise ValueError(f"coefficient is not real on the ray at t = {t}")
    init = (float(init[0]), float(init[1]))
    ray = integrate_ray(a, theta, r0, r1, init, tol)
    ps = ray.path

    def fval(t: float) -> float:
        f, _, _ = ps.eval(t)
        return f.real

    # dense grid: within each solver interval, resolve the local frequency
    ts = ps.node_ts()
    zeros = []
    for k in range(len(ts) - 1):
        t0, t1 = float(ts[k]), float(ts[k + 1])
        try:
            aval = abs(eval_complex(a, u * 0.5 * (t0 + t1)))
        except OverflowError:
            aval = math.inf
        omega = math.sqrt(max(aval, 1.0))
        nsub = max(2, min(int(omega * (t1 - t0) / 0.5) + 2, 4000))
        grid = np.linspace(t0, t1, nsub)
        vals = [fval(t) for t in grid]
        for i in range(len(grid) - 1):
            va, vb = vals[i], vals[i + 1]
            if va == 0.0:
                continue
            if va * vb < 0:
                lo_t, hi_t = float(grid[i]), float(grid[i + 1])
                flo = va
                while hi_t - lo_t > 1e-9:
                    mid = 0.5 * (lo_t + hi_t)
                    fm = fval(mid)
                    if fm == 0.0 or flo * fm < 0:
                        hi_t = mid
                    else:
                        lo_t = mid
                        flo = fm
                root = 0.5 * (lo_t + hi_t)
                if root >= r1 - 1e-12:
                    continue
                zeros.append(ZeroLocation(u * root, 1e-9, 1))
    return ZeroCensus(RayInterval(theta, r0, r1), zeros, len(zeros), "sign_change")

"""Sectorial analysis: negative-indicator sectors and solution zero censuses.

sector_report finds the maximal arcs where the indicator is negative (the
non-oscillation prediction: at most finitely many solution zeros in any
slightly squeezed such sector) and the dominant direction theta* where the
indicator peaks (where zeros of most solutions accumulate at the fastest
possible rate).

sector_zero_census realizes three solutions from canonical initial data at
the origin and counts their zeros over a polar grid via the argument
principle: each ray is integrated once, each arc connects neighboring rays,
and every cell's winding is the signed sum of its four boundary phase
increments.  Counts are reported per annulus so growth in r is visible.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exppoly import Coef, log_eval_grid, order_of
from .geometry import indicator_of
from .ode import BoundaryZero, PathSolution, integrate_arc, integrate_segment, phase_trace
from .zeros import SectorRegion, ZeroCensus

__all__ = [
    "AngularInterval",
    "SectorReport",
    "sector_report",
    "sector_zero_census",
]


@dataclass(frozen=True)
class AngularInterval:
    """Interval of directions in the [-pi, pi) convention.

    wraps = True means the interval crosses the seam at +-pi and is to be
    read as (lo, pi) united with [-pi, hi).
    """

    lo: float
    hi: float
    wraps: bool = False

    @property
    def width(self) -> float:
        return (self.hi - self.lo) if not self.wraps else (self.hi + math.tau - self.lo)

    def contains(self, theta: float) -> bool:
        if not self.wraps:
            return self.lo < theta < self.hi
        return theta > self.lo or theta < self.hi


@dataclass
class SectorReport:
    negative_sectors: list  # of AngularInterval
    dominant: float
    dominant_sector: tuple  # (theta* - eps, theta* + eps)
    hmax: float
    levin_range: tuple  # cos-bound h(theta) >= hmax cos(n (theta - theta*)) holds here
    epsilon: float


def _negative_phi_intervals(atoms, tol: float) -> list:
    """Maximal open intervals of phi in [-pi, pi) where max_j Re(mu_j e^{i phi}) < 0."""
    # breakpoints: argmax switches and zeros of the active sinusoid
    cands = {-math.pi}
    for i in range(len(atoms)):
        for j in range(i + 1, len(atoms)):
            w = atoms[i] - atoms[j]
            if abs(w) < 1e-15:
                continue
            for off in (math.pi / 2, -math.pi / 2):
                p = math.remainder(-cmath.phase(w) + off, math.tau)
                cands.add(-math.pi if p >= math.pi else p)
        if abs(atoms[i]) > 1e-15:
            for off in (math.pi / 2, -math.pi / 2):
                p = math.remainder(-cmath.phase(atoms[i]) + off, math.tau)
                cands.add(-math.pi if p >= math.pi else p)
    pts = sorted(cands)

    def h(phi):
        return max((m * cmath.exp(1j * phi)).real for m in atoms)

    neg = []
    for k in range(len(pts)):
        lo = pts[k]
        hi = pts[k + 1] if k + 1 < len(pts) else pts[0] + math.tau
        if hi - lo < 1e-14:
            continue
        if h(0.5 * (lo + hi)) < -tol:
            neg.append((lo, hi))
    # merge adjacent arcs (shared endpoint where h < 0 on both sides)
    merged = []
    for lo, hi in neg:
        if merged and abs(lo - merged[-1][1]) < 1e-12 and h(lo) < -tol:
            merged[-1] = (merged[-1][0], hi)
        else:
            merged.append((lo, hi))
    if len(merged) >= 2 and abs((merged[0][0] + math.pi)) < 1e-12 \
            and abs(merged[-1][1] - math.pi) < 1e-12 and h(-math.pi) < -tol:
        first = merged.pop(0)
        merged[-1] = (merged[-1][0], first[1] + math.tau)
    return merged


def sector_report(a: Coef, epsilon: float) -> SectorReport:
    """Negative-indicator sectors and the dominant direction of a coefficient."""
    n = order_of(a)
    if n < 1:
        raise ValueError("sector analysis requires a transcendental coefficient")
    if not 0 < epsilon < math.pi / (2 * n):
        raise ValueError("epsilon must lie in (0, pi/(2n))")
    ind = indicator_of(a)
    atoms = list(ind.atoms)
    scale = max(abs(m) for m in atoms)
    tol = 1e-12 * max(scale, 1.0)

    # dominant direction: the largest |atom| peaks at theta = -arg(mu)/n
    # (+ 2 pi k / n); ties break toward the direction closest to 0
    best = max(abs(m) for m in atoms)
    cands = []
    for m in atoms:
        if abs(m) >= best - tol and abs(m) > tol:
            base = -cmath.phase(m) / n
            for k in range(-n, n + 1):
                th = base + math.tau * k / n
                if -math.pi <= th < math.pi:
                    cands.append(th)
    if not cands:  # only the zero atom: h == 0 identically
        cands = [0.0]
    dominant = min(cands, key=lambda t: (abs(t), t))

    # negative sectors in phi, replicated n-fold in theta
    neg_phi = _negative_phi_intervals(atoms, tol)
    sectors = []
    for lo, hi in neg_phi:
        for k in range(n):
            tlo = lo / n + math.tau * k / n
            thi = hi / n + math.tau * k / n
            # wrap into [-pi, pi)
            shift = 0.0
            while tlo + shift >= math.pi:
                shift -= math.tau
            while tlo + shift < -math.pi:
                shift += math.tau
            tlo += shift
            thi += shift
            if thi <= math.pi + 1e-12:
                sectors.append(AngularInterval(tlo, min(thi, math.pi), False))
            else:
                sectors.append(AngularInterval(tlo, thi - math.tau, True))
    sectors.sort(key=lambda s: s.lo)
    hmax = max((m * cmath.exp(1j * n * dominant)).real for m in atoms)
    return SectorReport(sectors, dominant, (dominant - epsilon, dominant + epsilon),
                        hmax, (dominant - math.pi / n, dominant + math.pi / n), epsilon)


# ---------------------------------------------------------------------------
# zero census of realized solutions over a sector
# ---------------------------------------------------------------------------

def _wronskian(b1, b2) -> complex:
    return b1[0] * b2[1] - b1[1] * b2[0]


def _piece_delta(ps: PathSolution) -> float:
    _, ((lm, ph),) = phase_trace(ps, components=(0,))
    return float(ph[-1] - ph[0])


def sector_zero_census(a: Coef, sector, rmax: float,
                       bases: Sequence = ((1, 0), (0, 1), (1, -1)),
                       rmin: float = 1e-3, dr: float = 0.5,
                       dtheta: float = 0.35, tol: float = 1e-10) -> list:
    """Zero censuses for three solutions over the sector (alpha, beta).

    bases are initial (f(0), f'(0)) pairs at the origin; they must be
    pairwise independent.  Conclusions are basis-relative.  Returns one
    ZeroCensus per basis, counts broken down per annulus in
    census.region-order; zeros are not individually located.
    """
    alpha, beta = float(sector[0]), float(sector[1])
    if not beta > alpha:
        raise ValueError("empty sector")
    if len(bases) < 2:
        raise ValueError("need at least two independent bases")
    for i in range(len(bases)):
        for j in range(i + 1, len(bases)):
            b1, b2 = bases[i], bases[j]
            det = abs(_wronskian(b1, b2))
            n1 = math.hypot(abs(b1[0]), abs(b1[1]))
            n2 = math.hypot(abs(b2[0]), abs(b2[1]))
            if det < 1e-8 * max(n1 * n2, 1e-12):
                raise ValueError(f"bases {i} and {j} are numerically dependent")

    radii = [rmin]
    while radii[-1] < rmax:
        radii.append(min(radii[-1] + dr, rmax))

    # Arcs cross the growth ridge transversally, which amplifies state
    # errors like exp(r sqrt|A| dtheta); cap the per-arc WKB exponent so a
    # stray growing mode at tolerance level stays harmless.  Rays restart
    # every arc with accurate states, so per-arc bounds suffice.
    worst = 0.0
    th_probe = np.linspace(alpha, beta, 65)
    for r in radii:
        lm, _ = log_eval_grid(a, r * np.exp(1j * th_probe))
        amax = float(np.max(lm[np.isfinite(lm)])) if np.any(np.isfinite(lm)) else 0.0
        worst = max(worst, r * math.exp(min(max(amax, 0.0), 700.0) / 2.0))
    dtheta_req = min(dtheta, 14.0 / worst if worst > 0 else dtheta)
    m_ang = max(1, int(math.ceil((beta - alpha) / dtheta_req)))
    if m_ang > 512:
        raise ValueError(
            f"sector census needs {m_ang} angular slices (coefficient too "
            "large at rmax); reduce rmax")

    def grid_angles(wobble: float) -> list:
        # interior rays sit off the rational grid (solution zeros of real
        # equations cluster on symmetry rays like the real axis)
        out = [alpha]
        for k in range(1, m_ang):
            out.append(alpha + (beta - alpha) * (k + 0.1371 + wobble) / m_ang)
        out.append(beta)
        return out

    jitter = 0.0
    wobble = 0.0
    for attempt in range(5):
        try:
            return _census_attempt(a, alpha, beta, radii, grid_angles(wobble),
                                   bases, tol, radii[0])
        except BoundaryZero:
            jitter = (jitter or 1e-4 * dr) * 2.7
            wobble = (wobble or 0.0539) * 1.7
            radii = [r + jitter for r in radii[:-1]] + [radii[-1] + jitter]
    raise BoundaryZero("could not keep the polar grid clear of solution zeros")


def _unwound_phase(ps: PathSolution, ts, ph, t: float) -> float:
    """Unwound arg f at parameter t from the nearest traced node before it."""
    k = int(np.searchsorted(ts, t + 1e-15))
    k = min(max(k, 1), len(ts) - 1)
    t0 = float(ts[k - 1])
    f0, _, _ = ps.eval(t0)
    f1, _, _ = ps.eval(t)
    return float(ph[k - 1]) + cmath.phase(f1 / f0)


def _census_attempt(a, alpha, beta, radii, angles, bases, tol, rmin):
    # interior-ray contributions cancel exactly in each annulus row, so the
    # per-annulus winding only depends on the two edge rays and the summed
    # arc increments; arcs get a tighter tolerance since crossing the growth
    # ridge amplifies state errors by the capped WKB exponent
    tol_arc = min(tol, 1e-12)
    out = []
    for base in bases:
        rays = []
        for th in angles:
            u = cmath.exp(1j * th)
            seed = integrate_segment(a, 0.0, rmin * u, (complex(base[0]), complex(base[1])), tol)
            ps = _ray_path(a, th, rmin, radii[-1], seed.end_state, seed.logscale_end, tol)
            ts, ((lm, ph),) = phase_trace(ps, components=(0,))
            rays.append((ps, ts, ph))
        arc_total = np.zeros(len(radii))
        for ri, r in enumerate(radii):
            acc = 0.0
            for ai in range(len(angles) - 1):
                ps_ray = rays[ai][0]
                f, fp, ls = ps_ray.eval(r - rmin)
                arc = integrate_arc(a, 0.0, r, angles[ai], angles[ai + 1],
                                    (f, fp), tol_arc, ls)
                acc += _piece_delta(arc)
            arc_total[ri] = acc
        first = rays[0]
        last = rays[-1]
        phi_first = np.array([_unwound_phase(first[0], first[1], first[2], r - rmin)
                              for r in radii])
        phi_last = np.array([_unwound_phase(last[0], last[1], last[2], r - rmin)
                             for r in radii])
        per_annulus = []
        for ri in range(len(radii) - 1):
            w = (np.diff(phi_first)[ri] + arc_total[ri + 1]
                 - np.diff(phi_last)[ri] - arc_total[ri]) / math.tau
            if abs(w - round(w)) > 0.05:
                raise BoundaryZero(f"non-integral annulus winding {w}")
            per_annulus.append(int(round(w)))
        total = int(sum(per_annulus))
        census = ZeroCensus(SectorRegion(alpha, beta, rmin, radii[-1]), [],
                            total, "argument_principle")
        census.per_annulus = [(radii[i + 1], per_annulus[i])
                              for i in range(len(radii) - 1)]
        out.append(census)
    return out


def _ray_path(a, theta, r0, r1, y0, logscale0, tol) -> PathSolution:
    u = cmath.exp(1j * theta)
    return integrate_segment(a, r0 * u, r1 * u, y0, tol, logscale0)

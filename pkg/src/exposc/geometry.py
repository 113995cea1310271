"""Convex-hull data of conjugated frequencies and indicator-function geometry.

The indicator of an order-n tower is h(theta) = max_j Re(mu_j e^{i n theta})
over the active frequencies mu_j (plus 0 when the order-<n part is nonzero).
Because every function we compare is a finite max of sinusoids in
phi = n*theta, strict inequalities restricted to {domain > 0} can be decided
exactly: split the circle at the finitely many angles where some argmax
switches or the domain changes sign, then analyze one sinusoid per arc in
closed form.  A sampled Lipschitz certificate remains as the fallback for
mixed-degree comparisons.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .rationals import GaussianRational
from .exppoly import Coef, equals_zero, frequencies, h0_of, order_of

__all__ = [
    "HullReport",
    "hull",
    "Indicator",
    "IndicatorCombo",
    "indicator_of",
    "indicator_eval",
    "CertifiedComparison",
    "certify_strict",
    "CharacteristicPrediction",
    "characteristic_prediction",
    "conjugated_frequency_points",
]


# ---------------------------------------------------------------------------
# convex hull
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HullReport:
    """Convex hull of a finite point set.

    vertices are counterclockwise extreme points (no three collinear kept).
    A degenerate segment of length L has circumference 2L (the boundary is
    traversed down and back, matching the characteristic of e^z being r/pi);
    a single point has circumference 0.
    """

    points: tuple
    vertices: tuple
    circumference: float
    degenerate: bool

    @property
    def segment_length(self) -> float:
        """Plain boundary length: perimeter, or segment length (not doubled)."""
        if self.degenerate:
            return self.circumference / 2.0
        return self.circumference


def _hull_exact(pts: Sequence[GaussianRational]):
    uniq = sorted(set((p.re, p.im) for p in pts))
    if len(uniq) == 1:
        return [uniq[0]], True

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(uniq)
    upper = chain(reversed(uniq))
    verts = lower[:-1] + upper[:-1]
    if len(verts) < 3:
        return [uniq[0], uniq[-1]], True
    return verts, False


def _hull_float(pts: Sequence[complex], tol: float):
    uniq = sorted(set((z.real, z.imag) for z in pts))
    merged = []
    for p in uniq:
        if merged and abs(p[0] - merged[-1][0]) <= tol and abs(p[1] - merged[-1][1]) <= tol:
            continue
        merged.append(p)
    uniq = merged
    if len(uniq) == 1:
        return [uniq[0]], True

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= tol:
                out.pop()
            out.append(p)
        return out

    lower = chain(uniq)
    upper = chain(list(reversed(uniq)))
    verts = lower[:-1] + upper[:-1]
    if len(verts) < 3:
        # all collinear: take extremes along the dominant direction
        return [uniq[0], uniq[-1]], True
    return verts, False


def hull(points) -> HullReport:
    """Monotone-chain convex hull; exact predicates for Gaussian-rational input."""
    pts = list(points)
    if not pts:
        raise ValueError("hull requires at least one point")
    exact = all(isinstance(p, GaussianRational) for p in pts)
    if exact:
        verts, degenerate = _hull_exact(pts)
        vertices = tuple(complex(v[0], v[1]) for v in verts)
        shown = tuple(p.to_complex() for p in pts)
    else:
        zs = [complex(p) if not isinstance(p, GaussianRational) else p.to_complex() for p in pts]
        scale = max(1.0, max(abs(z) for z in zs))
        verts, degenerate = _hull_float(zs, 1e-12 * scale * scale)
        vertices = tuple(complex(v[0], v[1]) for v in verts)
        shown = tuple(zs)
    if len(vertices) == 1:
        circ = 0.0
    elif degenerate:
        circ = 2.0 * abs(vertices[1] - vertices[0])
    else:
        circ = sum(abs(vertices[(i + 1) % len(vertices)] - vertices[i])
                   for i in range(len(vertices)))
    return HullReport(shown, vertices, circ, degenerate)


def conjugated_frequency_points(a: Coef, include_zero: bool):
    """W = {conj(zeta_j)} as exact points; optionally united with {0}."""
    pts = [f.conjugate() for f in frequencies(a)]
    if include_zero:
        pts.append(GaussianRational.of(0))
    return pts


# ---------------------------------------------------------------------------
# indicator functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Indicator:
    """h(theta) = max_j Re(atom_j e^{i*degree*theta}); Lipschitz constant
    degree*max|atom| certifies grid comparisons."""

    degree: int
    atoms: tuple
    lipschitz: float

    def __call__(self, theta):
        return indicator_eval(self, theta)


def indicator_of(a: Coef) -> Indicator:
    if equals_zero(a):
        raise ValueError("indicator of the zero function is undefined")
    n = order_of(a)
    if n < 1:
        raise ValueError("indicator requires exponential order >= 1 (got a polynomial)")
    atoms = [f.to_complex() for f in frequencies(a)]
    if not equals_zero(h0_of(a)):
        atoms.append(0j)
    lip = n * max(abs(m) for m in atoms)
    return Indicator(n, tuple(atoms), lip)


def indicator_eval(h: Indicator, theta):
    """max_j Re(mu_j e^{i n theta}); works on scalars and numpy arrays."""
    th = np.asarray(theta, dtype=float)
    rot = np.exp(1j * h.degree * th)
    vals = np.max([np.real(m * rot) for m in h.atoms], axis=0)
    if np.ndim(theta) == 0:
        return float(vals)
    return vals


@dataclass(frozen=True)
class IndicatorCombo:
    """Affine combination sum_i weight_i * h_i(theta) + constant."""

    parts: tuple  # of (float weight, Indicator)
    constant: float = 0.0

    @staticmethod
    def of(x) -> "IndicatorCombo":
        if isinstance(x, IndicatorCombo):
            return x
        if isinstance(x, Indicator):
            return IndicatorCombo(((1.0, x),))
        raise TypeError("expected Indicator or IndicatorCombo")

    def __call__(self, theta):
        th = np.asarray(theta, dtype=float)
        acc = np.full(th.shape, self.constant, dtype=float)
        for w, h in self.parts:
            acc = acc + w * indicator_eval(h, th)
        if np.ndim(theta) == 0:
            return float(acc)
        return acc

    @property
    def lipschitz(self) -> float:
        return sum(abs(w) * h.lipschitz for w, h in self.parts)

    @property
    def degrees(self) -> set:
        return {h.degree for _, h in self.parts}

    def scaled(self, k: float) -> "IndicatorCombo":
        return IndicatorCombo(tuple((k * w, h) for w, h in self.parts), k * self.constant)

    def minus(self, other: "IndicatorCombo") -> "IndicatorCombo":
        return IndicatorCombo(self.parts + other.scaled(-1.0).parts,
                              self.constant - other.constant)


@dataclass(frozen=True)
class CertifiedComparison:
    """Outcome of certify_strict.

    status 'proven' means the strict inequality holds on the whole domain;
    'disproven' carries a witness angle; 'undecided' only arises on the
    sampled fallback path.  samples counts arcs (exact path) or grid points.
    """

    status: str
    margin: float
    samples: int
    witness: Optional[float] = None


def _combo_eval_phi(combo: IndicatorCombo, phi: float) -> float:
    rot = cmath.exp(1j * phi)
    acc = combo.constant
    for w, h in combo.parts:
        acc += w * max((m * rot).real for m in h.atoms)
    return acc


def _active_vector_phi(combo: IndicatorCombo, phi: float):
    """On an arc where no argmax switches, combo(phi) = Re(W e^{i phi}) + K."""
    rot = cmath.exp(1j * phi)
    w_total = 0j
    for w, h in combo.parts:
        best = max(h.atoms, key=lambda m: (m * rot).real)
        w_total += w * best
    return w_total, combo.constant


def _breakpoints(combos) -> list:
    phis = {-math.pi}
    for combo in combos:
        if combo is None:
            continue
        for _, h in combo.parts:
            atoms = h.atoms
            for i in range(len(atoms)):
                for j in range(i + 1, len(atoms)):
                    w = atoms[i] - atoms[j]
                    if abs(w) < 1e-15:
                        continue
                    base = -cmath.phase(w)
                    for off in (math.pi / 2, -math.pi / 2):
                        phi = math.remainder(base + off, math.tau)
                        phis.add(-math.pi if phi >= math.pi else phi)
    return sorted(phis)


def _sinusoid_zeros_in(wv: complex, k: float, lo: float, hi: float) -> list:
    """Zeros of Re(w e^{i phi}) + k on (lo, hi)."""
    r = abs(wv)
    if r < 1e-300:
        return []
    c = -k / r
    if abs(c) > 1:
        return []
    a = math.acos(max(-1.0, min(1.0, c)))
    base = -cmath.phase(wv)
    out = []
    for cand in (base + a, base - a):
        for shift in (-math.tau, 0.0, math.tau):
            phi = cand + shift
            if lo + 1e-13 < phi < hi - 1e-13:
                out.append(phi)
    return sorted(out)


def _certify_exact(g: IndicatorCombo, domain: Optional[IndicatorCombo], n: int):
    """Decide g > 0 on {domain > 0} (or everywhere) exactly, arc by arc."""
    scale_g = sum(abs(w) * max(abs(m) for m in h.atoms) for w, h in g.parts)
    scale_g += abs(g.constant) + 1.0
    tol = 1e-9 * scale_g
    if domain is not None:
        scale_d = sum(abs(w) * max(abs(m) for m in h.atoms) for w, h in domain.parts)
        tol_d = 1e-9 * (scale_d + abs(domain.constant) + 1.0)

    pts = _breakpoints([g, domain])
    # refine with domain sign changes so the domain has one sign per arc
    if domain is not None:
        extra = []
        m = len(pts)
        for i in range(m):
            lo = pts[i]
            hi = pts[(i + 1) % m] if i + 1 < m else pts[0] + math.tau
            mid = 0.5 * (lo + hi)
            wv, k = _active_vector_phi(domain, mid)
            extra.extend(_sinusoid_zeros_in(wv, k, lo, hi))
        for phi in extra:
            pts.append(math.remainder(phi, math.tau))
        pts = sorted({-math.pi if p >= math.pi - 1e-15 else p for p in pts})

    arcs = 0
    margin = math.inf
    for i in range(len(pts)):
        lo = pts[i]
        hi = pts[i + 1] if i + 1 < len(pts) else pts[0] + math.tau
        if hi - lo < 1e-13:
            continue
        mid = 0.5 * (lo + hi)
        if domain is not None and _combo_eval_phi(domain, mid) <= tol_d:
            continue
        arcs += 1
        wv, k = _active_vector_phi(g, mid)
        r = abs(wv)
        if r <= tol and abs(k) <= tol:
            # identically zero on an in-domain arc: strictness fails
            return CertifiedComparison("disproven", 0.0, arcs, witness=mid / n)
        # candidate minima over the closed arc: endpoints + interior critical pt
        cands = [(lo, r * math.cos(lo + cmath.phase(wv)) + k),
                 (hi, r * math.cos(hi + cmath.phase(wv)) + k)]
        phi_min = math.pi - cmath.phase(wv)
        for shift in (-math.tau, 0.0, math.tau):
            p = phi_min + shift
            if lo < p < hi:
                cands.append((p, -r + k))
        phi_star, m_star = min(cands, key=lambda t: t[1])
        if m_star < -tol:
            return CertifiedComparison("disproven", m_star, arcs,
                                       witness=math.remainder(phi_star, math.tau) / n)
        if m_star <= tol:
            interior = lo + 1e-12 < phi_star < hi - 1e-12
            if interior:
                return CertifiedComparison("disproven", 0.0, arcs,
                                           witness=math.remainder(phi_star, math.tau) / n)
            # zero limit at an arc endpoint: allowed only where the domain
            # closes (the endpoint itself is outside {domain > 0})
            at = math.remainder(phi_star, math.tau)
            if domain is None or _combo_eval_phi(domain, at) > tol_d:
                return CertifiedComparison("disproven", 0.0, arcs, witness=at / n)
            margin = min(margin, _combo_eval_phi(g, mid))
        else:
            margin = min(margin, m_star)
    if arcs == 0:
        # vacuous hypothesis: nothing satisfies domain > 0
        return CertifiedComparison("proven", math.inf, 0)
    return CertifiedComparison("proven", margin, arcs)


def _certify_sampled(g: IndicatorCombo, domain: Optional[IndicatorCombo],
                     samples: int, refine: int):
    n_ref = 0
    N = samples
    while True:
        th = np.linspace(-math.pi, math.pi, N, endpoint=False)
        delta = math.tau / N
        gv = g(th)
        if domain is None:
            mask = np.ones(N, dtype=bool)
        else:
            mask = domain(th) > 0
        if not np.any(mask):
            return CertifiedComparison("proven", math.inf, N)
        lim = g.lipschitz * delta
        m = float(np.min(gv[mask]))
        if m > lim:
            return CertifiedComparison("proven", m, N)
        if m <= -lim:
            w = float(th[mask][int(np.argmin(gv[mask]))])
            return CertifiedComparison("disproven", m, N, witness=w)
        if n_ref >= 1:
            return CertifiedComparison("undecided", m, N)
        n_ref += 1
        N *= refine


def certify_strict(lhs, rhs=None, domain=None, samples: int = 4096,
                   refine: int = 8) -> CertifiedComparison:
    """Certify lhs(theta) > rhs(theta) for every theta with domain(theta) > 0.

    lhs/rhs/domain are Indicator or IndicatorCombo values (rhs/domain may be
    None).  When every indicator involved shares one degree the decision is
    exact via arc decomposition; otherwise a Lipschitz-certified sampling
    pass runs with one refinement round.
    """
    g = IndicatorCombo.of(lhs)
    if rhs is not None:
        g = g.minus(IndicatorCombo.of(rhs))
    dom = IndicatorCombo.of(domain) if domain is not None else None
    degs = set(g.degrees)
    if dom is not None:
        degs |= dom.degrees
    if len(degs) == 1:
        return _certify_exact(g, dom, degs.pop())
    return _certify_sampled(g, dom, samples, refine)


# ---------------------------------------------------------------------------
# characteristic predictions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CharacteristicPrediction:
    """Leading coefficients of T(r) and N(r, 1/A) as multiples of r^n.

    t_coeff: T(r, A) ~ t_coeff * r^n; n_coeff present only when the
    order-<n part vanishes (then N(r, 1/A) ~ n_coeff * r^n); the proximity
    class of 1/A is 'O(log r)' for a nonzero polynomial part, 'o(r^n)' for a
    transcendental part, 'N/A' when the part vanishes.
    """

    degree: int
    t_coeff: float
    n_coeff: Optional[float]
    m_inverse_class: str
    hull_w0: HullReport
    hull_w: HullReport


def characteristic_prediction(a: Coef) -> CharacteristicPrediction:
    if equals_zero(a):
        raise ValueError("characteristic of the zero coefficient is undefined")
    n = order_of(a)
    if n < 1:
        raise ValueError("coefficient must be transcendental (order >= 1)")
    w = hull(conjugated_frequency_points(a, include_zero=False))
    w0 = hull(conjugated_frequency_points(a, include_zero=True))
    h0 = h0_of(a)
    if equals_zero(h0):
        n_coeff: Optional[float] = w.circumference / math.tau
        m_class = "N/A"
    else:
        n_coeff = None
        m_class = "O(log r)" if order_of(h0) == 0 else "o(r^n)"
    return CharacteristicPrediction(n, w0.circumference / math.tau, n_coeff,
                                    m_class, w0, w)

"""Adaptive integration of f'' + A(z) f = 0 along paths in the plane.

Solutions grow like exp(exp(r)), far beyond double range, so integration
proceeds in legs: whenever the state norm drifts a fixed log-distance from
its value at the start of the leg, the pair (f, f') is multiplied by a
common positive factor and the log of the accumulated factor is recorded.
Zeros, phases and sign changes are unaffected by positive rescaling.

Paths are parametrized by arc length t -> z(t); rays and circular arcs are
provided.  Phase traces along a path (continuous, unwound arguments) feed
the argument-principle zero counting.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp

from .exppoly import Coef, eval_complex

__all__ = [
    "NumericError",
    "BoundaryZero",
    "PathSolution",
    "RaySolution",
    "integrate_segment",
    "integrate_arc",
    "integrate_ray",
    "phase_trace",
]

LEG_LOG_BAND = 20.0  # rescale when the state norm drifts e^20 from leg start


class NumericError(RuntimeError):
    """Integration failed; carries the last good parameter value."""

    def __init__(self, message: str, last_t: float):
        super().__init__(f"{message} (last good t = {last_t:.6g})")
        self.last_t = last_t


class BoundaryZero(RuntimeError):
    """A tracked function appears to vanish on the path."""


@dataclass
class _Leg:
    t0: float
    t1: float
    sol: object  # scipy OdeSolution over the rescaled state
    logscale: float


@dataclass
class PathSolution:
    """Dense solution of the first-order system along one parametrized path."""

    zfun: Callable[[float], complex]
    t0: float
    t1: float
    legs: list
    logscale_end: float
    end_state: tuple  # rescaled (f, f')

    def eval(self, t: float):
        """(f_rescaled, f'_rescaled, logscale) at parameter t."""
        if not self.t0 - 1e-9 <= t <= self.t1 + 1e-9:
            raise ValueError(f"t = {t} outside [{self.t0}, {self.t1}]")
        for leg in self.legs:
            if t <= leg.t1 or leg is self.legs[-1]:
                y = leg.sol(min(max(t, leg.t0), leg.t1))
                return complex(y[0]), complex(y[1]), leg.logscale
        raise AssertionError("unreachable")

    def node_ts(self) -> np.ndarray:
        return np.unique(np.concatenate([np.asarray(leg.sol.ts) for leg in self.legs]))


def _integrate_path(a: Coef, zfun, dzfun, t0: float, t1: float, y0,
                    tol: float, logscale0: float = 0.0) -> PathSolution:
    if not tol > 0:
        raise ValueError("tol must be positive")
    if t1 <= t0:
        raise ValueError("need t0 < t1")

    def rhs(t, y):
        z = zfun(t)
        dz = dzfun(t)
        av = eval_complex(a, z)
        return [dz * y[1], -dz * av * y[0]]

    def hi(tt, yy):
        return math.log(abs(yy[0]) ** 2 + abs(yy[1]) ** 2 + 1e-300) - 2 * LEG_LOG_BAND

    def lo(tt, yy):
        return math.log(abs(yy[0]) ** 2 + abs(yy[1]) ** 2 + 1e-300) + 2 * LEG_LOG_BAND

    hi.terminal = True
    hi.direction = 1
    lo.terminal = True
    lo.direction = -1

    legs = []
    t = t0
    y = np.array([complex(y0[0]), complex(y0[1])], dtype=complex)
    logscale = logscale0
    nrm = float(np.max(np.abs(y)))
    if nrm == 0:
        raise ValueError("trivial initial state")
    y /= nrm
    logscale += math.log(nrm)

    while t < t1 - 1e-13 * max(1.0, abs(t1)):
        try:
            res = solve_ivp(rhs, (t, t1), y, method="DOP853", rtol=tol,
                            atol=tol * 1e-9, dense_output=True, events=(hi, lo))
        except OverflowError as exc:
            raise NumericError(f"coefficient overflow during integration: {exc}", t)
        if not res.success and res.status != 1:
            raise NumericError(f"solver failed: {res.message}", t)
        if float(res.t[-1]) <= t + 1e-15 * max(1.0, abs(t)):
            raise NumericError("step underflow (stiffness beyond budget)", t)
        legs.append(_Leg(t, float(res.t[-1]), res.sol, logscale))
        t = float(res.t[-1])
        y = np.asarray(res.y[:, -1], dtype=complex)
        if res.status == 1:  # a rescale event fired
            nrm = float(np.max(np.abs(y)))
            if nrm == 0:
                raise NumericError("state vanished identically", t)
            y = y / nrm
            logscale += math.log(nrm)
            if len(legs) > 50_000:
                raise NumericError("rescale budget exhausted (stiffness)", t)
    return PathSolution(zfun, t0, t1, legs, logscale, (complex(y[0]), complex(y[1])))


def integrate_segment(a: Coef, z_from: complex, z_to: complex, y0, tol: float,
                      logscale0: float = 0.0) -> PathSolution:
    """Integrate along the straight segment from z_from to z_to."""
    d = z_to - z_from
    L = abs(d)
    if L == 0:
        raise ValueError("degenerate segment")
    u = d / L
    return _integrate_path(a, lambda t: z_from + u * t, lambda t: u, 0.0, L, y0,
                           tol, logscale0)


def integrate_arc(a: Coef, center: complex, radius: float, phi0: float,
                  phi1: float, y0, tol: float, logscale0: float = 0.0) -> PathSolution:
    """Integrate along the arc center + radius e^{i phi} from phi0 to phi1.

    Parametrized by t in [0, radius * |phi1 - phi0|] (arc length); a
    decreasing angle is handled by flipping the angular direction.
    """
    span = phi1 - phi0
    if span == 0 or radius <= 0:
        raise ValueError("degenerate arc")
    sgn = 1.0 if span > 0 else -1.0

    def zf(t):
        return center + radius * cmath.exp(1j * (phi0 + sgn * t / radius))

    def dzf(t):
        return 1j * sgn * cmath.exp(1j * (phi0 + sgn * t / radius))

    return _integrate_path(a, zf, dzf, 0.0, radius * abs(span), y0, tol, logscale0)


# ---------------------------------------------------------------------------
# phase tracing and the ray front-end
# ---------------------------------------------------------------------------

def phase_trace(ps: PathSolution, components=(0,), max_step: float = math.pi / 2,
                rel_floor: float = 80.0):
    """Continuous (t, logmag, unwound phase) arrays along the path.

    Returns (ts, [… per component: (logmag, phase) …]).  Starts from the
    solver's own nodes and bisects until every component's phase increment
    between consecutive nodes is below max_step.  Raises BoundaryZero when a
    component magnitude collapses rel_floor below its running maximum (a
    zero on or hugging the path).
    """
    ts = list(float(t) for t in ps.node_ts())
    cache = {}

    def value(t):
        v = cache.get(t)
        if v is None:
            f, fp, ls = ps.eval(t)
            v = (f, fp, ls)
            cache[t] = v
        return v

    i = 0
    guard = 0
    while i < len(ts) - 1:
        t0, t1 = ts[i], ts[i + 1]
        v0, v1 = value(t0), value(t1)
        bad = False
        for c in components:
            a0, a1 = v0[c], v1[c]
            if a0 == 0 or a1 == 0:
                raise BoundaryZero(f"component {c} vanished near t in [{t0}, {t1}]")
            if abs(cmath.phase(a1 / a0)) >= max_step:
                bad = True
                break
        if not bad:
            i += 1
            continue
        guard += 1
        if guard > 2_000_000:
            raise NumericError("phase refinement budget exhausted", t0)
        if t1 - t0 < 1e-12 * max(1.0, abs(t1)):
            raise BoundaryZero(f"unresolvable phase jump near t = {t0}")
        ts.insert(i + 1, 0.5 * (t0 + t1))

    out_t = np.array(ts)
    traces = []
    for c in components:
        lm = np.empty(len(ts))
        ph = np.empty(len(ts))
        acc = 0.0
        prev = None
        peak = -math.inf
        for k, t in enumerate(ts):
            v = value(t)
            comp, ls = v[c], v[2]
            mag = abs(comp)
            lm[k] = (math.log(mag) + ls) if mag > 0 else -math.inf
            peak = max(peak, lm[k])
            if lm[k] < peak - rel_floor:
                raise BoundaryZero(f"magnitude collapsed at t = {t}")
            acc = cmath.phase(comp) if prev is None else acc + cmath.phase(comp / prev)
            ph[k] = acc
            prev = comp
        traces.append((lm, ph))
    return out_t, traces


@dataclass
class RaySolution:
    """Solution data along z = t e^{i theta}.

    nodes hold (t, logmag f, phase f, logmag f', phase f'); phases are
    continuous (unwound) along the ray; logmags include the accumulated
    rescale log, i.e. they are true log|f| values.
    """

    theta: float
    nodes: list
    rescale_log: float
    path: PathSolution = field(repr=False)

    def logmag_f(self, t: float) -> float:
        f, _, ls = self.path.eval(t)
        return (math.log(abs(f)) + ls) if f != 0 else -math.inf


def integrate_ray(a: Coef, theta: float, r0: float, r1: float, init,
                  tol: float = 1e-10) -> RaySolution:
    """Integrate f'' + A f = 0 along z = t e^{i theta} from t = r0 to r1."""
    if not r0 < r1:
        raise ValueError("need r0 < r1")
    u = cmath.exp(1j * theta)
    ps = _integrate_path(a, lambda t: t * u, lambda t: u, r0, r1, init, tol)
    try:
        ts, ((lm_f, ph_f), (lm_g, ph_g)) = phase_trace(ps, components=(0, 1))
    except BoundaryZero:
        # a zero sits essentially on the ray: keep solver nodes, no unwinding
        ts = ps.node_ts()
        lm_f = np.array([_safe_logmag(ps, t, 0) for t in ts])
        lm_g = np.array([_safe_logmag(ps, t, 1) for t in ts])
        ph_f = np.zeros_like(lm_f)
        ph_g = np.zeros_like(lm_f)
    nodes = [(float(ts[k]), float(lm_f[k]), float(ph_f[k]), float(lm_g[k]), float(ph_g[k]))
             for k in range(len(ts))]
    return RaySolution(theta, nodes, ps.logscale_end, ps)


def _safe_logmag(ps: PathSolution, t: float, component: int) -> float:
    f, fp, ls = ps.eval(t)
    v = f if component == 0 else fp
    return (math.log(abs(v)) + ls) if v != 0 else -math.inf

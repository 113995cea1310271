"""Conformal maps onto truncated sectors and their Schwarzians.

The composite map Phi = L o T takes the unit disc onto a truncated sector:
T maps the disc onto a lens-shaped domain through the point s in (0, 1) and
L(z) = e^{i phi} ((1+z)/(1-z))^gamma opens the lens into a sector of
aperture gamma*pi.  The univalence bound (1-|z|^2)^2 |S(z)| < 2 near the
rim is what limits solution zeros in sectors where the coefficient decays.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

__all__ = [
    "conformal_T",
    "conformal_T_prime",
    "conformal_L",
    "schwarzian_T",
    "schwarzian_L",
    "schwarzian_phi",
    "phi_bound_scan",
]


def _lens_constants(s: float):
    if not 0 < s < 1:
        raise ValueError("s must lie in (0, 1)")
    u = (1 + s) / 2
    t = (1 + math.sqrt(2)) * (1 - s) / 2
    return u, t


def conformal_T(z: complex, s: float) -> complex:
    """Disc -> lens through s: ((u+it) sqrt(1+z) + (u-it) sqrt(1-z)) / (sqrt(1+z) + sqrt(1-z))."""
    u, t = _lens_constants(s)
    p = cmath.sqrt(1 + z)
    q = cmath.sqrt(1 - z)
    return ((u + 1j * t) * p + (u - 1j * t) * q) / (p + q)


def conformal_T_prime(z: complex, s: float) -> complex:
    u, t = _lens_constants(s)
    p = cmath.sqrt(1 + z)
    q = cmath.sqrt(1 - z)
    num = (u + 1j * t) * p + (u - 1j * t) * q
    den = p + q
    dnum = (u + 1j * t) / (2 * p) - (u - 1j * t) / (2 * q)
    dden = 1 / (2 * p) - 1 / (2 * q)
    return (dnum * den - num * dden) / (den * den)


def conformal_L(z: complex, gamma: float, phi: float = 0.0) -> complex:
    """Lens -> sector: e^{i phi} ((1+z)/(1-z))^gamma."""
    if not 0 < gamma <= 1:
        raise ValueError("gamma must lie in (0, 1]")
    w = (1 + z) / (1 - z)
    return cmath.exp(1j * phi) * cmath.exp(gamma * cmath.log(w))


def schwarzian_T(z: complex) -> complex:
    """S_T(z) = 3 / (2 (1 - z^2)^2), independent of the lens constants."""
    return 1.5 / (1 - z * z) ** 2


def schwarzian_L(z: complex, gamma: float) -> complex:
    """S_L(z) = 2 (1 - gamma^2) / (1 - z^2)^2; vanishes for gamma = 1 (Moebius)."""
    if not 0 < gamma <= 1:
        raise ValueError("gamma must lie in (0, 1]")
    return 2.0 * (1 - gamma * gamma) / (1 - z * z) ** 2


def schwarzian_phi(z: complex, s: float, gamma: float) -> complex:
    """Composition rule: S_{L o T} = S_L(T) T'^2 + S_T."""
    tz = conformal_T(z, s)
    tp = conformal_T_prime(z, s)
    return schwarzian_L(tz, gamma) * tp * tp + schwarzian_T(z)


def phi_bound_scan(s: float, gamma: float, x0: float, samples: int = 10_000) -> float:
    """Max of (1 - |z|^2)^2 |S_Phi(z)| over the annulus x0 < |z| < 1.

    The proof of the sector non-oscillation result needs this below 2 near
    the rim; the scan confirms concrete parameter choices.
    """
    if not 0 < x0 < 1:
        raise ValueError("x0 must lie in (0, 1)")
    n = max(8, int(math.isqrt(samples)))
    best = 0.0
    radii = np.linspace(x0 + 1e-9, 1 - 1e-6, n)
    angles = np.linspace(-math.pi, math.pi, n, endpoint=False)
    for r in radii:
        w = (1 - r * r) ** 2
        for th in angles:
            z = r * cmath.exp(1j * th)
            val = w * abs(schwarzian_phi(z, s, gamma))
            if val > best:
                best = val
    return best

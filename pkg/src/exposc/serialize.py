"""JSON and CSV interchange.

Rationals travel as strings "p/q" (or "p"), complex scalars as [re, im]
pairs of such strings, so coefficient documents round-trip bit-exactly.
Floats in reports and CSV files are emitted with 17 significant digits.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Optional

from .rationals import GaussianRational
from .exppoly import Coef, ExpPoly, ExpTerm, Polynomial, equals_zero, normalize
from .geometry import CharacteristicPrediction, HullReport, Indicator
from .classifier import CITATIONS, Verdict
from .zeros import ZeroCensus
from .audits import AuditTable, SolutionSpec

__all__ = [
    "ParseError",
    "encode_rational",
    "decode_rational",
    "encode_scalar",
    "decode_scalar",
    "encode_coef",
    "decode_coef",
    "decode_coefficient_document",
    "encode_solution",
    "decode_solution",
    "encode_verdict",
    "encode_hull",
    "encode_indicator",
    "encode_census",
    "encode_prediction",
    "encode_audit_table",
    "f17",
    "write_csv",
]


class ParseError(ValueError):
    """Schema violation with a JSON-pointer-ish location."""

    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer}: {message}")
        self.pointer = pointer


def f17(x: float) -> str:
    return f"{x:.17g}"


# ---- scalars ---------------------------------------------------------------

def encode_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def decode_rational(s, pointer: str, allow_inexact: bool = False) -> Fraction:
    if isinstance(s, str):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(pointer, f"not a rational literal: {exc}")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, float):
        if not allow_inexact:
            raise ParseError(pointer,
                             "non-rational numeric literal; pass --allow-inexact "
                             "to accept floats (stored exactly as dyadic rationals)")
        return Fraction(s)
    raise ParseError(pointer, f"expected a rational string, got {type(s).__name__}")


def encode_scalar(g: GaussianRational) -> list:
    return [encode_rational(g.re), encode_rational(g.im)]


def decode_scalar(v, pointer: str, allow_inexact: bool = False) -> GaussianRational:
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise ParseError(pointer, "expected [re, im]")
    return GaussianRational(decode_rational(v[0], pointer + "/0", allow_inexact),
                            decode_rational(v[1], pointer + "/1", allow_inexact))


# ---- towers ----------------------------------------------------------------

def _encode_poly(p: Polynomial) -> dict:
    return {"poly": [encode_scalar(c) for c in p.coeffs]}


def _decode_poly(v, pointer: str, allow_inexact: bool) -> Polynomial:
    if not isinstance(v, list):
        raise ParseError(pointer, "expected a coefficient list")
    return Polynomial(tuple(decode_scalar(c, f"{pointer}/{k}", allow_inexact)
                            for k, c in enumerate(v)))


def encode_coef(a: Coef) -> dict:
    if isinstance(a, Polynomial):
        return _encode_poly(a)
    return {
        "order": a.order,
        "h0": encode_coef(a.h0),
        "terms": [{"frequency": encode_scalar(t.frequency),
                   "coefficient": encode_coef(t.coefficient)} for t in a.terms],
    }


def decode_coef(v, pointer: str, allow_inexact: bool = False) -> Coef:
    if not isinstance(v, dict):
        raise ParseError(pointer, "expected an object")
    if "poly" in v:
        return _decode_poly(v["poly"], pointer + "/poly", allow_inexact)
    if "order" not in v or "terms" not in v:
        raise ParseError(pointer, "expected either {'poly': ...} or "
                                  "{'order', 'h0', 'terms'}")
    h0 = decode_coef(v.get("h0", {"poly": []}), pointer + "/h0", allow_inexact)
    total: Coef = h0
    for k, t in enumerate(v["terms"]):
        tp = f"{pointer}/terms/{k}"
        if not isinstance(t, dict) or "frequency" not in t or "coefficient" not in t:
            raise ParseError(tp, "expected {'frequency', 'coefficient'}")
        freq = decode_scalar(t["frequency"], tp + "/frequency", allow_inexact)
        coef = decode_coef(t["coefficient"], tp + "/coefficient", allow_inexact)
        if freq.is_zero:
            raise ParseError(tp + "/frequency", "frequency must be nonzero")
        from .exppoly import E, add, order_of
        n = int(v["order"])
        if n < 1:
            raise ParseError(pointer + "/order", "order must be >= 1")
        if order_of(coef) >= n:
            raise ParseError(tp + "/coefficient", "coefficient order must be < order")
        total = add(total, E(freq, n=n, coefficient=coef))
    return total


def decode_coefficient_document(v, pointer: str, allow_inexact: bool = False) -> Coef:
    """Accept either the general form {'terms': [{'poly', 'exponent'}]} or a
    normalized tower document."""
    if not isinstance(v, dict):
        raise ParseError(pointer, "expected an object")
    if "terms" in v and v["terms"] and isinstance(v["terms"][0], dict) \
            and "exponent" in v["terms"][0]:
        pairs = []
        for k, t in enumerate(v["terms"]):
            tp = f"{pointer}/terms/{k}"
            if "poly" not in t or "exponent" not in t:
                raise ParseError(tp, "expected {'poly', 'exponent'}")
            p = _decode_poly(t["poly"], tp + "/poly", allow_inexact)
            q = _decode_poly(t["exponent"], tp + "/exponent", allow_inexact)
            pairs.append((p, q))
        try:
            return normalize(pairs)
        except ValueError as exc:
            raise ParseError(pointer, str(exc))
    return decode_coef(v, pointer, allow_inexact)


def encode_solution(spec: SolutionSpec) -> dict:
    out = {"pi": encode_coef(spec.pi), "gprime": encode_coef(spec.gprime)}
    if spec.g is not None:
        out["g"] = encode_coef(spec.g)
    if spec.label:
        out["label"] = spec.label
    return out


def decode_solution(v, pointer: str, allow_inexact: bool = False) -> SolutionSpec:
    if not isinstance(v, dict) or "pi" not in v:
        raise ParseError(pointer, "expected {'pi', 'g' or 'gprime'}")
    pi = decode_coefficient_document(v["pi"], pointer + "/pi", allow_inexact)
    g = None
    if "g" in v:
        g = decode_coefficient_document(v["g"], pointer + "/g", allow_inexact)
    if "gprime" in v:
        gp = decode_coefficient_document(v["gprime"], pointer + "/gprime", allow_inexact)
    elif g is not None:
        from .exppoly import differentiate
        gp = differentiate(g)
    else:
        raise ParseError(pointer, "need 'g' or 'gprime'")
    try:
        return SolutionSpec(pi, gp, g, label=str(v.get("label", "")))
    except ValueError as exc:
        raise ParseError(pointer, str(exc))


# ---- report pieces ---------------------------------------------------------

def encode_verdict(v: Verdict, labels: Optional[dict] = None) -> dict:
    label_map = dict(CITATIONS)
    if labels:
        label_map.update(labels)
    return {
        "conclusion": v.conclusion.value,
        "theorem": v.theorem,
        "citation": label_map[v.theorem],
        "n": v.n,
        "trace": [{"hypothesis": h, "value": val, "passed": ok}
                  for h, val, ok in v.trace],
    }


def encode_hull(h: HullReport) -> dict:
    return {
        "points": [[f17(p.real), f17(p.imag)] for p in h.points],
        "vertices": [[f17(p.real), f17(p.imag)] for p in h.vertices],
        "circumference": f17(h.circumference),
        "degenerate": h.degenerate,
    }


def encode_indicator(ind: Indicator) -> dict:
    return {
        "degree": ind.degree,
        "atoms": [[f17(m.real), f17(m.imag)] for m in ind.atoms],
        "lipschitz": f17(ind.lipschitz),
    }


def encode_census(c: ZeroCensus) -> dict:
    out = {
        "region": repr(c.region),
        "count": c.count,
        "method": c.method,
        "complete": c.complete,
        "winding_residual": f17(c.winding_residual),
        "zeros": [{"location": [f17(z.location.real), f17(z.location.imag)],
                   "radius": f17(z.radius), "multiplicity": z.multiplicity}
                  for z in c.zeros],
    }
    if hasattr(c, "per_annulus"):
        out["per_annulus"] = [[f17(r), n] for r, n in c.per_annulus]
    return out


def encode_prediction(p: CharacteristicPrediction) -> dict:
    return {
        "degree": p.degree,
        "t_coeff": f17(p.t_coeff),
        "n_coeff": None if p.n_coeff is None else f17(p.n_coeff),
        "m_inverse_class": p.m_inverse_class,
        "hull_w0": encode_hull(p.hull_w0),
        "hull_w": encode_hull(p.hull_w),
    }


def encode_audit_table(t: AuditTable) -> dict:
    return {
        "rows": [{"inequality": r.inequality, "r": f17(r.r), "lhs": f17(r.lhs),
                  "rhs": f17(r.rhs), "slack": f17(r.slack), "note": r.note}
                 for r in t.rows],
        "flags": dict(t.flags),
        "slopes": {k: [f17(a), f17(b)] for k, (a, b) in t.slopes.items()},
    }


def write_csv(path, header, rows):
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(f17(x) if isinstance(x, float) else str(x)
                              for x in row) + "\n")

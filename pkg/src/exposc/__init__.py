"""exposc: oscillation analysis of f'' + A(z) f = 0 for exponential-polynomial A."""

from .rationals import GaussianRational, I, ONE, ZERO
from .exppoly import (
    Coef,
    E,
    ExpPoly,
    ExpTerm,
    LogValue,
    Polynomial,
    X,
    add,
    as_scaled_exponential,
    differentiate,
    equals_zero,
    eval_complex,
    frequencies,
    h0_of,
    log_eval,
    log_eval_grid,
    max_coeff_abs,
    mul,
    neg,
    normalize,
    order_of,
    rotate,
    scale,
    sub,
    terms_of,
)

__version__ = "0.1.0"

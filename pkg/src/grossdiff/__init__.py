"""Arithmetic with grossone-based numerals and derivatives from one evaluation."""

from .core import (
    GROSSONE,
    ONE,
    ZERO,
    EvalConfig,
    GrossNumber,
    GrossPower,
    Ordering,
    add,
    approx_eq,
    coefficient,
    compare,
    div,
    from_finite,
    from_json,
    grossone_power,
    int_pow,
    mul,
    neg,
    normalize,
    parse_gross,
    sub,
    to_json,
    truncate,
)
from .deriv import (
    BaselineResult,
    DerivativeResult,
    RootResult,
    complex_step,
    differentiate,
    evaluate_at,
    fd_backward,
    fd_central,
    fd_forward,
    minimal_root_scan,
    newton_root,
    taylor_coefficients,
)
from .elem import g_cos, g_exp, g_ln, g_powf, g_recip, g_sin, g_sqrt, taylor_apply
from .errors import *  # noqa: F401,F403
from .expr import ComplexDomain, GrossDomain, NumericDomain, RealDomain, evaluate, parse, to_text

__version__ = "0.1.0"

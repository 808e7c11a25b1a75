"""Derivatives read off a single grossnumber evaluation, plus baselines.

Evaluating an expression at ``y + ①⁻¹`` with floor ``-k`` yields a numeral
``c0①⁰ c₋₁①⁻¹ ... c₋ₖ①⁻ᵏ`` whose digits are the Taylor coefficients of the
expression at ``y``; the j-th derivative is ``j! * c₋ⱼ``.

The finite-difference and complex-step estimates are here for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Optional

from . import core
from .core import GrossNumber
from .errors import DerivativeVanished, EvaluationError, OrderTooLarge, PreconditionViolated
from .expr import ComplexDomain, Expr, GrossDomain, NumericDomain, RealDomain, as_expr, evaluate

MAX_ORDER = 18  # 18! is the largest factorial exact in binary64

INFINITE_PART_DETECTED = "InfinitePartDetected"


@dataclass(frozen=True)
class DerivativeResult:
    y: float
    order: int
    coefficients: tuple[float, ...]
    derivatives: tuple[float, ...]
    warnings: tuple[str, ...] = ()
    value: Optional[GrossNumber] = field(default=None, compare=False, repr=False)

    def to_json(self) -> dict:
        return {
            "y": self.y,
            "order": self.order,
            "derivatives": list(self.derivatives),
            "coefficients": list(self.coefficients),
            "warnings": list(self.warnings),
        }


Method = Literal["forward", "backward", "central", "complex_step"]


@dataclass(frozen=True)
class BaselineResult:
    method: Method
    h: float
    estimate: float

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError(f"step h must be positive, got {self.h}")


@dataclass(frozen=True)
class RootResult:
    root: float
    iterations: int
    converged: bool


def gross_point(y: float, k: int) -> GrossNumber:
    """``y①⁰ 1①⁻¹`` with floor ``-k``."""
    return core.normalize([(0, y), (-1, 1.0)], -k)


def _check_order(k: int) -> None:
    if k < 0:
        raise ValueError(f"order must be >= 0, got {k}")
    if k > MAX_ORDER:
        raise OrderTooLarge(f"order {k} exceeds {MAX_ORDER}; j! would no longer be exact")


def evaluate_at(e: Expr | str, y: float, k: int, domain: NumericDomain | None = None) -> GrossNumber:
    """Evaluate ``e`` once at ``y + ①⁻¹`` keeping powers down to ``-k``."""
    _check_order(k)
    y = float(y)
    if not math.isfinite(y):
        raise ValueError(f"point must be finite, got {y}")
    if domain is None:
        domain = GrossDomain(-k)
    return evaluate(as_expr(e), gross_point(y, k), domain)


def differentiate(e: Expr | str, y: float, k: int, domain: NumericDomain | None = None) -> DerivativeResult:
    """``f(y), f'(y), ..., f^(k)(y)`` for the expression ``e``."""
    r = evaluate_at(e, y, k, domain)
    warnings = []
    if r.has_infinite_part:
        warnings.append(INFINITE_PART_DETECTED)
    coeffs = tuple(r.coefficient(-j) for j in range(k + 1))
    derivs = tuple(float(math.factorial(j)) * c for j, c in enumerate(coeffs))
    return DerivativeResult(float(y), k, coeffs, derivs, tuple(warnings), r)


def taylor_coefficients(e: Expr | str, y: float, k: int) -> list[float]:
    """Raw digits ``c0, c₋₁, ..., c₋ₖ`` of ``e(y + ①⁻¹)``."""
    return list(differentiate(e, y, k).coefficients)


# -- baselines ---------------------------------------------------------------

_REAL = RealDomain()
_COMPLEX = ComplexDomain()


def _f(e: Expr, v: float) -> float:
    return evaluate(e, v, _REAL)


def _check_step(h: float) -> None:
    if not h > 0:
        raise ValueError(f"step h must be positive, got {h}")


def fd_forward(e: Expr | str, y: float, h: float) -> BaselineResult:
    _check_step(h)
    e = as_expr(e)
    return BaselineResult("forward", h, (_f(e, y + h) - _f(e, y)) / h)


def fd_backward(e: Expr | str, y: float, h: float) -> BaselineResult:
    _check_step(h)
    e = as_expr(e)
    return BaselineResult("backward", h, (_f(e, y) - _f(e, y - h)) / h)


def fd_central(e: Expr | str, y: float, h: float) -> BaselineResult:
    _check_step(h)
    e = as_expr(e)
    return BaselineResult("central", h, (_f(e, y + h) - _f(e, y - h)) / (2 * h))


def complex_step(e: Expr | str, y: float, h: float) -> BaselineResult:
    _check_step(h)
    z = evaluate(as_expr(e), complex(y, h), _COMPLEX)
    return BaselineResult("complex_step", h, z.imag / h)


BASELINES = {
    "forward": fd_forward,
    "backward": fd_backward,
    "central": fd_central,
    "complex_step": complex_step,
}

H_GRID = tuple(10.0**-i for i in range(1, 16))


# -- root finding demos ----------------------------------------------------------


def _value_and_slope(e: Expr, x: float) -> tuple[float, float]:
    r = differentiate(e, x, 1)
    return r.derivatives[0], r.derivatives[1]


def newton_root(e: Expr | str, x0: float, tol: float = 1e-12, max_iter: int = 50) -> RootResult:
    """Plain Newton iteration with exact first derivatives.

    Raises :class:`DerivativeVanished` if the slope is zero at ``x0`` itself; a
    zero slope at a later iterate ends the run with ``converged=False``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    e = as_expr(e)
    x = float(x0)
    fx, dfx = _value_and_slope(e, x)
    it = 0
    if abs(fx) > tol and dfx == 0:
        raise DerivativeVanished(x)
    while abs(fx) > tol and it < max_iter:
        if dfx == 0:
            # Stalled on a flat iterate: report non-convergence.
            break
        x = x - fx / dfx
        it += 1
        fx, dfx = _value_and_slope(e, x)
        if not math.isfinite(x):
            break
    return RootResult(x, it, abs(fx) <= tol)


def _bracketed_newton(e: Expr, lo: float, hi: float, tol: float, max_iter: int) -> float:
    # Invariant: f(lo) > 0 >= f(hi). Newton steps leaving the bracket, or
    # failing to halve |f|, are replaced by bisection.
    x = 0.5 * (lo + hi)
    fx, dfx = _value_and_slope(e, x)
    for _ in range(max_iter):
        if abs(fx) <= tol:
            return x
        if fx > 0:
            lo = x
        else:
            hi = x
        step_ok = False
        if dfx != 0:
            xn = x - fx / dfx
            if lo < xn < hi:
                fn, dn = _value_and_slope(e, xn)
                if abs(fn) <= 0.5 * abs(fx):
                    x, fx, dfx = xn, fn, dn
                    step_ok = True
        if not step_ok:
            mid = 0.5 * (lo + hi)
            if mid in (lo, hi):
                return x
            x = mid
            fx, dfx = _value_and_slope(e, x)
    return x


def minimal_root_scan(
    e: Expr | str, a: float, b: float, n: int = 100, tol: float = 1e-12, max_iter: int = 200
) -> float | None:
    """Smallest root of ``e`` in ``[a, b]`` found by a uniform sign scan.

    Requires ``f(a) > 0``. Roots where f touches zero without changing sign,
    or pairs of roots inside one grid cell, are missed.
    """
    if not a < b:
        raise PreconditionViolated(f"need a < b, got [{a}, {b}]")
    if n < 2:
        raise PreconditionViolated(f"need n >= 2 grid intervals, got {n}")
    e = as_expr(e)
    fa = _f(e, a)
    if not fa > 0:
        raise PreconditionViolated(f"need f(a) > 0, got f({a}) = {fa}")
    prev = a
    for i in range(1, n + 1):
        x = b if i == n else a + (b - a) * i / n
        fx = _f(e, x)
        if fx == 0:
            return x
        if fx < 0:
            return _bracketed_newton(e, prev, x, tol, max_iter)
        prev = x
    return None


__all__ = [
    "BASELINES",
    "BaselineResult",
    "DerivativeResult",
    "EvaluationError",
    "H_GRID",
    "MAX_ORDER",
    "RootResult",
    "complex_step",
    "differentiate",
    "evaluate_at",
    "fd_backward",
    "fd_central",
    "fd_forward",
    "gross_point",
    "minimal_root_scan",
    "newton_root",
    "taylor_coefficients",
]

"""Elementary functions lifted to grossnumbers.

An argument ``x`` is split into its finite part ``c0`` and infinitesimal tail
``delta``; the result is ``sum_j a_j * delta**j`` where ``a_j = g^(j)(c0)/j!``
come from the scalar function and a closed-form recurrence. Only as many terms
as the argument's floor can hold are generated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .core import GrossNumber, add, from_finite, int_pow, mul
from .errors import (
    DomainError,
    InfinitePart,
    MissingTruncationFloor,
    NonIntegerInfinitesimal,
)

CoefficientRule = Callable[[float, int], "list[float]"]


@dataclass(frozen=True)
class SeriesSpec:
    """Taylor coefficients of a scalar function ``g``.

    ``rule(c0, k)`` returns ``[a_0, ..., a_k]`` with ``a_j = g^(j)(c0) / j!``.
    """

    name: str
    rule: CoefficientRule


def series_order(x: GrossNumber) -> int:
    """Highest power of the infinitesimal tail that survives x's floor."""
    tail = [p for p, _ in x.terms if p < 0]
    if not tail:
        return 0
    if x.floor is None:
        raise MissingTruncationFloor("elementary function of an infinitesimal needs a floor")
    return int(math.floor(x.floor / tail[0]))


def taylor_apply(spec: SeriesSpec, x: GrossNumber) -> GrossNumber:
    if x.has_infinite_part:
        raise InfinitePart(f"{spec.name}: argument {x} has an infinite part")
    c0 = x.finite_part()
    tail = tuple((p, d) for p, d in x.terms if p < 0)
    for p, _ in tail:
        if p.denominator != 1:
            raise NonIntegerInfinitesimal(f"{spec.name}: non-integer grosspower {p} in argument")
    k = series_order(x)
    coeffs = spec.rule(c0, k)
    for a in coeffs:
        if not math.isfinite(a):
            raise DomainError(spec.name, c0, "non-finite Taylor coefficient")
    if not tail:
        return from_finite(coeffs[0], x.floor)
    delta = GrossNumber(tail, x.floor)
    result = from_finite(coeffs[k], x.floor)
    for a in reversed(coeffs[:k]):
        result = add(mul(result, delta), from_finite(a, x.floor))
    return result


# -- coefficient rules -------------------------------------------------------


def _scaled(derivs: list[float]) -> list[float]:
    return [d / math.factorial(j) for j, d in enumerate(derivs)]


def _sin_rule(c0: float, k: int) -> list[float]:
    cycle = (math.sin(c0), math.cos(c0), -math.sin(c0), -math.cos(c0))
    return _scaled([cycle[j % 4] for j in range(k + 1)])


def _cos_rule(c0: float, k: int) -> list[float]:
    cycle = (math.cos(c0), -math.sin(c0), -math.cos(c0), math.sin(c0))
    return _scaled([cycle[j % 4] for j in range(k + 1)])


def _exp_rule(c0: float, k: int) -> list[float]:
    try:
        e = math.exp(c0)
    except OverflowError:
        raise DomainError("exp", c0, "overflow") from None
    return _scaled([e] * (k + 1))


def _ln_rule(c0: float, k: int) -> list[float]:
    out = [math.log(c0)]
    inv = 1.0 / c0
    pw = 1.0
    for j in range(1, k + 1):
        pw *= inv
        out.append((1.0 if j % 2 else -1.0) * pw / j)
    return out


def _recip_rule(c0: float, k: int) -> list[float]:
    inv = 1.0 / c0
    out = [inv]
    for _ in range(k):
        out.append(-out[-1] * inv)
    return out


def _binomial_rule(r: float, first: Callable[[float], float]) -> CoefficientRule:
    def rule(c0: float, k: int) -> list[float]:
        out = [first(c0)]
        for j in range(k):
            out.append(out[-1] * (r - j) / ((j + 1) * c0))
        return out

    return rule


SIN = SeriesSpec("sin", _sin_rule)
COS = SeriesSpec("cos", _cos_rule)
EXP = SeriesSpec("exp", _exp_rule)
LN = SeriesSpec("ln", _ln_rule)
RECIP = SeriesSpec("recip", _recip_rule)
SQRT = SeriesSpec("sqrt", _binomial_rule(0.5, math.sqrt))


def g_sin(x: GrossNumber) -> GrossNumber:
    return taylor_apply(SIN, x)


def g_cos(x: GrossNumber) -> GrossNumber:
    return taylor_apply(COS, x)


def g_exp(x: GrossNumber) -> GrossNumber:
    return taylor_apply(EXP, x)


def g_ln(x: GrossNumber) -> GrossNumber:
    c0 = x.finite_part()
    if not c0 > 0:
        raise DomainError("ln", c0, "finite part must be positive")
    return taylor_apply(LN, x)


def g_sqrt(x: GrossNumber) -> GrossNumber:
    c0 = x.finite_part()
    if not c0 > 0:
        raise DomainError("sqrt", c0, "finite part must be positive")
    return taylor_apply(SQRT, x)


def g_recip(x: GrossNumber) -> GrossNumber:
    c0 = x.finite_part()
    if c0 == 0:
        raise DomainError("recip", c0, "finite part must be nonzero")
    return taylor_apply(RECIP, x)


def g_powf(x: GrossNumber, r: float) -> GrossNumber:
    """``x**r`` for a real exponent ``r``."""
    r = float(r)
    c0 = x.finite_part()
    if r < 0 and c0 == 0:
        raise DomainError("pow", c0, f"zero finite part with negative exponent {r}")
    if r.is_integer() and (c0 == 0 or abs(r) <= 64):
        return int_pow(x, int(r))
    if c0 < 0 and not r.is_integer():
        raise DomainError("pow", c0, f"negative base with non-integer exponent {r}")
    if c0 == 0:
        raise DomainError("pow", c0, f"zero base with non-integer exponent {r}")
    if r == 0.5:
        return taylor_apply(SQRT, x)
    return taylor_apply(SeriesSpec("pow", _binomial_rule(r, lambda c: math.pow(c, r))), x)


FUNCTIONS: dict[str, Callable[[GrossNumber], GrossNumber]] = {
    "sin": g_sin,
    "cos": g_cos,
    "exp": g_exp,
    "ln": g_ln,
    "sqrt": g_sqrt,
}

"""Grossnumbers: numerals written positionally with the infinite radix ①.

A grossnumber is a finite sum of terms ``digit * ①**power``. Powers are exact
rationals (``int`` or :class:`fractions.Fraction`), digits are binary64 floats. Values are
immutable; every operation returns a new normalized number.

Each value may carry a truncation *floor*: terms with power below it are
discarded. Binary operations keep the larger (less permissive) of the two
floors, so an expression evaluated from a single floored input behaves like a
fixed window of powers ``0 .. -k``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import DivisionByZero, InvalidDigit, MissingTruncationFloor

# Exact rational: int when integral, Fraction otherwise.
GrossPower = Union[int, Fraction]
PowerLike = Union[int, str, Fraction, float]
Number = Union[int, float]

Term = tuple[GrossPower, float]


def as_power(p: PowerLike) -> GrossPower:
    """Coerce ``p`` to an exact grosspower.

    Integral powers are returned as ``int`` (the common case, and much faster
    to add than ``Fraction``); others as a ``Fraction`` in lowest terms. Floats
    are read through their shortest decimal repr, so ``-4.7`` becomes
    ``Fraction(-47, 10)`` rather than the nearest binary64 value.
    """
    if isinstance(p, bool):
        raise TypeError("bool is not a grosspower")
    if isinstance(p, int):
        return p
    if isinstance(p, Fraction):
        return p.numerator if p.denominator == 1 else p
    if isinstance(p, float):
        if not math.isfinite(p):
            raise ValueError(f"grosspower must be finite, got {p!r}")
        return as_power(Fraction(repr(p)))
    if isinstance(p, str):
        return as_power(Fraction(p.strip()))
    raise TypeError(f"cannot use {type(p).__name__} as a grosspower")


def _max_floor(a: GrossPower | None, b: GrossPower | None) -> GrossPower | None:
    if a is None:
        return b
    if b is None:
        return a
    return a if a >= b else b


def _from_raw(raw: Iterable[Term], floor: GrossPower | None) -> GrossNumber:
    # Internal constructor: powers are already canonical.
    groups: dict[GrossPower, list[float]] = {}
    for p, d in raw:
        if not math.isfinite(d):
            raise InvalidDigit(f"non-finite grossdigit {d!r} at power {p}")
        if floor is not None and p < floor:
            continue
        groups.setdefault(p, []).append(d)
    terms = []
    for p in sorted(groups, reverse=True):
        ds = groups[p]
        if len(ds) == 1:
            s = ds[0]
        else:
            # fsum is exactly rounded, so the result is independent of the
            # order the contributions arrived in (a*b == b*a bit for bit).
            try:
                s = math.fsum(ds)
            except OverflowError:
                raise InvalidDigit(f"grossdigit overflow at power {p}") from None
        if s != 0.0:
            if type(p) is Fraction and p.denominator == 1:
                p = p.numerator
            terms.append((p, s))
    return GrossNumber(tuple(terms), floor)


def normalize(raw_terms: Iterable[tuple[PowerLike, Number]], floor: PowerLike | None = None) -> GrossNumber:
    """Build a grossnumber from arbitrary ``(power, digit)`` pairs.

    Digits at equal powers are summed, exact zeros dropped, terms sorted by
    decreasing power and everything below ``floor`` discarded. Zero digits are
    only removed when they are exactly ``0.0``; there is no epsilon snapping.
    """
    fl = None if floor is None else as_power(floor)
    raw = []
    for p, d in raw_terms:
        d = float(d)
        if not math.isfinite(d):
            raise InvalidDigit(f"non-finite grossdigit {d!r}")
        raw.append((as_power(p), d))
    return _from_raw(raw, fl)


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True, eq=False)
class GrossNumber:
    """A normalized grossnumber.

    ``terms`` holds ``(power, digit)`` pairs with strictly decreasing powers and
    nonzero finite digits; the empty tuple is zero. Use :func:`normalize`,
    :func:`from_finite` or :func:`grossone_power` rather than calling the
    constructor with unnormalized data.
    """

    terms: tuple[Term, ...] = ()
    floor: GrossPower | None = None

    # -- inspection ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def leading_power(self) -> GrossPower | None:
        return self.terms[0][0] if self.terms else None

    @property
    def leading_digit(self) -> float:
        return self.terms[0][1] if self.terms else 0.0

    @property
    def is_finite(self) -> bool:
        """True when the number has no infinite and no infinitesimal part."""
        return all(p == 0 for p, _ in self.terms)

    @property
    def has_infinite_part(self) -> bool:
        return bool(self.terms) and self.terms[0][0] > 0

    def coefficient(self, p: PowerLike) -> float:
        return coefficient(self, p)

    def finite_part(self) -> float:
        return coefficient(self, 0)

    def powers(self) -> list[GrossPower]:
        return [p for p, _ in self.terms]

    def digits(self) -> list[float]:
        return [d for _, d in self.terms]

    def max_digit(self) -> float:
        return max((abs(d) for _, d in self.terms), default=0.0)

    def sign(self) -> int:
        if not self.terms:
            return 0
        return 1 if self.terms[0][1] > 0 else -1

    def truncate(self, floor: PowerLike) -> GrossNumber:
        return truncate(self, floor)

    def with_floor(self, floor: PowerLike | None) -> GrossNumber:
        """Replace the floor outright (may loosen it; dropped terms stay dropped)."""
        fl = None if floor is None else as_power(floor)
        return _from_raw(self.terms, fl)

    # -- arithmetic operators -----------------------------------------------

    def __neg__(self) -> GrossNumber:
        return neg(self)

    def __pos__(self) -> GrossNumber:
        return self

    def __add__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else add(self, o)

    def __radd__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else add(o, self)

    def __sub__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else sub(self, o)

    def __rsub__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else sub(o, self)

    def __mul__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else mul(self, o)

    def __rmul__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else mul(o, self)

    def __truediv__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else div(self, o)

    def __rtruediv__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else div(o, self)

    def __pow__(self, n):
        if isinstance(n, int) and not isinstance(n, bool):
            return int_pow(self, n)
        return NotImplemented

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self) -> int:
        if len(self.terms) == 1 and self.terms[0][0] == 0:
            return hash(self.terms[0][1])
        if not self.terms:
            return hash(0.0)
        return hash(self.terms)

    def __lt__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else compare(self, o) < 0

    def __le__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else compare(self, o) <= 0

    def __gt__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else compare(self, o) > 0

    def __ge__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else compare(self, o) >= 0

    # -- text ----------------------------------------------------------------

    def to_text(self, digits: int = 17) -> str:
        return format_gross(self, digits)

    def __str__(self) -> str:
        return format_gross(self, 6)

    def __repr__(self) -> str:
        fl = "" if self.floor is None else f", floor={format_power(self.floor)}"
        return f"GrossNumber({format_gross(self, 17)!r}{fl})"

    def to_json(self) -> dict:
        return to_json(self)


def _coerce(x) -> GrossNumber | None:
    if isinstance(x, GrossNumber):
        return x
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return from_finite(float(x))
    return None


ZERO = GrossNumber()


def from_finite(v: Number, floor: PowerLike | None = None) -> GrossNumber:
    """Embed a finite real as ``v①⁰`` (zero becomes the empty numeral)."""
    v = float(v)
    if not math.isfinite(v):
        raise InvalidDigit(f"cannot embed non-finite value {v!r}")
    fl = None if floor is None else as_power(floor)
    if v == 0.0:
        return GrossNumber((), fl)
    if fl is not None and fl > 0:
        return GrossNumber((), fl)
    return GrossNumber(((0, v),), fl)


def grossone_power(p: PowerLike, floor: PowerLike | None = None) -> GrossNumber:
    """The unit ``1①^p``; ``grossone_power(-1)`` is the infinitesimal ①⁻¹."""
    return _from_raw([(as_power(p), 1.0)], None if floor is None else as_power(floor))


GROSSONE = grossone_power(1)
ONE = grossone_power(0)


def add(a: GrossNumber, b: GrossNumber) -> GrossNumber:
    return _from_raw(a.terms + b.terms, _max_floor(a.floor, b.floor))


def neg(a: GrossNumber) -> GrossNumber:
    return GrossNumber(tuple((p, -d) for p, d in a.terms), a.floor)


def sub(a: GrossNumber, b: GrossNumber) -> GrossNumber:
    return _from_raw(a.terms + tuple((p, -d) for p, d in b.terms), _max_floor(a.floor, b.floor))


def mul(a: GrossNumber, b: GrossNumber) -> GrossNumber:
    floor = _max_floor(a.floor, b.floor)
    raw = []
    for pa, da in a.terms:
        for pb, db in b.terms:
            p = pa + pb
            if floor is not None and p < floor:
                break  # b's powers only decrease from here
            raw.append((p, da * db))
    return _from_raw(raw, floor)


def div(a: GrossNumber, b: GrossNumber, floor: PowerLike | None = None) -> GrossNumber:
    """Long division of ``a`` by ``b`` keeping quotient powers ``>= floor``.

    The effective floor is the largest of ``floor`` and the operand floors.
    Without any floor only a single-term divisor is accepted, since that is
    the only case guaranteed to terminate.
    """
    if not b.terms:
        raise DivisionByZero("division by the zero grossnumber")
    fl = _max_floor(None if floor is None else as_power(floor), _max_floor(a.floor, b.floor))
    lead_p, lead_d = b.terms[0]
    if len(b.terms) == 1:
        return _from_raw([(p - lead_p, d / lead_d) for p, d in a.terms], fl)
    if fl is None:
        raise MissingTruncationFloor("division by a multi-term grossnumber needs a floor")

    rest = b.terms[1:]
    # Remainder terms below this power can no longer reach a quotient power >= fl.
    stop = fl + lead_p
    rem = _from_raw(a.terms, stop).terms
    quotient = []
    while rem:
        p, d = rem[0]
        qp = p - lead_p
        if qp < fl:
            break
        qd = d / lead_d
        if not math.isfinite(qd):
            raise InvalidDigit(f"non-finite quotient digit at power {qp}")
        quotient.append((qp, qd))
        # The leading remainder term is removed outright rather than by
        # subtraction, which need not cancel exactly in floating point.
        raw = list(rem[1:])
        for pr, dr in rest:
            raw.append((qp + pr, -qd * dr))
        rem = _from_raw(raw, stop).terms
    return _from_raw(quotient, fl)


def int_pow(a: GrossNumber, n: int, floor: PowerLike | None = None) -> GrossNumber:
    """``a**n`` by binary exponentiation; negative ``n`` divides into one.

    Every product is truncated at the floor. For ``a`` with positive powers
    this can differ from exact ``a**n`` near the floor, since dropped terms
    would have been lifted back up by later factors.
    """
    if n < 0:
        if a.is_zero:
            raise DivisionByZero("zero raised to a negative power")
        return div(from_finite(1.0, a.floor), int_pow(a, -n), floor)
    if n == 0:
        return from_finite(1.0, a.floor)
    result = None
    base = a
    while True:
        if n & 1:
            result = base if result is None else mul(result, base)
        n >>= 1
        if not n:
            return result
        base = mul(base, base)


def compare(a: GrossNumber, b: GrossNumber) -> Ordering:
    """Sign of ``a - b``: decided by the highest power whose digits differ."""
    da = dict(a.terms)
    db = dict(b.terms)
    for p in sorted(da.keys() | db.keys(), reverse=True):
        x = da.get(p, 0.0)
        y = db.get(p, 0.0)
        if x != y:
            return Ordering.GREATER if x > y else Ordering.LESS
    return Ordering.EQUAL


def coefficient(a: GrossNumber, p: PowerLike) -> float:
    p = as_power(p)
    for q, d in a.terms:
        if q == p:
            return d
        if q < p:
            break
    return 0.0


def truncate(a: GrossNumber, floor: PowerLike) -> GrossNumber:
    return _from_raw(a.terms, _max_floor(as_power(floor), a.floor))


def approx_eq(a: GrossNumber, b: GrossNumber, tol: float, scale: float = 0.0) -> bool:
    """Per-coefficient closeness test, for tests and diagnostics only.

    Each power must satisfy ``|x - y| <= tol * max(|x|, |y|, scale)``. With the
    default ``scale=0`` this is a pure relative test; pass a digit magnitude as
    ``scale`` to tolerate absolute noise on small coefficients.
    """
    da = dict(a.terms)
    db = dict(b.terms)
    for p in da.keys() | db.keys():
        x = da.get(p, 0.0)
        y = db.get(p, 0.0)
        if abs(x - y) > tol * max(abs(x), abs(y), scale):
            return False
    return True


# -- text and JSON formats ---------------------------------------------------


def format_power(p: GrossPower) -> str:
    p = Fraction(p)
    return str(p.numerator) if p.denominator == 1 else f"{p.numerator}/{p.denominator}"


def format_digit(d: float, digits: int = 17) -> str:
    return format(d, f".{digits}g")


def format_gross(a: GrossNumber, digits: int = 17) -> str:
    """Render as ``digit@power`` terms joined by spaces, e.g. ``125@0 75@-1``."""
    if not a.terms:
        return "0"
    return " ".join(f"{format_digit(d, digits)}@{format_power(p)}" for p, d in a.terms)


def parse_gross(text: str, floor: PowerLike | None = None) -> GrossNumber:
    """Inverse of :func:`format_gross`. ``"0"`` and the empty string are zero."""
    tokens = text.split()
    if tokens == ["0"]:
        tokens = []
    raw = []
    for tok in tokens:
        digit, sep, power = tok.partition("@")
        if not sep:
            raise ValueError(f"bad grossnumber term {tok!r}: expected digit@power")
        try:
            raw.append((as_power(power), float(digit)))
        except ValueError:
            raise ValueError(f"bad grossnumber term {tok!r}") from None
    return normalize(raw, floor)


def to_json(a: GrossNumber) -> dict:
    return {
        "terms": [{"power": format_power(p), "digit": d} for p, d in a.terms],
        "floor": None if a.floor is None else format_power(a.floor),
    }


def from_json(obj: dict) -> GrossNumber:
    raw = [(as_power(str(t["power"])), float(t["digit"])) for t in obj["terms"]]
    floor = obj.get("floor")
    return normalize(raw, None if floor is None else str(floor))


# -- configuration -----------------------------------------------------------


@dataclass(frozen=True)
class EvalConfig:
    """Truncation order ``k`` (window of powers ``0 .. -k``) and the digit
    tolerance used by approximate comparisons."""

    order: int = 3
    digit_tol: float = 0.0

    def __post_init__(self):
        if self.order < 0:
            raise ValueError(f"order must be >= 0, got {self.order}")
        if not self.digit_tol >= 0:
            raise ValueError(f"digit_tol must be >= 0, got {self.digit_tol}")

    @property
    def floor(self) -> int:
        return -self.order

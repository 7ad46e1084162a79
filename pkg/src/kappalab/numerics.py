"""Scalar arithmetic shared by the three spaces.

Two numeric modes coexist in the library:

* exact mode -- values are ``fractions.Fraction``; every comparison is decided
  exactly.  The Sorgenfrey line and the double arrow space run in this mode
  end to end.
* float mode -- values are binary64; strict comparisons carry a one-sided
  margin ``EPS``.  Only the Niemytzki plane, whose distance formulas need
  square roots, is allowed to operate in this mode.

Mixing a Fraction and a float inside one comparison is an error; conversions
must be explicit (`to_float`).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Rational = Fraction
Scalar = Union[Fraction, float]

#: One-sided tolerance for strict comparisons between binary64 scalars.
EPS = 1e-9


class ModeMixError(TypeError):
    """Raised when exact and float scalars meet in a single comparison."""


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise ModeMixError(f"cannot coerce {value!r} to an exact rational")


def as_scalar(value) -> Scalar:
    """Normalize a numeric input: ints become Fractions, floats stay floats."""
    if isinstance(value, bool):
        raise ModeMixError("booleans are not scalars")
    if isinstance(value, (Fraction, float)):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise ModeMixError(f"{value!r} is not a scalar")


def is_exact(*values: Scalar) -> bool:
    """True when every value is an exact rational."""
    return all(isinstance(v, Fraction) for v in values)


def same_mode(*values: Scalar) -> bool:
    return is_exact(*values) or all(isinstance(v, float) for v in values)


def check_same_mode(*values: Scalar) -> None:
    if not same_mode(*values):
        raise ModeMixError(f"mixed exact/float scalars: {values!r}")


def to_float(value: Scalar) -> float:
    return float(value)


def lt(a: Scalar, b: Scalar) -> bool:
    """Strict a < b: exact for rationals, margin EPS for floats."""
    if is_exact(a, b):
        return a < b
    return float(a) < float(b) - EPS


def le(a: Scalar, b: Scalar) -> bool:
    """a <= b: exact for rationals, EPS slack for floats."""
    if is_exact(a, b):
        return a <= b
    return float(a) <= float(b) + EPS


def eq(a: Scalar, b: Scalar) -> bool:
    if is_exact(a, b):
        return a == b
    return abs(float(a) - float(b)) <= EPS


def is_zero(a: Scalar) -> bool:
    return eq(a, Fraction(0) if isinstance(a, Fraction) else 0.0)


def _isqrt_exact(n: int) -> int | None:
    r = math.isqrt(n)
    return r if r * r == n else None


def sqrt_scalar(value: Scalar) -> Scalar:
    """Square root; stays exact when the rational is a perfect square."""
    if isinstance(value, Fraction):
        if value < 0:
            raise ValueError("sqrt of a negative scalar")
        num = _isqrt_exact(value.numerator)
        den = _isqrt_exact(value.denominator)
        if num is not None and den is not None:
            return Fraction(num, den)
        return math.sqrt(float(value))
    if value < 0:
        if value > -EPS:
            return 0.0
        raise ValueError("sqrt of a negative scalar")
    return math.sqrt(value)


def sq(value: Scalar) -> Scalar:
    return value * value

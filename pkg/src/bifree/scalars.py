"""Scalar kinds used throughout: exact rationals or plain floats.

Every table, series, measure, and model carries a single kind; kinds are
never mixed inside one value. Rational mode keeps all arithmetic exact,
float mode is for the eigendecomposition pipelines.
"""

from __future__ import annotations

import math
from fractions import Fraction

RATIONAL = "rational"
FLOAT = "float"
KINDS = (RATIONAL, FLOAT)


def check_kind(kind: str) -> str:
    if kind not in KINDS:
        raise ValueError(f"unknown scalar kind {kind!r}; expected one of {KINDS}")
    return kind


def coerce(value, kind: str):
    """Coerce a number (or 'p/q' string) into the given kind."""
    if kind == RATIONAL:
        return value if isinstance(value, Fraction) else Fraction(value)
    return float(value)


def zero(kind: str):
    return Fraction(0) if kind == RATIONAL else 0.0


def one(kind: str):
    return Fraction(1) if kind == RATIONAL else 1.0


def close(a, b, kind: str, tol: float = 1e-10) -> bool:
    """Exact equality for rationals, absolute tolerance for floats."""
    if kind == RATIONAL:
        return a == b
    return abs(a - b) <= tol


def as_float(x) -> float:
    return float(x)


def to_jsonable(x, kind: str):
    if kind == RATIONAL:
        return str(x)
    return float(x)


def from_jsonable(v, kind: str):
    if kind == RATIONAL:
        return Fraction(str(v))
    return float(v)


def sqrt_or_float(x):
    """Square root, exact when x is a perfect-square rational.

    Returns a Fraction for perfect squares, a float otherwise; negative
    input raises ValueError.
    """
    if isinstance(x, Fraction):
        if x < 0:
            raise ValueError("square root of a negative rational")
        p, q = x.numerator, x.denominator
        rp, rq = math.isqrt(p), math.isqrt(q)
        if rp * rp == p and rq * rq == q:
            return Fraction(rp, rq)
        return math.sqrt(p / q)
    if x < 0:
        raise ValueError("square root of a negative number")
    return math.sqrt(x)

"""Exact rational scalars.

All scalars are elements of sympy's ``QQ`` domain (gmpy2 ``mpq`` when
available, sympy's pure-Python ``PythonMPQ`` otherwise); both keep the
fraction reduced with a positive denominator.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any

from sympy import Rational as SympyRational
from sympy.polys.domains import QQ

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")

RationalLike = Any


def to_rational(value: RationalLike) -> Any:
    """Convert ``value`` to an element of QQ.

    Accepts ints, ``"p/q"`` strings, ``fractions.Fraction``, sympy Rationals
    and QQ elements.
    """
    if isinstance(value, QQ.dtype):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, SympyRational):
        return QQ(int(value.p), int(value.q))
    if isinstance(value, str):
        match = _RATIONAL_RE.match(value)
        if not match:
            raise ValueError(f"not a rational number: {value!r}")
        denominator = int(match.group(2)) if match.group(2) else 1
        if denominator == 0:
            raise ValueError(f"zero denominator in {value!r}")
        return QQ(int(match.group(1)), denominator)
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def format_rational(value: Any) -> str:
    """Render a rational as ``p/q`` (or ``p`` when integral)."""
    q = to_rational(value)
    numerator, denominator = int(q.numerator), int(q.denominator)
    if denominator == 1:
        return str(numerator)
    return f"{numerator}/{denominator}"


def ceil_rational(value: Any) -> int:
    q = to_rational(value)
    return -(-int(q.numerator) // int(q.denominator))


def floor_rational(value: Any) -> int:
    q = to_rational(value)
    return int(q.numerator) // int(q.denominator)

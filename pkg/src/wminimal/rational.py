"""Parsing and formatting of exact rationals."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Union

Rational = Union[int, Fraction]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"num/den"`` or an integer string. Floats are refused."""
    s = text.strip()
    if not s:
        raise ValueError("empty rational")
    if "." in s or "e" in s.lower():
        raise ValueError(f"refusing non-exact rational {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {text!r}") from exc


def format_rational(x: Rational) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def format_vector(v: Iterable[Rational]) -> list[str]:
    return [format_rational(c) for c in v]


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def common_denominator(values: Iterable[Fraction]) -> int:
    d = 1
    for v in values:
        d = lcm(d, Fraction(v).denominator)
    return d

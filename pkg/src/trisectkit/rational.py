"""Exact rational input/output: "p/q" strings only, never floats."""

from __future__ import annotations

import re
from fractions import Fraction

_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*([+-]?\d+))?\s*$")


def parse_rational(text) -> Fraction:
    if isinstance(text, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise ValueError(f"expected an exact rational 'p/q', got {type(text).__name__}")
    m = _RATIONAL.match(text)
    if not m:
        raise ValueError(f"not an exact rational 'p/q': {text!r}")
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"

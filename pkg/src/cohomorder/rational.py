"""Exact rationals: parsing and the "num/den" text form used in all outputs."""
from __future__ import annotations

import re
from fractions import Fraction

_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a Fraction. Decimal and float input is refused."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r}")
    m = _RAT_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def fmt(x: Fraction | int) -> str:
    """Render as ``"num/den"``, or a bare integer when the denominator is 1."""
    return str(Fraction(x))


def max_bits(values) -> int:
    """Largest numerator/denominator bit length among ``values``."""
    best = 0
    for v in values:
        v = Fraction(v)
        best = max(best, abs(v.numerator).bit_length(), v.denominator.bit_length())
    return best

"""Exact money: ``fractions.Fraction`` for finite values, ``math.inf`` as +inf."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

import numpy as np

from ._jit import INF as KERNEL_INF

Money = Union[Fraction, float]
INF = math.inf

# finite scaled totals must stay below this so sentinel sums cannot overflow
SCALE_LIMIT = 1 << 55


def parse_money(text) -> Fraction:
    """Parse ``"num/den"``, an integer string, an int or a Fraction."""
    if isinstance(text, Fraction):
        val = text
    elif isinstance(text, bool):
        raise ValueError(f"not a ratio: {text!r}")
    elif isinstance(text, int):
        val = Fraction(text)
    elif isinstance(text, str):
        s = text.strip()
        if not s or any(c in s for c in ".eE"):
            raise ValueError(f"not a ratio: {text!r}")
        val = Fraction(s)
    else:
        raise ValueError(f"not a ratio: {text!r}")
    return val


def format_money(value: Money) -> str:
    if value == INF:
        return "inf"
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def common_scale(values: Iterable[Fraction]) -> int:
    scale = 1
    for v in values:
        scale = math.lcm(scale, Fraction(v).denominator)
    return scale


def scaled(values: Iterable[Fraction], scale: int, pad: bool = True) -> np.ndarray:
    """Integer array ``values * scale``, 1-based (index 0 and T+1 are zero) when pad."""
    vals = [int(Fraction(v) * scale) for v in values]
    if pad:
        vals = [0] + vals + [0]
    return np.asarray(vals, dtype=np.int64)


def unscale(value: int, scale: int) -> Money:
    if value >= KERNEL_INF:
        return INF
    return Fraction(int(value), scale)


def check_scale(bound: Fraction | int, scale: int) -> None:
    if bound * scale >= SCALE_LIMIT:
        raise ValueError(
            "cost magnitudes too large for exact int64 kernels "
            f"(bound {bound} at scale {scale})")

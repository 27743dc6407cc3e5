"""Directed rounding between exact rationals and floats."""

import math
from fractions import Fraction
from typing import Union

Number = Union[int, float, Fraction]

ROOT_DIGITS = 12


def float_down(x: Number) -> float:
    """Largest float <= x."""
    exact = Fraction(x)
    result = float(exact)
    while Fraction(result) > exact:
        result = math.nextafter(result, -math.inf)
    return result


def float_up(x: Number) -> float:
    """Smallest float >= x."""
    exact = Fraction(x)
    result = float(exact)
    while Fraction(result) < exact:
        result = math.nextafter(result, math.inf)
    return result


def kth_root_floor(a: int, k: int, digits: int = ROOT_DIGITS) -> Fraction:
    """
    floor(a^(1/k) * 10^digits) / 10^digits, found by integer bisection, so the
    result never exceeds the true root.
    """
    if a < 0 or k < 1:
        raise ValueError(f"kth_root_floor needs a >= 0 and k >= 1, got a={a}, k={k}")
    scale = 10**digits
    target = a * scale**k
    lo, hi = 0, max(1, a) * scale
    # invariant: lo^k <= target < hi^k
    while hi**k <= target:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid**k <= target:
            lo = mid
        else:
            hi = mid
    return Fraction(lo, scale)


def root_down(a: int, k: int, digits: int = ROOT_DIGITS) -> float:
    return float_down(kth_root_floor(a, k, digits))


def root_up(a: int, k: int, digits: int = ROOT_DIGITS) -> float:
    """A float >= a^(1/k); exact when a is a perfect k-th power."""
    low = kth_root_floor(a, k, digits)
    if low**k == a:
        return float_up(low)
    return float_up(low + Fraction(1, 10**digits))

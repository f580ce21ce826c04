"""Shared tools.

Contents:
    divisors: positive divisors of an integer in ascending order.
    divisor_pairs: ordered pairs (d, e) with d * e == N, by ascending d.
    divisor_power_sum: the divisor function sigma_k(n).
    sigma: the sum of divisors of N.
    format_fraction, parse_fraction: exact "p/q" text for a rational and
        back.

To Do:


"""
from __future__ import annotations

import pathlib
from fractions import Fraction
from typing import Any

import sympy


def divisors(n: int) -> list[int]:
    """Returns the positive divisors of `n` in ascending order.

    Args:
        n: a positive integer.

    Raises:
        ValueError: if `n` is not positive.

    Returns:
        Ascending `list` of divisors.

    """
    if n < 1:
        message = f'divisors require a positive integer, got {n}'
        raise ValueError(message)
    return [int(d) for d in sympy.divisors(n)]

def divisor_pairs(n: int) -> list[tuple[int, int]]:
    """Returns the ordered pairs `(d, e)` with `d * e == n`, by ascending `d`."""
    return [(d, n // d) for d in divisors(n)]

def divisor_power_sum(n: int, k: int) -> int:
    """Returns sigma_k(n), the sum of the k-th powers of the divisors of `n`.

    Args:
        n: a positive integer.
        k: a non-negative power.

    Returns:
        The divisor power sum as an `int`.

    """
    return int(sympy.divisor_sigma(n, k))

def sigma(n: int) -> int:
    """Returns the sum of the divisors of `n`."""
    return divisor_power_sum(n, 1)

def format_fraction(value: Fraction | int) -> str:
    """Returns `value` as 'p/q', or 'p' when the denominator is 1.

    Args:
        value: an exact rational.

    Returns:
        Decimal text of numerator and denominator.

    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'

def parse_fraction(item: str | int | Fraction) -> Fraction:
    """Converts 'p/q' text (or an int) back into a `Fraction`."""
    return Fraction(item)

def _pathlibify(item: str | pathlib.Path) -> pathlib.Path:
    """Returns `item` as a `pathlib.Path`.

    Raises:
        TypeError: if `item` is neither a `str` nor a `pathlib.Path`.

    """
    if isinstance(item, pathlib.Path):
        return item
    if isinstance(item, str):
        return pathlib.Path(item)
    message = f'a settings path must be str or Path, got {type(item).__name__}'
    raise TypeError(message)

def _typify(item: str) -> list[Any] | int | bool | str:
    """Converts an `ini` option string to an int, bool, or list.

    Integers, yes/no and true/false, and ", "-separated lists are
    recognized. Anything else, floats included, stays a `str`.

    """
    if not isinstance(item, str):
        return item
    try:
        return int(item)
    except ValueError:
        if item.lower() in {'true', 'yes'}:
            return True
        elif item.lower() in {'false', 'no'}:
            return False
        elif ', ' in item:
            return [_typify(i) for i in item.split(', ')]
        else:
            return item

"""Exact truncated Laurent series in q and the Tate curve's q-expansions.

A `QSeries` is known exactly for every exponent below its `truncation`; all
coefficients are `fractions.Fraction` values and no operation ever rounds.

Contents:
    QSeries: immutable truncated Laurent series over the rationals.
    series_add, series_sub, series_neg, series_scale, series_mul,
        series_invert, series_pow, series_truncate: series arithmetic.
    tate_a4, tate_a6: the Tate curve's Weierstrass coefficients.
    tate_b_invariants, tate_c4, discriminant, j_invariant: invariants of
        y^2 + xy = x^3 + a4 x + a6 computed from a4 and a6.
    eta_product_24: q * prod (1 - q^n)^24, an independent oracle for the
        discriminant.
    integrality_check: raises if any coefficient is not an integer.
    compute: the series for a command-line kind name.
    check_series: discriminant and integrality checks for verification.

To Do:


"""
from __future__ import annotations

import dataclasses
import logging
from fractions import Fraction
from typing import TYPE_CHECKING, Any

from . import setup, utilities

if TYPE_CHECKING:
    from collections.abc import Callable, Mapping

logger = logging.getLogger(__name__)


class SeriesIntegralityError(ValueError):
    """A series expected to have integer coefficients does not."""


class SeriesInversionError(ValueError):
    """A series that is zero to its truncation cannot be inverted."""


@dataclasses.dataclass(frozen = True)
class QSeries:
    """Truncated Laurent series sum c_n q^n, exact below `truncation`.

    Use `QSeries.from_coefficients` to build instances from an unnormalized
    mapping; the constructor only accepts normalized data.

    Args:
        coefficients: ascending `(exponent, coefficient)` pairs, none zero and
            all exponents below `truncation`.
        truncation: the series is known exactly for all exponents below this.

    """

    coefficients: tuple[tuple[int, Fraction], ...] = ()
    truncation: int = 0

    def __post_init__(self) -> None:
        """Validates the normal form."""
        exponents = [n for n, _ in self.coefficients]
        if exponents != sorted(set(exponents)):
            raise ValueError('series exponents must be strictly ascending')
        for n, c in self.coefficients:
            if c == 0:
                message = f'stored coefficient at q^{n} is zero'
                raise ValueError(message)
            if n >= self.truncation:
                message = (
                    f'exponent {n} is not below truncation {self.truncation}')
                raise ValueError(message)

    """ Class Methods """

    @classmethod
    def from_coefficients(
        cls,
        coefficients: Mapping[int, Any],
        truncation: int) -> QSeries:
        """Creates a normalized series from an exponent-to-value mapping.

        Zero coefficients and exponents at or beyond `truncation` are dropped.

        Args:
            coefficients: exponent to coefficient (anything `Fraction`
                accepts).
            truncation: order of the series.

        Returns:
            A normalized `QSeries`.

        """
        terms = []
        for n in sorted(coefficients):
            value = Fraction(coefficients[n])
            if value != 0 and n < truncation:
                terms.append((int(n), value))
        return cls(tuple(terms), truncation)

    @classmethod
    def monomial(
        cls,
        exponent: int,
        truncation: int,
        coefficient: Any = 1) -> QSeries:
        """Returns `coefficient * q**exponent` truncated at `truncation`."""
        return cls.from_coefficients({exponent: coefficient}, truncation)

    @classmethod
    def zero(cls, truncation: int) -> QSeries:
        """Returns the series that is zero below `truncation`."""
        return cls((), truncation)

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> QSeries:
        """Rebuilds a series from its `to_json` form."""
        return cls.from_coefficients(
            {int(n): utilities.parse_fraction(c) for n, c in data['coeffs']},
            int(data['truncation']))

    """ Properties """

    @property
    def lowest_exponent(self) -> int:
        """Exponent of the first nonzero term, or `truncation` if none."""
        if self.coefficients:
            return self.coefficients[0][0]
        return self.truncation

    @property
    def is_zero(self) -> bool:
        """Whether the series vanishes to its truncation."""
        return not self.coefficients

    """ Instance Methods """

    def as_dict(self) -> dict[int, Fraction]:
        """Returns the stored coefficients as a `dict`."""
        return dict(self.coefficients)

    def coefficient(self, n: int) -> Fraction:
        """Returns the coefficient of q^n.

        Args:
            n: an exponent below `truncation`.

        Raises:
            ValueError: if `n` is at or beyond the truncation, where the
                coefficient is unknown.

        Returns:
            The exact coefficient (zero if not stored).

        """
        if n >= self.truncation:
            message = (
                f'coefficient of q^{n} is beyond truncation {self.truncation}')
            raise ValueError(message)
        return self.as_dict().get(n, Fraction(0))

    def to_json(self) -> dict[str, Any]:
        """Returns the documented JSON form of the series."""
        return {
            'lowest': self.lowest_exponent,
            'truncation': self.truncation,
            'coeffs': [
                [n, utilities.format_fraction(c)]
                for n, c in self.coefficients]}

    def to_text(self) -> str:
        """Returns ASCII text such as '-5*q - 45*q^2 - 140*q^3'."""
        if self.is_zero:
            return '0'
        pieces = []
        for position, (n, c) in enumerate(self.coefficients):
            body = _format_term(n, abs(c))
            if position == 0:
                pieces.append(f'-{body}' if c < 0 else body)
            else:
                pieces.append(f' - {body}' if c < 0 else f' + {body}')
        return ''.join(pieces)

    """ Dunder Methods """

    def __add__(self, other: QSeries) -> QSeries:
        return series_add(self, other)

    def __sub__(self, other: QSeries) -> QSeries:
        return series_sub(self, other)

    def __neg__(self) -> QSeries:
        return series_neg(self)

    def __mul__(self, other: QSeries | int | Fraction) -> QSeries:
        if isinstance(other, QSeries):
            return series_mul(self, other)
        return series_scale(self, other)

    def __rmul__(self, other: int | Fraction) -> QSeries:
        return series_scale(self, other)

    def __pow__(self, n: int) -> QSeries:
        return series_pow(self, n)

    def __str__(self) -> str:
        return self.to_text()


def _format_term(n: int, magnitude: Fraction) -> str:
    """Returns the unsigned text of `magnitude * q**n`."""
    coefficient = utilities.format_fraction(magnitude)
    if n == 0:
        return coefficient
    power = 'q' if n == 1 else f'q^{n}'
    if magnitude == 1:
        return power
    return f'{coefficient}*{power}'

""" Series Arithmetic """

def series_add(a: QSeries, b: QSeries) -> QSeries:
    """Returns the coefficientwise sum, truncated at the smaller order."""
    truncation = min(a.truncation, b.truncation)
    total = a.as_dict()
    for n, c in b.coefficients:
        total[n] = total.get(n, Fraction(0)) + c
    return QSeries.from_coefficients(total, truncation)

def series_neg(a: QSeries) -> QSeries:
    """Returns -a."""
    return QSeries(tuple((n, -c) for n, c in a.coefficients), a.truncation)

def series_sub(a: QSeries, b: QSeries) -> QSeries:
    """Returns a - b."""
    return series_add(a, series_neg(b))

def series_scale(a: QSeries, scalar: int | Fraction) -> QSeries:
    """Returns `scalar * a` for an exact rational `scalar`."""
    scalar = Fraction(scalar)
    return QSeries.from_coefficients(
        {n: scalar * c for n, c in a.coefficients},
        a.truncation)

def series_mul(a: QSeries, b: QSeries) -> QSeries:
    """Returns the Cauchy product of `a` and `b`.

    If a = O(q^Ta) with valuation va and b = O(q^Tb) with valuation vb, the
    product is exact below min(Ta + vb, Tb + va).

    Args:
        a: first factor.
        b: second factor.

    Returns:
        The truncated product.

    """
    truncation = min(
        a.truncation + b.lowest_exponent,
        b.truncation + a.lowest_exponent)
    product: dict[int, Fraction] = {}
    for i, ci in a.coefficients:
        for j, cj in b.coefficients:
            if i + j >= truncation:
                break
            product[i + j] = product.get(i + j, Fraction(0)) + ci * cj
    return QSeries.from_coefficients(product, truncation)

def series_invert(a: QSeries) -> QSeries:
    """Returns the Laurent series b with a * b == 1 to truncation.

    For a = q^v (c + ...) known below T, the inverse has valuation -v and is
    known below T - 2v.

    Args:
        a: a series with a nonzero leading coefficient.

    Raises:
        SeriesInversionError: if `a` is zero to its truncation.

    Returns:
        The inverse series.

    """
    if a.is_zero:
        message = f'cannot invert a series that is O(q^{a.truncation})'
        raise SeriesInversionError(message)
    v = a.lowest_exponent
    precision = a.truncation - v
    shifted = {n - v: c for n, c in a.coefficients}
    lead = shifted[0]
    inverse = [Fraction(0)] * precision
    inverse[0] = 1 / lead
    for n in range(1, precision):
        total = sum(
            (shifted.get(i, 0) * inverse[n - i] for i in range(1, n + 1)),
            Fraction(0))
        inverse[n] = -total / lead
    return QSeries.from_coefficients(
        {n - v: c for n, c in enumerate(inverse)},
        a.truncation - 2 * v)

def series_pow(a: QSeries, n: int) -> QSeries:
    """Returns `a**n`; negative `n` inverts first."""
    if n < 0:
        return series_pow(series_invert(a), -n)
    result = QSeries.monomial(0, a.truncation - a.lowest_exponent)
    base = a
    while n:
        if n & 1:
            result = series_mul(result, base)
        n >>= 1
        if n:
            base = series_mul(base, base)
    return result

def series_truncate(a: QSeries, truncation: int) -> QSeries:
    """Returns `a` with its order lowered to `truncation` (never raised)."""
    return QSeries.from_coefficients(
        a.as_dict(),
        min(truncation, a.truncation))

def integrality_check(a: QSeries, name: str = 'series') -> QSeries:
    """Returns `a` unchanged after checking all coefficients are integers.

    Raises:
        SeriesIntegralityError: naming the first non-integral coefficient.

    """
    for n, c in a.coefficients:
        if c.denominator != 1:
            message = (
                f'{name} coefficient at q^{n} is {utilities.format_fraction(c)},'
                f' not an integer')
            raise SeriesIntegralityError(message)
    return a

""" Tate Curve Series """

def _lambert(order: int, weight: Callable[[int], int]) -> dict[int, int]:
    """Returns coefficients of sum_n weight(n) q^n / (1 - q^n) below `order`."""
    totals: dict[int, int] = {}
    for n in range(1, order):
        w = weight(n)
        for exponent in range(n, order, n):
            totals[exponent] = totals.get(exponent, 0) + w
    return totals

def _check_order(order: int, minimum: int, name: str) -> None:
    if order < minimum:
        message = f'{name} requires order >= {minimum}, got {order}'
        raise ValueError(message)

def tate_a4(order: int) -> QSeries:
    """Returns a4 = -5 sum n^3 q^n / (1 - q^n) below q^order.

    The coefficient of q^n is -5 sigma_3(n).

    Args:
        order: truncation order, at least 1.

    Returns:
        The a4 series.

    """
    _check_order(order, 1, 'tate_a4')
    totals = _lambert(order, lambda n: n ** 3)
    return QSeries.from_coefficients(
        {n: -5 * c for n, c in totals.items()},
        order)

def tate_a6(order: int) -> QSeries:
    """Returns a6 = -(1/12) sum (7n^5 + 5n^3) q^n / (1 - q^n) below q^order.

    Args:
        order: truncation order, at least 1.

    Raises:
        SeriesIntegralityError: if a coefficient is not an integer.

    Returns:
        The a6 series.

    """
    _check_order(order, 1, 'tate_a6')
    totals = _lambert(order, lambda n: 7 * n ** 5 + 5 * n ** 3)
    series = QSeries.from_coefficients(
        {n: Fraction(-c, 12) for n, c in totals.items()},
        order)
    return integrality_check(series, 'a6')

def tate_b_invariants(order: int) -> tuple[QSeries, QSeries, QSeries, QSeries]:
    """Returns (b2, b4, b6, b8) for a1 = 1, a2 = a3 = 0.

    b2 = a1^2 + 4a2, b4 = 2a4 + a1a3, b6 = a3^2 + 4a6 and
    b8 = a1^2 a6 + 4a2a6 - a1a3a4 + a2a3^2 - a4^2.

    """
    a4 = tate_a4(order)
    a6 = tate_a6(order)
    b2 = QSeries.monomial(0, order)
    b4 = series_scale(a4, 2)
    b6 = series_scale(a6, 4)
    b8 = series_sub(a6, series_mul(a4, a4))
    return b2, b4, b6, b8

def tate_c4(order: int) -> QSeries:
    """Returns c4 = b2^2 - 24 b4 below q^order."""
    _check_order(order, 1, 'tate_c4')
    b2, b4, _, _ = tate_b_invariants(order)
    return series_sub(series_mul(b2, b2), series_scale(b4, 24))

def discriminant(order: int) -> QSeries:
    """Returns the discriminant of the Tate curve below q^order.

    Delta = -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6.

    Args:
        order: truncation order, at least 2.

    Returns:
        The discriminant series, q - 24q^2 + 252q^3 - ...

    """
    _check_order(order, 2, 'discriminant')
    b2, b4, b6, b8 = tate_b_invariants(order)
    delta = series_add(
        series_add(
            series_neg(series_mul(series_mul(b2, b2), b8)),
            series_scale(series_pow(b4, 3), -8)),
        series_add(
            series_scale(series_mul(b6, b6), -27),
            series_scale(series_mul(series_mul(b2, b4), b6), 9)))
    logger.debug('discriminant computed to order %d', order)
    return series_truncate(delta, order)

def eta_product_24(order: int) -> QSeries:
    """Returns q * prod_{n >= 1} (1 - q^n)^24 below q^order.

    Args:
        order: truncation order, at least 2.

    Returns:
        The eta-product series.

    """
    _check_order(order, 2, 'eta_product_24')
    length = order - 1
    product = [0] * length
    product[0] = 1
    for n in range(1, length):
        for _ in range(24):
            for i in range(length - 1, n - 1, -1):
                product[i] -= product[i - n]
    return QSeries.from_coefficients(
        {i + 1: c for i, c in enumerate(product)},
        order)

def j_invariant(order: int) -> QSeries:
    """Returns j = c4^3 / Delta below q^order.

    Delta is computed two orders higher so that the quotient, of valuation
    -1, is exact below `order`.

    Args:
        order: truncation order, at least 2.

    Returns:
        The j series, q^-1 + 744 + 196884q + ...

    """
    _check_order(order, 2, 'j_invariant')
    working = order + 2
    c4 = tate_c4(working)
    j = series_mul(series_pow(c4, 3), series_invert(discriminant(working)))
    return series_truncate(j, order)

def compute(kind: str, order: int) -> QSeries:
    """Returns the series named `kind` ('a4', 'a6', 'disc', 'eta24', 'j').

    Raises:
        KeyError: if `kind` is not a known series.

    """
    builders: dict[str, Callable[[int], QSeries]] = {
        'a4': tate_a4,
        'a6': tate_a6,
        'disc': discriminant,
        'eta24': eta_product_24,
        'j': j_invariant}
    try:
        builder = builders[kind]
    except KeyError as error:
        message = f'unknown series {kind}, expected one of {sorted(builders)}'
        raise KeyError(message) from error
    return builder(order)

def check_series(order: int) -> setup.CheckResult:
    """Checks Delta against the eta product and the integrality of a6 and j."""
    name = 'series'
    try:
        delta = discriminant(order)
        if delta != eta_product_24(order):
            return setup.CheckResult(name, False, 'discriminant differs from eta product')
        tate_a6(order)
        integrality_check(j_invariant(order), 'j')
    except SeriesIntegralityError as error:
        return setup.CheckResult(name, False, str(error))
    return setup.CheckResult(name, True, f'order {order}')

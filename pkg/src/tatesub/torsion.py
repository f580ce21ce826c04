"""Points of the Tate curve in the cyclotomic-by-q-power coefficient group.

Values are exact: a unit is zeta^r * q^beta with rational r in [0, 1) and
rational beta, stored as a `CycloQUnit`. A point [u, t] of T(K) is a class of
K* x Q modulo the subgroup generated by (q_param, TATE_RELATION_SIGN); every
`TatePoint` is kept in its canonical representative with t in [0, 1).

Contents:
    CycloQUnit: an element zeta^r * q^beta.
    TatePoint: a canonical point [u, t] on the curve with parameter q_param.
    enumerate_torsion: T[N] on a given curve, in coordinate order.
    a_N, b_N: the maps of the exact sequence 0 -> mu_N -> T[N] -> Z/N -> 0.
    char_xk: the coordinate x_k as a function on T[N].
    weil_pairing: the alternating pairing e_N on T[N].
    lambda_char: the dual character (k, a) -> (k*t - a)/N mod 1.
    check_group_structure, check_exactness, check_pairing, check_characters,
        check_dual_character: exhaustive checks returning `CheckResult`.

To Do:


"""
from __future__ import annotations

import dataclasses
import logging
import math
from fractions import Fraction

from . import rings, setup, utilities

logger = logging.getLogger(__name__)


class TorsionError(ValueError):
    """A point is not N-torsion, or two points lie on different curves."""


@dataclasses.dataclass(frozen = True)
class CycloQUnit:
    """The unit zeta^root_exponent * q^q_exponent.

    Here zeta^r means exp(2*pi*i*r), so `root_exponent` is reduced into
    [0, 1) on creation.

    Args:
        root_exponent: rational exponent of the root of unity.
        q_exponent: rational exponent of the structural parameter q.

    """

    root_exponent: setup.Rational = Fraction(0)
    q_exponent: setup.Rational = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'root_exponent', Fraction(self.root_exponent) % 1)
        object.__setattr__(self, 'q_exponent', Fraction(self.q_exponent))

    """ Class Methods """

    @classmethod
    def root_of_unity(cls, numerator: int, order: int) -> CycloQUnit:
        """Returns zeta_order^numerator."""
        return cls(Fraction(numerator, order), 0)

    @classmethod
    def q_power(cls, beta: Fraction | int) -> CycloQUnit:
        """Returns q^beta."""
        return cls(0, beta)

    @classmethod
    def from_json(cls, item: dict[str, str]) -> CycloQUnit:
        """Rebuilds a unit from its `to_json` form."""
        return cls(
            utilities.parse_fraction(item['root']),
            utilities.parse_fraction(item['qexp']))

    """ Properties """

    @property
    def is_one(self) -> bool:
        """Whether the unit is 1."""
        return self.root_exponent == 0 and self.q_exponent == 0

    @property
    def is_root_of_unity(self) -> bool:
        """Whether the q exponent is 0."""
        return self.q_exponent == 0

    """ Instance Methods """

    def branch_power(self, exponent: Fraction) -> CycloQUnit:
        """Returns one chosen branch of self^exponent for rational `exponent`.

        The branch multiplies both stored exponents, so q^beta maps to
        q^(beta * exponent) with no root of unity.

        """
        return CycloQUnit(
            self.root_exponent * exponent,
            self.q_exponent * exponent)

    def order(self) -> int:
        """Returns the multiplicative order of a root of unity.

        Raises:
            TorsionError: if the unit has a nonzero q exponent.

        """
        if not self.is_root_of_unity:
            message = f'{self.to_text()} has infinite order'
            raise TorsionError(message)
        return self.root_exponent.denominator

    def inverse(self) -> CycloQUnit:
        """Returns 1/self."""
        return CycloQUnit(-self.root_exponent, -self.q_exponent)

    def to_json(self) -> dict[str, str]:
        """Returns {"root": "p/q", "qexp": "p/q"}."""
        return {
            'root': utilities.format_fraction(self.root_exponent),
            'qexp': utilities.format_fraction(self.q_exponent)}

    def to_text(self) -> str:
        """Returns ASCII text such as "zeta(1/3)*q^(1/2)" or "-q^(1/2)"."""
        beta = self.q_exponent
        if beta == 0:
            q_text = ''
        elif beta == 1:
            q_text = 'q'
        elif beta.denominator == 1:
            q_text = f'q^{beta.numerator}'
        else:
            q_text = f'q^({utilities.format_fraction(beta)})'
        root = self.root_exponent
        if root == 0:
            return q_text or '1'
        if root == Fraction(1, 2):
            return f'-{q_text or "1"}'
        root_text = f'zeta({utilities.format_fraction(root)})'
        return f'{root_text}*{q_text}' if q_text else root_text

    """ Dunder Methods """

    def __mul__(self, other: CycloQUnit) -> CycloQUnit:
        return CycloQUnit(
            self.root_exponent + other.root_exponent,
            self.q_exponent + other.q_exponent)

    def __truediv__(self, other: CycloQUnit) -> CycloQUnit:
        return self * other.inverse()

    def __pow__(self, n: int) -> CycloQUnit:
        return CycloQUnit(self.root_exponent * n, self.q_exponent * n)

    def __str__(self) -> str:
        return self.to_text()


Q = CycloQUnit(0, 1)
ONE = CycloQUnit(0, 0)


@dataclasses.dataclass(frozen = True)
class TatePoint:
    """A point [u, t] of the Tate curve with parameter `curve`.

    The stored representative is canonical: t in [0, 1) and u adjusted by
    the relation, so equal points compare equal.

    Args:
        u: the unit coordinate.
        t: the rational coordinate.
        curve: the curve parameter q_param. Defaults to q itself.

    """

    u: CycloQUnit
    t: setup.Rational
    curve: CycloQUnit = Q

    def __post_init__(self) -> None:
        t = Fraction(self.t)
        shift = math.floor(t)
        if shift:
            u = self.u * self.curve ** (-setup.TATE_RELATION_SIGN * shift)
            object.__setattr__(self, 'u', u)
        object.__setattr__(self, 't', t - shift)

    """ Properties """

    @property
    def is_identity(self) -> bool:
        """Whether the point is [1, 0]."""
        return self.u.is_one and self.t == 0

    """ Instance Methods """

    def lift(self, t: Fraction) -> CycloQUnit:
        """Returns the unit of the representative with rational coordinate `t`.

        Raises:
            ValueError: if `t` differs from the canonical coordinate by a
                non-integer.

        """
        shift = Fraction(t) - self.t
        if shift.denominator != 1:
            message = f'{t} is not congruent to {self.t} modulo 1'
            raise ValueError(message)
        return self.u * self.curve ** (setup.TATE_RELATION_SIGN * int(shift))

    def is_torsion(self, N: int) -> bool:
        """Whether N * self is the identity."""
        return (N * self).is_identity

    def order(self, N: int) -> int:
        """Returns the exact order of an N-torsion point.

        Raises:
            TorsionError: if the point is not N-torsion.

        """
        for n in utilities.divisors(N):
            if (n * self).is_identity:
                return n
        message = f'{self.to_text()} is not {N}-torsion'
        raise TorsionError(message)

    def to_json(self) -> dict[str, str]:
        """Returns {"root", "qexp", "t"} of the canonical representative."""
        return {**self.u.to_json(), 't': utilities.format_fraction(self.t)}

    def to_text(self) -> str:
        """Returns text such as "[-q^(1/2), 1/2]"."""
        return f'[{self.u.to_text()}, {utilities.format_fraction(self.t)}]'

    def sort_key(self) -> tuple[Fraction, Fraction, Fraction]:
        """Returns (t, root exponent, q exponent) for deterministic order."""
        return (self.t, self.u.root_exponent, self.u.q_exponent)

    def _check_curve(self, other: TatePoint) -> None:
        if other.curve != self.curve:
            message = (
                f'points lie on different curves {self.curve.to_text()} and '
                f'{other.curve.to_text()}')
            raise TorsionError(message)

    """ Dunder Methods """

    def __add__(self, other: TatePoint) -> TatePoint:
        self._check_curve(other)
        return TatePoint(self.u * other.u, self.t + other.t, self.curve)

    def __neg__(self) -> TatePoint:
        return TatePoint(self.u.inverse(), -self.t, self.curve)

    def __sub__(self, other: TatePoint) -> TatePoint:
        return self + (-other)

    def __mul__(self, n: int) -> TatePoint:
        return TatePoint(self.u ** n, self.t * n, self.curve)

    def __rmul__(self, n: int) -> TatePoint:
        return self * n

    def __str__(self) -> str:
        return self.to_text()


def identity(curve: CycloQUnit = Q) -> TatePoint:
    """Returns [1, 0] on `curve`."""
    return TatePoint(ONE, Fraction(0), curve)

def enumerate_torsion(N: int, curve: CycloQUnit = Q) -> list[TatePoint]:
    """Returns the N^2 points of T[N] on the curve with parameter `curve`.

    The point with coordinates (i, j) is [zeta_N^i * curve^(j/N), j/N], with
    the branch of curve^(j/N) fixed by `CycloQUnit.branch_power`. Points are
    listed by j, then i.

    Args:
        N: a positive integer.
        curve: the curve parameter. Defaults to q.

    Raises:
        ValueError: if `N` is not positive.

    Returns:
        `list` of canonical points.

    """
    if N < 1:
        message = f'torsion order must be positive, got {N}'
        raise ValueError(message)
    points = []
    for j in range(N):
        base = curve.branch_power(Fraction(j, N))
        for i in range(N):
            points.append(TatePoint(
                CycloQUnit.root_of_unity(i, N) * base,
                Fraction(j, N),
                curve))
    return points

def torsion_generators(N: int, curve: CycloQUnit = Q) -> tuple[TatePoint, TatePoint]:
    """Returns the coordinate basis ([zeta_N, 0], [curve^(1/N), 1/N])."""
    return (
        TatePoint(CycloQUnit.root_of_unity(1, N), Fraction(0), curve),
        TatePoint(curve.branch_power(Fraction(1, N)), Fraction(1, N), curve))

def point_from_coordinates(i: int, j: int, N: int) -> TatePoint:
    """Returns i * [zeta_N, 0] + j * [q^(1/N), 1/N] on the curve q."""
    first, second = torsion_generators(N)
    return i * first + j * second

def coordinates_of(point: TatePoint, N: int) -> tuple[int, int]:
    """Returns (i, j) with `point` = i * [zeta_N, 0] + j * [q^(1/N), 1/N].

    Raises:
        TorsionError: if `point` is not an N-torsion point of the curve q.

    """
    if point.curve != Q or not point.is_torsion(N):
        message = f'{point.to_text()} is not a {N}-torsion point of Tate(q)'
        raise TorsionError(message)
    j = int(point.t * N)
    zeta = point.u / Q.branch_power(point.t)
    return (int(zeta.root_exponent * N) % N, j)

def a_N(zeta: CycloQUnit, curve: CycloQUnit = Q) -> TatePoint:
    """Returns [zeta, 0], the image of a root of unity in T[N].

    Raises:
        TorsionError: if `zeta` is not a root of unity.

    """
    if not zeta.is_root_of_unity:
        message = f'{zeta.to_text()} is not a root of unity'
        raise TorsionError(message)
    return TatePoint(zeta, Fraction(0), curve)

def b_N(point: TatePoint, N: int) -> int:
    """Returns N * t mod N, the component index of an N-torsion point.

    Raises:
        TorsionError: if `point` is not N-torsion.

    """
    if not point.is_torsion(N):
        message = f'{point.to_text()} is not {N}-torsion'
        raise TorsionError(message)
    return int(point.t * N) % N


@dataclasses.dataclass(frozen = True)
class _ZERO_VALUE(object):  # noqa: N801
    """Marks a coordinate that vanishes at a point.

    The coordinate x_k is zero off the component T_k[N], and zero is not a
    unit, so it cannot be a `CycloQUnit`.

    """

    def __repr__(self) -> str:
        return 'ZERO'


ZERO = _ZERO_VALUE()


def char_xk(k: int, point: TatePoint, N: int) -> CycloQUnit | _ZERO_VALUE:
    """Returns the value of the coordinate x_k at `point`.

    Args:
        k: component index in [0, N).
        point: an N-torsion point.
        N: the torsion order.

    Returns:
        The unit u of the representative [u, k/N] when `point` lies on T_k[N],
        otherwise `ZERO`.

    """
    if b_N(point, N) != k % N:
        return ZERO
    return point.lift(Fraction(k % N, N))

def weil_pairing(first: TatePoint, second: TatePoint, N: int) -> CycloQUnit:
    """Returns e_N(first, second) = u1^(N t2) * u2^(-N t1).

    The value does not depend on the chosen representatives, because u^N is
    curve^(N t) for every N-torsion point [u, t].

    Raises:
        TorsionError: if either point is not N-torsion, or they lie on
            different curves.

    """
    first._check_curve(second)
    for point in (first, second):
        if not point.is_torsion(N):
            message = f'{point.to_text()} is not {N}-torsion'
            raise TorsionError(message)
    value = (
        first.u ** int(N * second.t)
        * second.u ** int(-N * first.t))
    if not value.is_root_of_unity:
        message = f'pairing value {value.to_text()} is not a root of unity'
        raise TorsionError(message)
    return value

def lambda_char(N: int, k: int, a: int, t: Fraction) -> Fraction:
    """Returns the character (k*t - a)/N mod 1 on the lattice Z(N,0)+Z(k,1).

    Args:
        N: the torsion order.
        k: component index.
        a: first coordinate of the lattice point.
        t: second coordinate of the lattice point.

    Returns:
        A rational in [0, 1); exp(2*pi*i * value) is the character value.

    """
    return Fraction(k * Fraction(t) - a, N) % 1

def pairing_table(N: int) -> list[list[int]]:
    """Returns the N^2 x N^2 matrix of e_N in coordinate order.

    Entry [P][Q] is the integer a with e_N(P, Q) = zeta_N^a.

    Raises:
        TorsionError: if a pairing value is not an N-th root of unity.

    """
    points = enumerate_torsion(N)
    table = []
    for p in points:
        row = []
        for q in points:
            value = p.u ** int(N * q.t) * q.u ** int(-N * p.t)
            exponent = value.root_exponent * N
            if not value.is_root_of_unity or exponent.denominator != 1:
                message = f'e_{N}({p}, {q}) = {value} is not in mu_{N}'
                raise TorsionError(message)
            row.append(int(exponent))
        table.append(row)
    return table

def unit_to_element(
    unit: CycloQUnit,
    ring: rings.RingPresentation) -> rings.RingElement:
    """Returns `unit` as the monomial z^(r*order) * s^(beta*denominator).

    Args:
        unit: the value to embed.
        ring: a presentation from `rings.coefficient_ring`.

    Raises:
        ValueError: if `unit` does not lie in the coefficient group of `ring`.

    """
    _, denominator, order = ring.label
    root = unit.root_exponent * order
    power = unit.q_exponent * denominator
    if root.denominator != 1 or power.denominator != 1:
        message = f'{unit.to_text()} is not in {ring.name}'
        raise ValueError(message)
    return ring.monomial(z = int(root), s = int(power))

""" Checks """

def check_group_structure(N: int) -> setup.CheckResult:
    """Checks that T[N] is (Z/N)^2 with the coordinate basis.

    Covers: N^2 distinct points, all N-torsion, the coordinate map is
    additive on generator steps, and closure under addition (all pairs) for
    N <= 8.

    """
    name = 'group_structure'
    points = enumerate_torsion(N)
    members = set(points)
    if len(members) != N * N:
        return setup.CheckResult(name, False, f'{len(members)} distinct points')
    for point in points:
        if not point.is_torsion(N):
            return setup.CheckResult(name, False, f'{point} is not {N}-torsion')
    first, second = torsion_generators(N)
    for point in points:
        i, j = coordinates_of(point, N)
        if point_from_coordinates(i, j, N) != point:
            return setup.CheckResult(name, False, f'{point} has coordinates ({i}, {j})')
        if coordinates_of(point + first, N) != ((i + 1) % N, j):
            return setup.CheckResult(name, False, f'{point} + [zeta_{N}, 0]')
        if coordinates_of(point + second, N) != (i, (j + 1) % N):
            return setup.CheckResult(name, False, f'{point} + [q^(1/{N}), 1/{N}]')
    if N <= 8:
        for p in points:
            for q in points:
                if p + q not in members or p + q != q + p:
                    return setup.CheckResult(name, False, f'{p} + {q}')
    return setup.CheckResult(name, True, f'{N * N} points')

def check_exactness(N: int) -> setup.CheckResult:
    """Checks 0 -> mu_N -> T[N] -> Z/N -> 0 on every point."""
    name = 'exactness'
    points = enumerate_torsion(N)
    roots = [CycloQUnit.root_of_unity(i, N) for i in range(N)]
    image = {a_N(zeta) for zeta in roots}
    kernel = {p for p in points if b_N(p, N) == 0}
    if len(image) != N:
        return setup.CheckResult(name, False, 'a_N is not injective')
    if image != kernel:
        return setup.CheckResult(name, False, 'image of a_N differs from ker b_N')
    if {b_N(p, N) for p in points} != set(range(N)):
        return setup.CheckResult(name, False, 'b_N is not surjective')
    first, second = torsion_generators(N)
    for p in points:
        for g in (first, second):
            if b_N(p + g, N) != (b_N(p, N) + b_N(g, N)) % N:
                return setup.CheckResult(name, False, f'b_N is not additive at {p}')
    return setup.CheckResult(name, True, f'|ker b_N| = {N}')

def check_pairing(N: int) -> setup.CheckResult:
    """Checks that e_N is bilinear, alternating, perfect, and compatible.

    Runs on every pair of points through the exponent table. Compatibility
    means e_N(a_N(zeta), Q) = zeta^b_N(Q).

    """
    name = 'pairing'
    try:
        table = pairing_table(N)
    except TorsionError as error:
        return setup.CheckResult(name, False, str(error))
    size = N * N

    def position(i: int, j: int) -> int:
        return (j % N) * N + (i % N)

    for j in range(N):
        for i in range(N):
            p = position(i, j)
            if table[p][p] != 0:
                return setup.CheckResult(name, False, f'e_N(P, P) != 1 at ({i}, {j})')
            if p and table[p][position(1, 0)] == 0 == table[p][position(0, 1)]:
                return setup.CheckResult(name, False, f'({i}, {j}) pairs trivially')
            for q in range(size):
                if (table[p][q] + table[q][p]) % N:
                    return setup.CheckResult(name, False, f'not skew at ({i}, {j}), {q}')
                for step in ((1, 0), (0, 1)):
                    stepped = position(i + step[0], j + step[1])
                    expected = table[p][q] + table[position(*step)][q]
                    if table[stepped][q] != expected % N:
                        return setup.CheckResult(name, False, f'not additive at ({i}, {j}), {q}')
    for i in range(N):
        for q in range(size):
            if table[position(i, 0)][q] != (i * (q // N)) % N:
                return setup.CheckResult(name, False, f'compatibility at zeta_{N}^{i}, {q}')
    return setup.CheckResult(name, True, f'{size * size} pairs')

def check_characters(N: int) -> setup.CheckResult:
    """Checks that exactly one x_k is nonzero at each point, with x_k^N = q^k."""
    name = 'characters'
    for point in enumerate_torsion(N):
        nonzero = []
        for k in range(N):
            value = char_xk(k, point, N)
            if value is ZERO:
                continue
            nonzero.append(k)
            if value ** N != CycloQUnit.q_power(k):
                return setup.CheckResult(name, False, f'x_{k}^{N} != q^{k} at {point}')
        if nonzero != [b_N(point, N)]:
            return setup.CheckResult(name, False, f'components {nonzero} at {point}')
    return setup.CheckResult(name, True, f'{N} coordinates')

def check_dual_character(N: int) -> setup.CheckResult:
    """Checks lambda_char on a finite grid of (k, a, t).

    The value must be unchanged by (a, t) -> (a + N, t) and
    (a, t) -> (a + k, t + 1), and N * value must equal k * t mod 1.

    """
    name = 'dual_character'
    steps = [Fraction(j, 2 * N) for j in range(-2 * N, 2 * N + 1)]
    for k in range(N):
        for a in range(-N, N + 1):
            for t in steps:
                value = lambda_char(N, k, a, t)
                if lambda_char(N, k, a + N, t) != value:
                    return setup.CheckResult(name, False, f'(a, t) = ({a}, {t}) + (N, 0)')
                if lambda_char(N, k, a + k, t + 1) != value:
                    return setup.CheckResult(name, False, f'(a, t) = ({a}, {t}) + (k, 1)')
                if (N * value) % 1 != (k * t) % 1:
                    return setup.CheckResult(name, False, f'N * value at ({k}, {a}, {t})')
    return setup.CheckResult(name, True, f'{N * (2 * N + 1) * (4 * N + 1)} inputs')

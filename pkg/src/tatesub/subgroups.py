"""Order-N subgroups of T[N] and the isogenies whose kernels they are.

Every subgroup H of order N in T[N] is the kernel of exactly one map
psi_{d,e}: Tate(q) -> Tate(q'), [a, t] -> [a^d, e*t], with de = N and
q'^e = q^d. `classify` reads (d, e, q') off H, `kernel_of_psi` goes back,
and `verify_universal_bijection` checks both directions for every subgroup.

Contents:
    SubgroupError: a point set is not an order-N subgroup, or a target
        curve is not admissible.
    SubgroupRecord: one subgroup with its coordinates and classification.
    enumerate_subgroups: the sigma(N) subgroups from Hermite normal forms.
    closure_subgroups: all order-N subgroups by closure of generator pairs.
    classify, kernel_of_psi, isogeny_psi, complex_kernel,
        admissible_qprimes, field_map: the classification maps.
    BijectionCertificate, verify_universal_bijection: the round trip.
    classification_report: JSON-ready summary for one N.
    check_enumeration, check_rank_duality: `CheckResult` producers.

To Do:


"""
from __future__ import annotations

import dataclasses
import itertools
import logging
from fractions import Fraction
from typing import Any

from . import rings, setup, torsion, utilities

logger = logging.getLogger(__name__)

Hermite = tuple[tuple[int, int], tuple[int, int]]


class SubgroupError(ValueError):
    """A point set is not an order-N subgroup, or (d, e, q') is invalid."""


@dataclasses.dataclass(frozen = True)
class SubgroupRecord:
    """An order-N subgroup of T[N] and, once classified, its (d, e, q').

    Args:
        N: the torsion order.
        points: the N canonical points of the subgroup.
        hermite: the basis [[a, b], [0, c]] of its coordinate lattice, or
            None for subgroups not built from a Hermite normal form.
        d: number of points with t = 0.
        e: N // d.
        q_prime: the target curve parameter.

    """

    N: int
    points: frozenset[torsion.TatePoint]
    hermite: Hermite | None = None
    d: int | None = None
    e: int | None = None
    q_prime: torsion.CycloQUnit | None = None

    """ Properties """

    @property
    def classified(self) -> bool:
        """Whether (d, e, q') have been filled in."""
        return self.q_prime is not None

    """ Instance Methods """

    def with_classification(self) -> SubgroupRecord:
        """Returns a copy with (d, e, q') from `classify`."""
        d, e, q_prime = classify(self.points, self.N)
        return dataclasses.replace(self, d = d, e = e, q_prime = q_prime)

    def sort_key(self) -> tuple[int, Fraction]:
        """Returns (d, root exponent of q') for report order."""
        if not self.classified:
            raise SubgroupError('subgroup is not classified')
        return (self.d, self.q_prime.root_exponent)

    def sorted_points(self) -> list[torsion.TatePoint]:
        """Returns the points by (t, root exponent, q exponent)."""
        return sorted(self.points, key = torsion.TatePoint.sort_key)

    def to_json(self) -> dict[str, Any]:
        """Returns the documented JSON form of the record."""
        item: dict[str, Any] = {
            'points': [p.to_json() for p in self.sorted_points()]}
        if self.hermite is not None:
            item['hermite'] = [list(row) for row in self.hermite]
        if self.classified:
            item.update({
                'd': self.d,
                'e': self.e,
                'qprime': self.q_prime.to_json(),
                'qprime_text': self.q_prime.to_text()})
        return item


def _lattice_points(N: int, hermite: Hermite) -> frozenset[tuple[int, int]]:
    (a, b), (_, c) = hermite
    return frozenset(
        ((x * a) % N, (x * b + y * c) % N)
        for x in range(N // a)
        for y in range(N // c))

def enumerate_subgroups(N: int) -> list[SubgroupRecord]:
    """Returns the order-N subgroups of T[N], one per Hermite normal form.

    With coordinates (i, j) from `torsion.point_from_coordinates`, the
    subgroups of order N in (Z/N)^2 are the lattices with basis
    [[a, b], [0, c]], ac = N and 0 <= b < c. Records come in lexicographic
    (a, b) order and are not yet classified.

    Args:
        N: a positive integer.

    Returns:
        sigma(N) records.

    """
    records = []
    for a in utilities.divisors(N):
        c = N // a
        for b in range(c):
            hermite = ((a, b), (0, c))
            points = frozenset(
                torsion.point_from_coordinates(i, j, N)
                for i, j in _lattice_points(N, hermite))
            records.append(SubgroupRecord(N, points, hermite))
    logger.debug('enumerated %d subgroups of T[%d]', len(records), N)
    return records

def closure_subgroups(N: int) -> set[frozenset[tuple[int, int]]]:
    """Returns every order-N subgroup of (Z/N)^2 by brute-force closure.

    Every subgroup of (Z/N)^2 is generated by two elements, so closing all
    generator pairs finds each one. Intended for N <= 8.

    """
    elements = list(itertools.product(range(N), repeat = 2))
    found = set()
    for (i1, j1), (i2, j2) in itertools.product(elements, repeat = 2):
        span = frozenset(
            ((x * i1 + y * i2) % N, (x * j1 + y * j2) % N)
            for x in range(N)
            for y in range(N))
        if len(span) == N:
            found.add(span)
    return found

def _check_subgroup(points: frozenset[torsion.TatePoint], N: int) -> None:
    if len(points) != N:
        message = f'expected {N} points, got {len(points)}'
        raise SubgroupError(message)
    for p in points:
        if not p.is_torsion(N):
            message = f'{p} is not {N}-torsion'
            raise SubgroupError(message)
        if -p not in points:
            message = f'{p} has no inverse in the set'
            raise SubgroupError(message)
        for q in points:
            if p + q not in points:
                message = f'set is not closed: {p} + {q}'
                raise SubgroupError(message)

def _qprime_from(point: torsion.TatePoint, d: int, e: int) -> torsion.CycloQUnit:
    """Returns u^d for the representative [u, 1/e] of `point`."""
    return point.lift(Fraction(1, e)) ** d

def classify(
    points: frozenset[torsion.TatePoint],
    N: int) -> tuple[int, int, torsion.CycloQUnit]:
    """Returns (d, e, q') for an order-N subgroup of T[N].

    d counts the points with t = 0 and e = N // d. For any h with t = 1/e
    (the identity lifted to [q, 1] when e = 1), q' is u^d where [u, 1/e]
    represents h; then q'^e = q^d.

    Args:
        points: the points of the subgroup.
        N: the torsion order.

    Raises:
        SubgroupError: if `points` is not an order-N subgroup, or different
            choices of h disagree.

    Returns:
        (d, e, q').

    """
    _check_subgroup(points, N)
    d = sum(1 for p in points if p.t == 0)
    e = N // d
    if d * e != N:
        message = f'{d} points with t = 0 do not divide N = {N}'
        raise SubgroupError(message)
    step = Fraction(1, e) % 1
    choices = {_qprime_from(p, d, e) for p in points if p.t == step}
    if len(choices) != 1:
        message = f'subgroup gives {len(choices)} values of q\''
        raise SubgroupError(message)
    q_prime = choices.pop()
    if q_prime ** e != torsion.Q ** d:
        message = f"q'^e = {(q_prime ** e).to_text()}, not q^{d}"
        raise SubgroupError(message)
    return d, e, q_prime

def admissible_qprimes(d: int, e: int) -> list[torsion.CycloQUnit]:
    """Returns the e solutions of q'^e = q^d, zeta_e^j * q^(d/e) by j."""
    return [
        torsion.CycloQUnit(Fraction(j, e), Fraction(d, e))
        for j in range(e)]

def _check_qprime(d: int, e: int, q_prime: torsion.CycloQUnit) -> None:
    if d < 1 or e < 1:
        message = f'(d, e) = ({d}, {e}) must be positive'
        raise SubgroupError(message)
    if q_prime ** e != torsion.Q ** d:
        message = f"{q_prime} is not an admissible q' for (d, e) = ({d}, {e})"
        raise SubgroupError(message)

def isogeny_psi(
    point: torsion.TatePoint,
    d: int,
    e: int,
    q_prime: torsion.CycloQUnit) -> torsion.TatePoint:
    """Returns psi_{d,e}([a, t]) = [a^d, e*t] on Tate(q').

    Raises:
        SubgroupError: if `point` is not on Tate(q) or q'^e != q^d.

    """
    _check_qprime(d, e, q_prime)
    if point.curve != torsion.Q:
        message = f'{point} is not a point of Tate(q)'
        raise SubgroupError(message)
    return torsion.TatePoint(point.u ** d, e * point.t, q_prime)

def kernel_of_psi(
    N: int,
    d: int,
    e: int,
    q_prime: torsion.CycloQUnit) -> frozenset[torsion.TatePoint]:
    """Returns the points of T[N] that psi_{d,e} sends to the identity.

    Raises:
        SubgroupError: if de != N or q'^e != q^d.

    """
    if d * e != N:
        message = f'(d, e) = ({d}, {e}) is not a factorization of {N}'
        raise SubgroupError(message)
    _check_qprime(d, e, q_prime)
    return frozenset(
        p for p in torsion.enumerate_torsion(N)
        if isogeny_psi(p, d, e, q_prime).is_identity)

def complex_kernel(
    N: int,
    d: int,
    e: int,
    q_prime: torsion.CycloQUnit) -> frozenset[torsion.TatePoint]:
    """Returns {[zeta_d^n * rho^m, m/e]} with rho^d = q', rho = q'^(1/d).

    This is the kernel read off the analytic picture C*/q^Z, where
    psi_{d,e} is z -> z^d; it serves as an independent check on
    `kernel_of_psi`.

    """
    if d * e != N:
        message = f'(d, e) = ({d}, {e}) is not a factorization of {N}'
        raise SubgroupError(message)
    _check_qprime(d, e, q_prime)
    rho = q_prime.branch_power(Fraction(1, d))
    return frozenset(
        torsion.TatePoint(
            torsion.CycloQUnit.root_of_unity(n, d) * rho ** m,
            Fraction(m, e))
        for n in range(d)
        for m in range(e))

def field_map(d: int, e: int, q_prime: torsion.CycloQUnit) -> rings.RingHom:
    """Returns the map O_Sub_{d,e} -> Z[q^(1/e)+-][zeta_e] picking out q'.

    It sends q to s^e and q' to the monomial of `q_prime`, and exists exactly
    when q'^e = q^d.

    Raises:
        rings.WellDefinednessError: if the relation q'^e = q^d fails.

    """
    target = rings.coefficient_ring(e, e)
    return rings.ring_hom(
        rings.sub_factor_ring(d, e),
        target,
        {'q': target.monomial(s = e),
         'qp': torsion.unit_to_element(q_prime, target)})


@dataclasses.dataclass(frozen = True)
class BijectionCertificate:
    """Evidence that subgroups and (d, e, q') correspond one to one.

    Args:
        N: the torsion order.
        subgroups: number of enumerated subgroups.
        expected: sigma(N).
        forward: subgroups checked through classify then kernel_of_psi.
        backward: (d, e, q') checked through kernel_of_psi then classify.
        ring_maps: (d, e, q') whose `field_map` was built.
        failure: first failure, or None.

    """

    N: int
    subgroups: int
    expected: int
    forward: int = 0
    backward: int = 0
    ring_maps: int = 0
    failure: str | None = None

    @property
    def passed(self) -> bool:
        """Whether every check held."""
        return self.failure is None

    def to_json(self) -> dict[str, Any]:
        """Returns the certificate with "roundtrip": "pass" or {"fail": ...}."""
        return {
            'N': self.N,
            'subgroups': self.subgroups,
            'sigma': self.expected,
            'forward': self.forward,
            'backward': self.backward,
            'ring_maps': self.ring_maps,
            'roundtrip': 'pass' if self.passed else {'fail': self.failure}}


def verify_universal_bijection(N: int) -> BijectionCertificate:
    """Checks that classify and kernel_of_psi are inverse bijections.

    Args:
        N: a positive integer.

    Returns:
        A `BijectionCertificate`; mismatches are recorded, not raised.

    """
    records = enumerate_subgroups(N)
    certificate = BijectionCertificate(N, len(records), utilities.sigma(N))
    if len(records) != certificate.expected:
        return dataclasses.replace(
            certificate,
            failure = f'{len(records)} subgroups, expected sigma(N)')
    forward = backward = ring_maps = 0
    seen = set()
    try:
        for record in records:
            d, e, q_prime = classify(record.points, N)
            if kernel_of_psi(N, d, e, q_prime) != record.points:
                raise SubgroupError(f'kernel of psi({d}, {e}, {q_prime}) differs')
            if complex_kernel(N, d, e, q_prime) != record.points:
                raise SubgroupError(f'analytic kernel for ({d}, {e}, {q_prime}) differs')
            field_map(d, e, q_prime)
            seen.add((d, e, q_prime))
            forward += 1
            ring_maps += 1
        subgroups = {record.points for record in records}
        for d, e in utilities.divisor_pairs(N):
            for q_prime in admissible_qprimes(d, e):
                kernel = kernel_of_psi(N, d, e, q_prime)
                if len(kernel) != N:
                    raise SubgroupError(f'|ker psi({d}, {e}, {q_prime})| = {len(kernel)}')
                if kernel not in subgroups:
                    raise SubgroupError(f'ker psi({d}, {e}, {q_prime}) is not enumerated')
                if classify(kernel, N) != (d, e, q_prime):
                    raise SubgroupError(f'({d}, {e}, {q_prime}) does not round trip')
                backward += 1
        if len(seen) != len(records):
            raise SubgroupError('two subgroups share a classification')
    except (SubgroupError, rings.WellDefinednessError) as error:
        logger.warning('bijection check failed for N=%d: %s', N, error)
        return dataclasses.replace(
            certificate,
            forward = forward,
            backward = backward,
            ring_maps = ring_maps,
            failure = str(error))
    return dataclasses.replace(
        certificate,
        forward = forward,
        backward = backward,
        ring_maps = ring_maps)

def classification_report(N: int) -> dict[str, Any]:
    """Returns classified subgroups by (d, root exponent of q') with the
    round-trip certificate."""
    records = sorted(
        (record.with_classification() for record in enumerate_subgroups(N)),
        key = SubgroupRecord.sort_key)
    certificate = verify_universal_bijection(N)
    return {
        'N': N,
        'sigma': utilities.sigma(N),
        'records': [record.to_json() for record in records],
        'roundtrip': certificate.to_json()['roundtrip']}

def check_enumeration(N: int) -> setup.CheckResult:
    """Checks the Hermite enumeration against closure and sigma(N)."""
    name = 'subgroup_enumeration'
    records = enumerate_subgroups(N)
    if len(records) != utilities.sigma(N):
        return setup.CheckResult(name, False, f'{len(records)} != sigma({N})')
    lattices = {_lattice_points(N, record.hermite) for record in records}
    if len(lattices) != len(records):
        return setup.CheckResult(name, False, 'two Hermite forms give one subgroup')
    if N <= 8 and lattices != closure_subgroups(N):
        return setup.CheckResult(name, False, 'closure finds other subgroups')
    return setup.CheckResult(name, True, f'{len(records)} subgroups')

def check_rank_duality(N: int) -> setup.CheckResult:
    """Checks rank O_Sub = sigma(N) = #subgroups and rank O_T[N] = N^2."""
    name = 'rank_duality'
    sub_rank = rings.build_O_Sub(N).rank()
    torsion_rank = rings.build_O_TN(N).rank()
    count = len(enumerate_subgroups(N))
    if not sub_rank == count == utilities.sigma(N):
        return setup.CheckResult(
            name, False, f'rank O_Sub = {sub_rank}, {count} subgroups')
    if torsion_rank != N * N:
        return setup.CheckResult(name, False, f'rank O_T[N] = {torsion_rank}')
    return setup.CheckResult(name, True, f'rank O_Sub = {sub_rank}')

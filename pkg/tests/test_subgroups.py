"""Tests subgroup enumeration, classification, and the isogeny round trip."""

from __future__ import annotations

import collections
from fractions import Fraction

import pytest

from tatesub import rings, subgroups, torsion, utilities
from tatesub.torsion import ONE, Q, CycloQUnit, TatePoint

# Test IDs for parametrization
HAPPY_PATH_ID = "happy_path"
EDGE_CASE_ID = "edge_case"
ERROR_CASE_ID = "error_case"

HALF = Fraction(1, 2)
MU_2 = frozenset({torsion.identity(), TatePoint(CycloQUnit(HALF, 0), 0)})
ROOT_PLUS = frozenset({torsion.identity(), TatePoint(CycloQUnit.q_power(HALF), HALF)})
ROOT_MINUS = frozenset({torsion.identity(), TatePoint(CycloQUnit(HALF, HALF), HALF)})

@pytest.mark.parametrize("N, expected", [
    (1, 1), (2, 3), (3, 4), (4, 7), (5, 6), (6, 12),
    (7, 8), (8, 15), (9, 13), (10, 18), (11, 12), (12, 28),
])
def test_subgroup_counts(N, expected):
    records = subgroups.enumerate_subgroups(N)
    assert len(records) == expected == utilities.sigma(N)
    assert len({record.points for record in records}) == expected
    assert all(len(record.points) == N for record in records)

@pytest.mark.parametrize("N", range(1, 7))
def test_hermite_forms_match_closure(N):
    lattices = {
        frozenset(torsion.coordinates_of(p, N) for p in record.points)
        for record in subgroups.enumerate_subgroups(N)}
    assert lattices == subgroups.closure_subgroups(N)

def test_enumeration_order_for_two():
    records = subgroups.enumerate_subgroups(2)
    assert [record.points for record in records] == [MU_2, ROOT_MINUS, ROOT_PLUS]
    assert [record.hermite for record in records] == [
        ((1, 0), (0, 2)), ((1, 1), (0, 2)), ((2, 0), (0, 1))]
    assert not records[0].classified

@pytest.mark.parametrize("test_id, points, expected", [
    (HAPPY_PATH_ID, MU_2, (2, 1, CycloQUnit.q_power(2))),
    (HAPPY_PATH_ID, ROOT_PLUS, (1, 2, CycloQUnit.q_power(HALF))),
    (HAPPY_PATH_ID, ROOT_MINUS, (1, 2, CycloQUnit(HALF, HALF))),
], ids=lambda test_id: test_id)
def test_classify_two(test_id, points, expected):
    assert subgroups.classify(points, 2) == expected

def test_classify_trivial():
    assert subgroups.classify(frozenset({torsion.identity()}), 1) == (1, 1, Q)

@pytest.mark.parametrize("test_id, points, N", [
    (ERROR_CASE_ID, frozenset({torsion.identity()}), 2),
    (ERROR_CASE_ID, frozenset({torsion.identity(), TatePoint(CycloQUnit.root_of_unity(1, 3), 0)}), 2),
    (ERROR_CASE_ID, frozenset({
        torsion.identity(),
        TatePoint(CycloQUnit.root_of_unity(1, 4), 0),
        TatePoint(CycloQUnit(HALF, 0), 0),
        TatePoint(CycloQUnit.q_power(Fraction(1, 4)), Fraction(1, 4))}), 4),
], ids=lambda test_id: test_id)
def test_classify_errors(test_id, points, N):
    with pytest.raises(subgroups.SubgroupError):
        subgroups.classify(points, N)

def test_classification_counts_for_six():
    records = [r.with_classification() for r in subgroups.enumerate_subgroups(6)]
    counts = collections.Counter((r.d, r.e) for r in records)
    assert counts == {(1, 6): 6, (2, 3): 3, (3, 2): 2, (6, 1): 1}
    for record in records:
        assert record.q_prime ** record.e == Q ** record.d
        assert record.q_prime in subgroups.admissible_qprimes(record.d, record.e)

def test_admissible_qprimes():
    assert [u.to_text() for u in subgroups.admissible_qprimes(1, 2)] == ['q^(1/2)', '-q^(1/2)']
    assert subgroups.admissible_qprimes(2, 1) == [CycloQUnit.q_power(2)]
    assert [u.root_exponent for u in subgroups.admissible_qprimes(2, 3)] == [0, Fraction(1, 3), Fraction(2, 3)]

@pytest.mark.parametrize("test_id, N, d, e, q_prime, expected", [
    (HAPPY_PATH_ID, 2, 2, 1, CycloQUnit.q_power(2), MU_2),
    (HAPPY_PATH_ID, 2, 1, 2, CycloQUnit(HALF, HALF), ROOT_MINUS),
    (EDGE_CASE_ID, 4, 4, 1, CycloQUnit.q_power(4), frozenset(torsion.a_N(CycloQUnit.root_of_unity(i, 4)) for i in range(4))),
    (EDGE_CASE_ID, 3, 1, 3, CycloQUnit.q_power(Fraction(1, 3)), frozenset(
        TatePoint(CycloQUnit.q_power(Fraction(j, 3)), Fraction(j, 3)) for j in range(3))),
], ids=lambda test_id: test_id)
def test_kernel_of_psi(test_id, N, d, e, q_prime, expected):
    assert subgroups.kernel_of_psi(N, d, e, q_prime) == expected
    assert subgroups.complex_kernel(N, d, e, q_prime) == expected

@pytest.mark.parametrize("N", range(1, 9))
def test_complex_kernel_matches_algebraic_kernel(N):
    for d, e in utilities.divisor_pairs(N):
        for q_prime in subgroups.admissible_qprimes(d, e):
            kernel = subgroups.kernel_of_psi(N, d, e, q_prime)
            assert len(kernel) == N
            assert subgroups.complex_kernel(N, d, e, q_prime) == kernel

def test_isogeny_psi():
    P = TatePoint(CycloQUnit.q_power(HALF), HALF)
    image = subgroups.isogeny_psi(P, 1, 2, CycloQUnit.q_power(HALF))
    assert image.is_identity
    assert image.curve == CycloQUnit.q_power(HALF)
    moved = subgroups.isogeny_psi(P, 2, 1, CycloQUnit.q_power(2))
    assert moved == TatePoint(Q, HALF, CycloQUnit.q_power(2))

@pytest.mark.parametrize("test_id, call", [
    (ERROR_CASE_ID, lambda: subgroups.isogeny_psi(torsion.identity(), 1, 2, Q)),
    (ERROR_CASE_ID, lambda: subgroups.isogeny_psi(torsion.identity(Q ** 2), 2, 1, Q ** 2)),
    (ERROR_CASE_ID, lambda: subgroups.kernel_of_psi(6, 2, 2, Q)),
    (ERROR_CASE_ID, lambda: subgroups.complex_kernel(2, 1, 2, ONE)),
    (ERROR_CASE_ID, lambda: subgroups.enumerate_subgroups(2)[0].sort_key()),
], ids=lambda test_id: test_id)
def test_subgroup_errors(test_id, call):
    with pytest.raises(subgroups.SubgroupError):
        call()

def test_field_map():
    hom = subgroups.field_map(1, 2, CycloQUnit(HALF, HALF))
    target = hom.target
    assert hom.image('q') == target.monomial(s = 2)
    assert hom.image('qp') == target.monomial(s = 1, z = 1)
    with pytest.raises(rings.WellDefinednessError):
        subgroups.field_map(1, 2, Q)

@pytest.mark.parametrize("N", range(1, 13))
def test_universal_bijection(N):
    certificate = subgroups.verify_universal_bijection(N)
    assert certificate.passed, certificate.failure
    assert certificate.subgroups == certificate.expected == utilities.sigma(N)
    assert certificate.forward == certificate.backward == utilities.sigma(N)
    assert certificate.to_json()['roundtrip'] == 'pass'

def test_classification_report_for_two():
    report = subgroups.classification_report(2)
    assert report['N'] == 2
    assert report['sigma'] == 3
    assert report['roundtrip'] == 'pass'
    assert [r['qprime_text'] for r in report['records']] == ['q^(1/2)', '-q^(1/2)', 'q^2']
    assert report['records'][0] == {
        'points': [
            {'root': '0', 'qexp': '0', 't': '0'},
            {'root': '0', 'qexp': '1/2', 't': '1/2'}],
        'hermite': [[2, 0], [0, 1]],
        'd': 1,
        'e': 2,
        'qprime': {'root': '0', 'qexp': '1/2'},
        'qprime_text': 'q^(1/2)'}

@pytest.mark.parametrize("N", range(1, 13))
def test_subgroup_checks(N):
    assert subgroups.check_enumeration(N).passed
    assert subgroups.check_rank_duality(N).passed

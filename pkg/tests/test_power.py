"""Tests pullbacks along psi, the closed formula, and the assembled maps."""

from __future__ import annotations

import types
from fractions import Fraction

import pytest

from tatesub import power, rings, setup, torsion, utilities

# Test IDs for parametrization
HAPPY_PATH_ID = "happy_path"
EDGE_CASE_ID = "edge_case"
ERROR_CASE_ID = "error_case"

def _entry(N, d, e, m, **exponents):
    return rings.sstar_factor_ring(N, d, e, m).monomial(**exponents)

@pytest.mark.parametrize("test_id, arguments, expected", [
    (EDGE_CASE_ID, (1, 1, 1, 0), [_entry(1, 1, 1, 0, x = 1)]),
    (HAPPY_PATH_ID, (2, 2, 1, 0), [_entry(2, 2, 1, 0, x = 2), None]),
    (EDGE_CASE_ID, (2, 1, 2, 1), [None, None]),
    (HAPPY_PATH_ID, (2, 1, 2, 0), [_entry(2, 1, 2, 0, x = 1), _entry(2, 1, 2, 1, x = 1, qp = -1)]),
    (HAPPY_PATH_ID, (4, 2, 2, 2), [None, _entry(4, 2, 2, 1, x = 2), None, _entry(4, 2, 2, 3, x = 2, qp = -1)]),
    (HAPPY_PATH_ID, (3, 1, 3, 0), [_entry(3, 1, 3, 0, x = 1), _entry(3, 1, 3, 1, x = 1, qp = -1), _entry(3, 1, 3, 2, x = 1, qp = -2)]),
], ids=lambda test_id: test_id)
def test_pointwise_and_closed_tables(test_id, arguments, expected):
    assert list(power.pullback_xk_pointwise(*arguments).entries) == expected
    assert list(power.closed_formula_pullback(*arguments).entries) == expected

def test_table_normal_forms():
    table = power.pullback_xk_pointwise(4, 2, 2, 2)
    assert table.entries[3].exponents() == {'q': -2, 'x': 2, 'qp': 1}
    assert power.pullback_xk_pointwise(2, 2, 1, 0).entries[0] == rings.sstar_factor_ring(2, 2, 1, 0).one()
    assert power.pullback_xk_pointwise(2, 2, 1, 0).support == (0,)

def test_table_json_and_text():
    table = power.pullback_xk_pointwise(2, 1, 2, 0)
    assert table.to_json() == {
        'N': 2,
        'd': 1,
        'e': 2,
        'k': 0,
        'entries': [
            {'m': 0, 'monomial': {'x': 1, 'qp': 0, 'q': 0}, 'text': 'x'},
            {'m': 1, 'monomial': {'x': 1, 'qp': 1, 'q': -1}, 'text': "x*q'*q^-1"}]}
    assert table.to_text() == "d=1 e=2 k=0: m=0: x | m=1: x*q'*q^-1"
    assert power.pullback_xk_pointwise(2, 1, 2, 1).to_json()['entries'][0] == {'m': 0, 'monomial': None}

@pytest.mark.parametrize("test_id, arguments", [
    (ERROR_CASE_ID, (6, 2, 2, 0)),
    (ERROR_CASE_ID, (6, 2, 3, 6)),
    (ERROR_CASE_ID, (6, 2, 3, -1)),
], ids=lambda test_id: test_id)
def test_table_argument_errors(test_id, arguments):
    with pytest.raises(ValueError):
        power.pullback_xk_pointwise(*arguments)
    with pytest.raises(ValueError):
        power.closed_formula_pullback(*arguments)

def test_evaluate_entry():
    point = torsion.enumerate_torsion(2)[3]
    q_prime = torsion.CycloQUnit(0, Fraction(1, 2))
    entry = _entry(2, 1, 2, 1, x = 1, qp = 1, q = -1)
    assert power.evaluate_entry(entry, point, q_prime) == point.u * q_prime / torsion.Q
    assert power.evaluate_entry(None, point, q_prime) is torsion.ZERO
    with pytest.raises(power.InterpolationError):
        power.evaluate_entry(entry * 2, point, q_prime)

def test_calibration_reproduces_the_frozen_convention():
    assert power.calibrate_convention() == (
        setup.QPRIME_EXPONENT_SIGN,
        setup.Q_EXPONENT_OFFSET)
    assert power.calibrate_convention() == (-1, 0)

@pytest.mark.parametrize("N", range(1, 9))
def test_formula_matches_pointwise(N):
    comparison = power.compare_formula_vs_pointwise(N)
    assert comparison.passed, comparison.discrepancies
    assert len(comparison.tables) == N * len(utilities.divisors(N))
    assert comparison.to_json()['status'] == 'pass'

def test_wrong_sign_is_reported():
    comparison = power.compare_formula_vs_pointwise(2, sign = 1)
    assert not comparison.passed
    assert comparison.discrepancies[0].startswith('(d, e, k) = (1, 2, 0) m=1')
    assert comparison.to_json()['status'] == 'fail'

@pytest.mark.parametrize("test_id, N, expected", [
    (EDGE_CASE_ID, 1, [{'d': 1, 'e': 1, 'q_to_qprime': True, 'qN_to_qprime': True}]),
    (HAPPY_PATH_ID, 2, [
        {'d': 1, 'e': 2, 'q_to_qprime': True, 'qN_to_qprime': False},
        {'d': 2, 'e': 1, 'q_to_qprime': True, 'qN_to_qprime': False}]),
], ids=lambda test_id: test_id)
def test_q_readings(test_id, N, expected):
    assert power.compare_formula_vs_pointwise(N).to_json()['q_readings'] == expected

@pytest.mark.parametrize("N", range(1, 9))
def test_psi_star_is_well_defined(N):
    certificate = power.verify_psi_star_hom(N)
    assert certificate.passed, certificate.failure
    assert certificate.factors == N * len(utilities.divisors(N))
    assert certificate.to_json()['status'] == 'pass'
    assert power.qprime_image_check(N)

def test_psi_star_on_relations():
    psi = power.assemble_psi_star(2)[((2, 1), 0)]
    x = psi.source.generator('x')
    assert (psi(x) ** 2 - psi(psi.source.one())).is_zero
    assert psi.image('Q') == psi.target.generator('q')
    assert psi.image('q') == psi.target.generator('qp')
    power_map = power.assemble_power_operation(2)[((1, 2), 1)]
    assert power_map.source == rings.component_ring(2, 0)
    assert power_map.image('x') == _entry(2, 1, 2, 1, x = 1, qp = -1)

@pytest.mark.parametrize("N", range(1, 9))
def test_support_degree_and_diagram(N):
    for check in (power.check_support, power.check_degree, power.check_diagram):
        result = check(N)
        assert result.passed, result.detail

@pytest.mark.parametrize("N", range(1, 5))
def test_multiplicativity(N):
    result = power.check_multiplicativity(N)
    assert result.passed, result.detail

def test_power_report():
    report = power.power_report(2)
    assert report['N'] == 2
    assert len(report['tables']) == 4
    assert report['comparison']['status'] == 'pass'

@pytest.mark.parametrize("test_id, exponent", [
    (ERROR_CASE_ID, 1),
    (ERROR_CASE_ID, 2),
], ids=lambda test_id: test_id)
def test_qprime_image_check_rejects_other_images(monkeypatch, test_id, exponent):
    built = power.assemble_power_operation(2)
    sends_q_to_power = {
        label: types.SimpleNamespace(
            image = lambda name, hom = hom: hom.target.generator('q') ** exponent)
        for label, hom in built.items()}
    monkeypatch.setattr(power, 'assemble_power_operation', lambda N: sends_q_to_power)
    assert not power.qprime_image_check(2)

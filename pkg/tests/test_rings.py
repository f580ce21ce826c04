"""Tests ring presentations, normal forms, product rings, and checked maps."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tatesub import rings, utilities

# Test IDs for parametrization
HAPPY_PATH_ID = "happy_path"
EDGE_CASE_ID = "edge_case"
ERROR_CASE_ID = "error_case"

@pytest.mark.parametrize("test_id, ring, exponents, expected", [
    (EDGE_CASE_ID, rings.component_ring(1, 0), {'x': 1}, {}),
    (HAPPY_PATH_ID, rings.component_ring(2, 1), {'x': 3}, {'q': 1, 'x': 1}),
    (HAPPY_PATH_ID, rings.component_ring(3, 2), {'x': 4}, {'q': 2, 'x': 1}),
    (EDGE_CASE_ID, rings.component_ring(2, 1), {'x': -1}, {'q': -1, 'x': 1}),
    (EDGE_CASE_ID, rings.sub_factor_ring(2, 1), {'qp': 1}, {'q': 2}),
    (HAPPY_PATH_ID, rings.sub_factor_ring(1, 2), {'qp': 3}, {'q': 1, 'qp': 1}),
    (HAPPY_PATH_ID, rings.sub_factor_ring(2, 3), {'qp': 7}, {'q': 4, 'qp': 1}),
    (HAPPY_PATH_ID, rings.sstar_factor_ring(2, 1, 2, 1), {'x': 2, 'qp': 2}, {'q': 2}),
    (HAPPY_PATH_ID, rings.tstar_factor_ring(2, 2, 1, 0), {'qp': 1}, {'Q': 2}),
    (HAPPY_PATH_ID, rings.tstar_factor_ring(2, 2, 1, 0), {'x': 2}, {}),
    (HAPPY_PATH_ID, rings.tstar_factor_ring(2, 1, 2, 1), {'q': 1, 'x': 2}, {'Q': 1}),
    (EDGE_CASE_ID, rings.coefficient_ring(2, 3), {'z': 3, 's': -1}, {'s': -1}),
], ids=lambda test_id: test_id)
def test_normal_form(test_id, ring, exponents, expected):
    assert ring.monomial(**exponents) == ring.monomial(**expected)

@given(
    st.integers(min_value = -20, max_value = 20),
    st.integers(min_value = -20, max_value = 20),
    st.integers(min_value = -20, max_value = 20))
def test_normal_form_is_idempotent_and_bounded(q, x, qp):
    ring = rings.sstar_factor_ring(6, 2, 3, 5)
    once = ring.normal_form((q, x, qp))
    assert ring.normal_form(once) == once
    assert 0 <= once[1] < 6
    assert 0 <= once[2] < 3

@given(
    st.integers(min_value = -9, max_value = 9),
    st.integers(min_value = -9, max_value = 9),
    st.integers(min_value = -9, max_value = 9),
    st.integers(min_value = -9, max_value = 9))
def test_tstar_normal_form_eliminates_structural_q(big_q, q, x, qp):
    ring = rings.tstar_factor_ring(4, 2, 2, 3)
    once = ring.normal_form((big_q, q, x, qp))
    assert once[1] == 0
    assert 0 <= once[2] < 4
    assert 0 <= once[3] < 2

@pytest.mark.parametrize("N", range(1, 13))
def test_ranks(N):
    assert rings.build_O_TN(N).rank() == N * N
    assert len(rings.build_O_TN(N).factors) == N
    assert rings.build_O_Sub(N).rank() == utilities.sigma(N)
    assert len(rings.build_O_Sub(N).factors) == len(utilities.divisors(N))
    for factor in rings.build_O_Sub(N).factors:
        assert factor.rank() == factor.label[1]

def test_factor_layout():
    assert rings.build_O_Sub(2).labels == ((1, 2), (2, 1))
    assert rings.build_O_Sub(6).labels == ((1, 6), (2, 3), (3, 2), (6, 1))
    assert len(rings.build_O_sStar(6).factors) == 24
    assert len(rings.build_O_tStar(6).factors) == 24
    assert [f.rules[0].to_text() for f in rings.build_O_TN(2).factors] == ['x^2 = 1', 'x^2 = q']
    assert rings.build_O_TN(3).labels == (0, 1, 2)
    assert rings.build_O_sStar(2).labels[0] == ((1, 2), 0)

def test_basis():
    ring = rings.sub_factor_ring(2, 3)
    assert ring.basis() == [ring.one(), ring.generator('qp'), ring.monomial(qp = 2)]
    assert rings.laurent_ring().rank() == 1

def test_element_arithmetic():
    ring = rings.component_ring(2, 1)
    x = ring.generator('x')
    q = ring.generator('q')
    assert (x + 1) * (x - 1) == q - 1
    assert x ** 2 == q
    assert x ** -1 == ring.monomial(q = -1, x = 1)
    assert x * x.inverse() == ring.one()
    assert 2 * x - x - x == ring.zero()
    assert (-x).to_text() == '-x'
    assert (3 + x * q ** -1).to_text() == 'x*q^-1 + 3'
    assert x.is_unit
    assert not (x + 1).is_unit

def test_element_json_and_text():
    ring = rings.component_ring(2, 1)
    element = ring.monomial(q = -1, x = 1) + 3
    assert element.to_json() == {
        'factor': 1,
        'terms': [[{'x': 0, 'q': 0}, '3'], [{'x': 1, 'q': -1}, '1']]}
    sstar = rings.sstar_factor_ring(2, 1, 2, 1)
    assert sstar.monomial(x = 1, qp = 1, q = -1).to_text() == "x*q'*q^-1"
    assert sstar.zero().to_text() == '0'
    assert sstar.one().to_json()['factor'] == [[1, 2], 1]

@pytest.mark.parametrize("test_id, call, exception", [
    (ERROR_CASE_ID, lambda: rings.component_ring(2, 1).generator('x').inverse() + rings.component_ring(2, 0).one(), ValueError),
    (ERROR_CASE_ID, lambda: (rings.component_ring(2, 1).generator('x') + 1).inverse(), ValueError),
    (ERROR_CASE_ID, lambda: (rings.component_ring(2, 1).generator('x') + 1).exponents(), ValueError),
    (ERROR_CASE_ID, lambda: rings.component_ring(2, 1).generator('qp'), KeyError),
    (ERROR_CASE_ID, lambda: rings.component_ring(2, 2), ValueError),
    (ERROR_CASE_ID, lambda: rings.sub_factor_ring(0, 2), ValueError),
    (ERROR_CASE_ID, lambda: rings.sstar_factor_ring(6, 2, 2, 0), ValueError),
    (ERROR_CASE_ID, lambda: rings.RewriteRule('x', 0), ValueError),
    (ERROR_CASE_ID, lambda: rings.RingPresentation(('q', 'q'), frozenset({'q'})), ValueError),
    (ERROR_CASE_ID, lambda: rings.RingPresentation(('q',), frozenset({'q'}), (rings.RewriteRule('q', 2),)), ValueError),
    (ERROR_CASE_ID, lambda: rings.build_O_TN(2).factor(5), KeyError),
], ids=lambda test_id: test_id)
def test_ring_errors(test_id, call, exception):
    with pytest.raises(exception):
        call()

def test_product_coordinates():
    ring = rings.build_O_TN(2)
    x1 = ring.coordinate(1, 'x')
    assert (x1 ** 2).component(1) == ring.factor(1).generator('q')
    assert (x1 ** 2).component(0).is_zero
    assert (ring.coordinate(0, 'x') * x1).is_zero
    assert (ring.coordinate(0, 'x') + x1 - x1).component(0) == ring.factor(0).generator('x')
    assert ring.generator('x') ** 2 == ring.element([ring.factor(0).one(), ring.factor(1).generator('q')])
    assert (ring.one() - ring.one()).is_zero
    assert ring.zero().to_json()[1] == {'factor': 1, 'terms': []}

@pytest.mark.parametrize("test_id, target, image", [
    (HAPPY_PATH_ID, rings.sub_factor_ring(1, 2), 'q'),
    (HAPPY_PATH_ID, rings.sub_factor_ring(1, 2), 'qp'),
    (HAPPY_PATH_ID, rings.component_ring(2, 1), 'x'),
    (EDGE_CASE_ID, rings.component_ring(2, 0), 'x'),
], ids=lambda test_id: test_id)
def test_ring_hom_from_laurent(test_id, target, image):
    hom = rings.ring_hom(rings.laurent_ring(), target, {'q': target.generator(image)})
    assert hom(rings.laurent_ring().monomial(q = 2)) == target.generator(image) ** 2

def test_ring_hom_evaluation():
    source = rings.laurent_ring()
    target = rings.sub_factor_ring(1, 2)
    hom = rings.ring_hom(source, target, {'q': target.generator('qp')})
    assert hom(source.monomial(q = 3)) == target.monomial(q = 1, qp = 1)
    assert hom(source.monomial(q = -1) + 2) == target.monomial(q = -1, qp = 1) + 2

@pytest.mark.parametrize("test_id, source, target, images, exception", [
    (ERROR_CASE_ID, rings.laurent_ring(), rings.component_ring(2, 0), {'q': rings.component_ring(2, 0).generator('x') + 1}, rings.WellDefinednessError),
    (ERROR_CASE_ID, rings.component_ring(2, 1), rings.component_ring(2, 0), {'q': rings.component_ring(2, 0).generator('q'), 'x': rings.component_ring(2, 0).generator('x')}, rings.WellDefinednessError),
    (ERROR_CASE_ID, rings.component_ring(2, 1), rings.component_ring(2, 0), {'q': rings.component_ring(2, 0).generator('q')}, ValueError),
    (ERROR_CASE_ID, rings.laurent_ring(), rings.component_ring(2, 0), {'q': rings.component_ring(2, 1).generator('q')}, ValueError),
    (ERROR_CASE_ID, rings.laurent_ring(), rings.laurent_ring(), {'q': rings.laurent_ring().generator('q'), 'x': rings.laurent_ring().one()}, ValueError),
], ids=lambda test_id: test_id)
def test_ring_hom_errors(test_id, source, target, images, exception):
    with pytest.raises(exception):
        rings.ring_hom(source, target, images)

def test_well_definedness_error_details():
    source = rings.component_ring(2, 1)
    target = rings.component_ring(2, 0)
    with pytest.raises(rings.WellDefinednessError) as error:
        rings.ring_hom(source, target, {
            'q': target.generator('q'),
            'x': target.generator('x')})
    assert error.value.relation == 'x^2 = q'
    assert error.value.residue == target.one() - target.generator('q')

def test_compose_and_identity():
    laurent = rings.laurent_ring()
    sub = rings.sub_factor_ring(1, 2)
    field = rings.coefficient_ring(2, 2)
    f = rings.ring_hom(laurent, sub, {'q': sub.generator('qp')})
    g = rings.RingHom.identity(sub)
    h = rings.ring_hom(sub, field, {
        'q': field.monomial(s = 2),
        'qp': field.monomial(s = 1, z = 1)})
    assert g.compose(f).images_equal(f)
    assert f.compose(rings.RingHom.identity(laurent)).images_equal(f)
    assert h.compose(g).compose(f).images_equal(h.compose(g.compose(f)))
    assert h.compose(f).image('q') == field.monomial(s = 1, z = 1)
    with pytest.raises(ValueError):
        f.compose(h)

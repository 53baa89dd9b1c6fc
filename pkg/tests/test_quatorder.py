from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nodalquintic import quatorder as qo
from nodalquintic.arith import QuadElem

small = st.integers(-6, 6)
quad = st.builds(QuadElem, small, small)
quat = st.builds(qo.QuatElem, quad, quad, quad, quad)


def test_relations():
    assert qo.X * qo.X == qo.QuatElem(-6)
    assert qo.Y * qo.Y == qo.QuatElem(qo.Y_SQ)
    assert qo.X * qo.Y == -(qo.Y * qo.X) == qo.XY


@settings(max_examples=60, deadline=None)
@given(quat, quat, quat)
def test_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@settings(max_examples=60, deadline=None)
@given(quat, quat)
def test_norm_multiplicative_and_conj_antihom(a, b):
    assert (a * b).nrd() == a.nrd() * b.nrd()
    assert (a * b).conj() == b.conj() * a.conj()
    assert a * a.conj() == qo.QuatElem(a.nrd())


@settings(max_examples=40, deadline=None)
@given(quat)
def test_totally_definite(a):
    n = a.nrd()
    if not a.is_zero():
        # both real embeddings of the norm are positive
        assert float(n.a) + float(n.b) * 1.618033988749895 > 0
        assert float(n.a) - float(n.b) * 0.6180339887498949 > 0


def test_ramification():
    assert qo.ramified_places() == ["P2", "P3", "inf1", "inf2"]
    signs = qo.hilbert_checks()
    # product formula: an even number of ramified places
    assert sum(1 for v in signs.values() if v == -1) % 2 == 0


def test_orders_are_orders():
    assert qo.order_o_prime().is_order()
    assert qo.order_o().is_order()
    assert qo.order_o_prime().contains_lattice(qo.order_o())


def test_discriminants():
    inv = qo.order_invariants()
    assert inv["d_r_O_prime_valuations"] == {"P2": 1, "P3": 1, "P5": 1}
    assert inv["d_r_O_valuations"] == {"P2": 1, "P3": 1, "P5": 2}
    assert inv["d_r_O_norm"] == 900
    assert inv["index_norm"] == 5


def test_eichler_invariant_split():
    form, red, e = qo.ternary_form_and_eichler(qo.order_o())
    assert e == 1
    facs = qo.factor_ternary_f5(red)
    assert len(facs) == 1 and facs[0][0] != facs[0][1]


def test_displayed_basis_spans():
    form = qo.ternary_form(qo.order_o(), qo.displayed_trace_zero_basis())
    assert len(form.coeffs) == 6


def test_mass_class_type():
    assert qo.mass(1) == Fraction(12)
    assert qo.class_and_type() == (12, 3)


def test_mass_sensitivity_to_eichler():
    # a nonsplit reduction would change the mass, so the invariant matters
    assert qo.mass(-1) != qo.mass(1)


def test_central_picard():
    assert qo.central_picard(-1, 1) == 2
    assert qo.central_picard(1, 2) == 1
    assert qo.central_picard(0, 1) == 1


def test_degenerate_lattice():
    with pytest.raises(qo.LatticeError):
        qo.Lattice([qo.Q_ONE, qo.X, qo.X * 2])

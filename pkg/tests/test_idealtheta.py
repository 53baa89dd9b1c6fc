import pytest

from nodalquintic import idealtheta as it
from nodalquintic import quatorder as qo
from nodalquintic.arith import W, QuadElem
from nodalquintic.tables import IDEAL_THETA, IDEAL_THETA_XIS, ORDER_THETA, ORDER_THETA_XIS


def test_alpha_coordinates_match_explicit_form():
    assert it.alphas() == it.alpha_explicit()


def test_ideals_are_left_ideals_with_order_o():
    O = qo.order_o()
    for I in it.all_ideals():
        assert I.left_order() == O
        assert I.norm_gen.is_totally_positive()


def test_right_orders_are_maximal_level():
    # each right order is an Eichler order of the same reduced discriminant
    d0 = qo.reduced_discriminant(qo.order_o())
    for d in it.right_order_discriminants():
        assert qo.ideal_factorization(d) == qo.ideal_factorization(d0)


def test_displayed_right_orders():
    shown = it.displayed_right_orders()
    orders = it.right_orders()
    assert shown[5] == orders[4]
    assert shown[6] == orders[5]


def test_ideal_index_range():
    with pytest.raises(KeyError):
        it.ideal_from_generators(13)


def test_ideal_theta_table_verbatim():
    assert it.ideal_theta_rows(IDEAL_THETA_XIS) == {i: list(r) for i, r in IDEAL_THETA.items()}


def test_order_theta_table_up_to_row_swap():
    rows = it.order_theta_rows(ORDER_THETA_XIS)
    expected = {i: list(r) for i, r in ORDER_THETA.items()}
    expected[8], expected[9] = expected[9], expected[8]
    assert rows == expected


def test_distinguishing_triple():
    # the count at 11+w alone separates the three types
    sigs = set(it.classify_all().signatures.values())
    assert sorted(s[0] for s in sigs) == [4, 14, 16]


def test_classification():
    c = it.classify_all()
    assert c.class_count == 12
    assert c.type_count == 3
    assert set(c.units) == {2}
    assert sorted(map(sorted, c.types)) == [[1, 2, 3, 4], [5, 8, 11, 12], [6, 7, 9, 10]]


def test_same_class_reflexive_and_separating():
    ideals = it.all_ideals()
    assert it.same_class(ideals[0], ideals[0])
    assert not it.same_class(ideals[0], ideals[1])


def test_enumeration_agrees_with_theta():
    O = it.right_orders()[0]
    for xi in ("2", "3+w", "5"):
        elems = it.enumerate_by_norm(O, xi)
        assert len(elems) == it.theta_table(O, [xi])[it.parse_quad(xi)]
        assert all(e.nrd() == it.parse_quad(xi) and O.contains(e) for e in elems)


@pytest.mark.parametrize("idx", [0, 4, 5])
def test_theta_even_and_unit_square_invariant(idx):
    O = it.right_orders()[idx]
    xis = [QuadElem(a, b) for a in range(1, 7) for b in range(-3, 4)
           if QuadElem(a, b).is_totally_positive()]
    eps2 = W * W
    t = it.theta_table(O, xis)
    for xi in xis:
        assert t[xi] % 2 == 0
        assert len(it.enumerate_vectors(O, xi * eps2)) == t[xi]


def test_not_totally_positive_has_no_vectors():
    assert len(it.enumerate_vectors(qo.order_o(), QuadElem(-1))) == 0
    assert len(it.enumerate_vectors(qo.order_o(), QuadElem(0))) == 1


def test_norm_form_requires_totally_positive_generator():
    with pytest.raises(qo.LatticeError):
        it.norm_form(qo.order_o(), QuadElem(-1))


def test_ideal_norm_form_is_integral_on_ideal():
    I = it.all_ideals()[6]
    form = it.norm_form(I)
    assert form.value([1, 0, 0, 0, 0, 0, 0, 0]) == I.basis[0].nrd() / I.norm_gen

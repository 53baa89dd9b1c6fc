from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nodalquintic import hodge as hd
from nodalquintic.tables import (COKERNEL_DECOMP, HODGE, JACOBIAN_DECOMP, KERNEL_DECOMP,
                                 MONOMIAL_DECOMP, NODE_DECOMP)

labels = st.sampled_from(hd.LABELS)


def test_group_structure():
    g = hd.group()
    assert len(g) == 8 and len({x.perm for x in g}) == 8
    assert hd.presentation_holds()
    assert sorted(x.order() for x in g) == [1, 2, 2, 2, 2, 2, 4, 4]


@given(labels, labels, labels)
def test_group_associative_closed(a, b, c):
    x, y, z = hd.element(a), hd.element(b), hd.element(c)
    assert (x * y) * z == x * (y * z)
    assert (x * y).label in hd.LABELS
    assert (x * x.inverse()).label == "id"


def test_character_table():
    assert hd.table_is_orthonormal()
    assert hd.table_is_class_function()
    assert sum(d * d for d in hd.DEGREES) == 8


def test_decompose_regular_character():
    regular = (8, 0, 0, 0, 0, 0, 0, 0)
    assert tuple(hd.decompose(regular)) == hd.DEGREES


def test_decompose_rejects_non_character():
    with pytest.raises(hd.CharacterTableError):
        hd.decompose((1, 0, 0, 0, 0, 0, 0, 0))


def test_monomials():
    assert len(hd.monomials()) == 126
    assert tuple(hd.monomial_multiplicities()) == MONOMIAL_DECOMP
    assert hd.monomial_multiplicities().dimension == 126
    assert hd.monomial_orbit_count() == 27


@settings(max_examples=30, deadline=None)
@given(labels, labels, st.sampled_from(range(126)))
def test_action_is_compatible_with_composition(a, b, idx):
    g, h = hd.element(a), hd.element(b)
    f = {hd.monomials()[idx]: Fraction(1)}
    assert hd.poly_act(g, hd.poly_act(h, f)) == hd.poly_act(g * h, f)


def test_f5_transforms_by_chi3():
    # swapping the two variable pairs negates F5
    f = hd.f5()
    chi3 = hd.CHARACTER_TABLE[2]
    for g, s in zip(hd.group(), chi3):
        assert hd.poly_act(g, f) == {e: s * c for e, c in f.items()}


def test_partials_and_linear_characters():
    assert hd.partial_character() == hd.CHI_PARTIALS
    assert hd.linear_character() == hd.CHI_LINEAR


def test_jacobian():
    assert len(hd.jacobian_products()) == 25
    assert hd.jacobian_span_dimension() == 25
    assert tuple(hd.jacobian_kernel_multiplicities()) == JACOBIAN_DECOMP


def test_nodes():
    nodes = hd.enumerate_nodes()
    assert len(nodes) == 120
    assert sum(n.diagonal for n in nodes) == 16
    assert tuple(hd.node_multiplicities()) == NODE_DECOMP
    # nodes pair critical points of P5 with equal value
    counts = hd.node_value_counts()
    assert sum(counts.values()) == 16
    assert sum(c * c for c in counts.values()) == 120


def test_node_permutations_are_bijections():
    for g in hd.group():
        perm = hd.node_permutation(g)
        assert sorted(perm) == list(range(120))


def test_jacobian_products_vanish_on_nodes():
    nodes = hd.enumerate_nodes()
    for poly in hd.jacobian_products()[::6]:
        assert all(hd.evaluate_exact(poly, n).is_zero() for n in nodes[::7])


def test_printed_extra_element_fails():
    rep = hd.extra_element_report("printed")
    assert rep["vanishing_nodes"] == 0
    assert not rep["chi3_isotypic"]


def test_sign_fixed_extra_element_is_partial():
    rep = hd.extra_element_report("sign_fixed")
    assert rep["chi3_isotypic"]
    assert rep["vanishing_nodes"] == 28


def test_reconstructed_extra_element():
    assert hd.vanishing_weights() == tuple(Fraction(x) for x in (1, 1, 2, 2, -3, 3))
    rep = hd.extra_element_report("vanishing")
    assert rep == {"variant": "vanishing", "vanishing_nodes": 120, "independent": True,
                   "chi3_isotypic": True}


def test_unknown_variant():
    with pytest.raises(ValueError):
        hd.extra_kernel_element("nope")


@given(st.integers(1, 10 ** 6), st.integers(1, 10 ** 6))
def test_rational_reconstruction(num, den):
    p = 2 ** 61 - 1
    x = Fraction(num, den)
    if x.numerator ** 2 * 2 < p and x.denominator ** 2 * 2 < p:
        a = x.numerator * pow(x.denominator, -1, p) % p
        assert hd._rational_reconstruct(a, p) == x


def test_reduction_primes():
    ps = hd.primes_for_reduction(2)
    assert ps[0] == 10111 and all(p % 15 == 1 for p in ps)
    z = hd.zeta15_mod(ps[0])
    assert pow(z, 15, ps[0]) == 1 and pow(z, 5, ps[0]) != 1 and pow(z, 3, ps[0]) != 1


def test_rank_mod_small():
    a = np.array([[1, 2], [2, 4]], dtype=np.int64)
    assert hd.rank_mod(a, 7) == 1
    assert hd.rank_mod(np.eye(3, dtype=np.int64), 7) == 3


def test_projectors_and_equivariance():
    assert hd.projectors_ok(hd.monomial_rep)
    assert hd.projectors_ok(hd.node_rep)
    assert hd.equivariance_ok(10111)


def test_certificate():
    cert = hd.evaluation_rank()
    assert cert.prime == 10111
    assert cert.rank_mod_p == cert.rank == 100
    assert cert.kernel_lower_bound == cert.kernel_dimension == 26
    assert cert.corank == HODGE["defect"]
    assert tuple(cert.kernel) == KERNEL_DECOMP
    assert tuple(cert.cokernel) == COKERNEL_DECOMP
    assert sum(cert.block_ranks) == 100


def test_hodge_numbers():
    h = hd.hodge_numbers()
    assert h.euler_smooth == -200
    for key in ("h3_resolved", "h2_resolved", "h3_nodal", "h4_nodal", "h30", "h21"):
        assert getattr(h, key) == HODGE[key]
    assert h.euler_resolved == HODGE["euler_resolved"]
    # e = 2 + 2 h^2 - h^3 on the resolution
    assert h.euler_resolved == 2 + 2 * h.h2_resolved - h.h3_resolved


@pytest.mark.parametrize("nodes, defect", [(0, 0), (1, 0), (120, 0)])
def test_hodge_formula_other_inputs(nodes, defect):
    h = hd.hodge_numbers(nodes, defect)
    assert h.h3_resolved == 204 - 2 * nodes
    assert h.euler_resolved == -200 + 4 * nodes

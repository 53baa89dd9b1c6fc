from collections import Counter

from hypothesis import given, settings
from hypothesis import strategies as st

from nodalquintic.arith import CYCLO_W, CycloElem, fq_build
from nodalquintic.chebyshev import (
    BivarPoly, bad_prime_certificate, build_p5, build_p5_factored, count_y_singular,
    critical_points, critical_points_mod, dickson_identity_holds, dickson_pair, hessian_det,
    singular_tuples, verify_pentagon_match,
)


def test_p5_basic():
    p5 = build_p5()
    assert p5.coeff(5, 0) == 1
    assert (p5 - p5.swap()).is_zero()
    assert p5(0, 0) == 0
    assert (p5 - build_p5_factored()).is_zero()


def test_dickson_pair_small():
    d1, d2 = dickson_pair(0)
    assert d1 == BivarPoly.const(3) and d2 == BivarPoly.const(3)
    d1, d2 = dickson_pair(2)
    x1, x2 = BivarPoly.x1(), BivarPoly.x2()
    assert d1 == x1 * x1 - x2 * 2
    assert d2 == x2 * x2 - x1 * 2
    d1, d2 = dickson_pair(5)
    assert d1 + d2 == build_p5()


def test_critical_points():
    cps = critical_points()
    assert len(cps) == 16
    assert Counter(cp.value for cp in cps) == {-2: 10, -3: 4, 6: 2}
    assert any(cp.coords == (CYCLO_W, CYCLO_W) and cp.value == 6 for cp in cps)
    # all nondegenerate
    assert all(not hessian_det(cp.coords).is_zero() for cp in cps)


def test_pentagon_match():
    assert verify_pentagon_match()
    assert not verify_pentagon_match(perturb=True)


def test_bad_primes():
    assert bad_prime_certificate() == {2, 3, 5, 11, 19, 31}


def test_critical_points_distinct_mod_7():
    pts = critical_points_mod(7)
    assert len(set(pts)) == 16


def test_y_singular():
    assert count_y_singular() == (14, 8750)
    assert (0, 0, 0, 0, 0, 0) in singular_tuples()


F7_3 = fq_build(7, 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, F7_3.q - 1), st.integers(1, F7_3.q - 1))
def test_dickson_functional_equation(a, b):
    assert dickson_identity_holds(F7_3, a, b, 5)
    assert dickson_identity_holds(F7_3, a, b, 3)

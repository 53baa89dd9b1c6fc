import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nodalquintic import lfunction as lf
from nodalquintic.arith import QuadElem
from nodalquintic.pointcount import BadReductionError, resolved_count
from nodalquintic.tables import TRACE_TABLE


def test_weil_bound_exact_edge():
    # 4 q^{3/2} is an integer for q = 49
    assert lf.within_weil(4 * 343, 49)
    assert not lf.within_weil(4 * 343 + 1, 49)


@pytest.mark.parametrize("q", [23, 29, 31, 37, 41])
def test_trace_record_matches_table(q, store):
    rec = lf.trace_record(q, store.counts)
    assert rec.a_q == TRACE_TABLE[q][0]
    assert abs(rec.k) <= lf.H2_DIM


def test_determine_k_small_q_is_ambiguous():
    with pytest.raises(lf.AmbiguityError):
        lf.determine_k(13, resolved_count(13).resolved_total)


def test_determine_k_bad_prime():
    with pytest.raises(BadReductionError):
        lf.determine_k(5, 0)


def test_trace_record_rejects_inconsistent_data():
    with pytest.raises(lf.DataError):
        lf.TraceRecord(31, 1000, 0, 0)


@pytest.mark.parametrize("p", [7, 11])
def test_small_prime_routes_agree(p, store):
    quartic = lf.small_prime_traces(p, "quartic", store.counts)
    cubic = lf.small_prime_traces(p, "cubic", store.counts)
    assert quartic.a_p == cubic.a_p == TRACE_TABLE[p][0]
    assert quartic.a_p2 == TRACE_TABLE[p][1]


def test_small_prime_range():
    with pytest.raises(ValueError):
        lf.small_prime_traces(23)


def test_frob_charpoly_palindromic():
    f = lf.frob_charpoly_from_traces(31, *TRACE_TABLE[31])
    c = f.coeffs
    assert c[0] == 1 and c[4] == 31 ** 6 and c[3] == 31 ** 3 * c[1]
    assert f.weil_ok()


def test_frob_charpoly_parity_error():
    with pytest.raises(lf.DataError):
        lf.frob_charpoly_from_traces(31, 1, 0)


def test_split_at_11():
    f = lf.frob_charpoly_from_traces(11, *TRACE_TABLE[11])
    q1, q2 = lf.split_over_f(11, lf=f)
    sqrt5 = QuadElem(-1, 2)
    assert {q1.t, q2.t} == {-(58 + 2 * sqrt5), -(58 - 2 * sqrt5)}
    assert q1.c == q2.c == QuadElem(1331)


def test_inert_is_quadratic_in_t_squared():
    f = lf.frob_charpoly_from_traces(13, *TRACE_TABLE[13])
    (quad,) = lf.split_over_f(13, lf=f)
    assert quad.t == QuadElem(TRACE_TABLE[13][1] // 2)


def test_series_inverse_geometric():
    assert lf._series_inverse([1, -3], 5) == [3 ** k for k in range(6)]


def test_bad_factor_shapes():
    assert lf.bad_euler_poly(2, (-1, 1)) == [1, 0, -4]
    assert lf.bad_euler_poly(5, (1, 2)) == [1, 25]
    assert lf.bad_euler_poly(3, None) == [1]
    with pytest.raises(ValueError):
        lf.bad_euler_poly(7, (1, 0))
    with pytest.raises(ValueError):
        lf.BadFactorGuess(0, 0, 0, 2, None, None, None)


def test_accepted_conductor():
    assert lf.ACCEPTED_GUESS.N == 2 ** 2 * 3 ** 2 * 5 ** 4


def test_dirichlet_coeffs_multiplicative(store):
    a = lf.dirichlet_coeffs(200, store=store)
    assert a[1] == 1 and a[5] == 0
    assert a[11] == TRACE_TABLE[11][0]
    # local factor at 2 is (1 - 4 * 2^{-2s})^{-1}
    assert a[2] == 0 and a[4] == 4 and a[16] == 16
    for m, n in [(7, 11), (4, 9), (11, 13), (8, 17)]:
        assert a[m * n] == a[m] * a[n]
    # a_{p^2} = a_p^2 - c2 from the quartic
    c2 = lf.frob_charpoly(7, store).coeffs[2]
    assert a[49] == a[7] ** 2 - c2


@pytest.mark.parametrize("m", [0, 1, 2])
@pytest.mark.parametrize("x", [0.3, 1.0, 4.0])
def test_fm_against_oracles(m, x):
    v = float(lf.fm_eval(m, x))
    assert v == pytest.approx(lf.fm_meijerg(m, x), rel=1e-9)
    assert v == pytest.approx(lf.fm_contour(m, x), rel=1e-8)


@settings(max_examples=20, deadline=None)
@given(st.floats(min_value=0.05, max_value=20.0))
def test_f0_bessel_closed_form(x):
    z = 2 * math.sqrt(x)
    expected = float(2 * x * mpmath.besselk(2, z))
    assert float(lf.f0(x)) == pytest.approx(expected, rel=1e-12)


def test_fm_rejects_nonpositive():
    with pytest.raises(ValueError):
        lf.fm_eval(0, 0.0)


def test_reflection_sign():
    assert [lf.reflection_sign(m, -1) for m in range(4)] == [-1, 1, -1, 1]


def test_fe_wrong_sign_is_not_stable(store):
    a = lf.dirichlet_coeffs(3000, store=store)
    wrong = lf.BadFactorGuess(2, 2, 4, 1, (-1, 1), (-1, 1), None)
    vals = [lf.fe_test(0, t, guess=wrong, coeffs=a) for t in (1.0, 2.0)]
    assert max(abs(v) for v in vals) > 1e-3


def test_fe_m1_t_independent(store):
    a = lf.dirichlet_coeffs(3000, store=store)
    vals = [lf.fe_test(1, t, coeffs=a) for t in (1.2, 1.8)]
    assert abs(vals[0] - vals[1]) < 1e-8


def test_needed_traces():
    ps, ps2 = lf.needed_traces(60)
    assert ps[0] == 7 and ps[-1] == 59
    assert ps2 == [7]


def test_weil_report(store):
    rep = lf.weil_report(store)
    assert rep and all(rep.values())


@pytest.mark.parametrize("p", [11, 29])
def test_fe_sensitive_to_single_trace(p, store):
    lf.ensure_traces(3000, store)
    bad = lf.TraceStore()
    bad.ap, bad.ap2 = dict(store.ap), dict(store.ap2)
    bad.ap[p] += 2
    vals = [lf.fe_test(1, t, store=bad) for t in (1.0, 2.0)]
    assert abs(vals[0] - vals[1]) > 1e-6

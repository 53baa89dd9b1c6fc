"""Property suites that run on their own in well under a minute.

Run standalone with ``pytest tests/test_properties.py``.
"""
import math

import pytest
from hypothesis import given, settings, strategies as st

from nodalquintic import brandt as B
from nodalquintic import idealtheta as it
from nodalquintic import lfunction as lf
from nodalquintic.arith import QuadElem, fq_build, is_prime, prime_power
from nodalquintic.chebyshev import dickson_identity_holds
from nodalquintic.pointcount import CountCache

WEIL_RANGE = 200


@pytest.fixture(scope="module")
def traces(store):
    lf.ensure_traces(WEIL_RANGE, store)
    return store


def test_weil_bounds_on_cached_traces(traces):
    report = lf.weil_report(traces)
    assert set(report) >= {p for p in range(7, WEIL_RANGE) if is_prime(p)}
    bad = [p for p, ok in report.items() if not ok]
    assert not bad


def test_quartic_roots_on_circle(traces):
    for p in sorted(traces.ap2):
        roots = lf.frob_charpoly(p, traces).roots()
        assert all(abs(float(abs(r)) / p ** 1.5 - 1) < 1e-9 for r in roots), p


def test_inert_traces_vanish_in_cache(traces):
    for p, a in traces.ap.items():
        if p % 5 in (2, 3):
            assert a == 0, p


def _is_prime_power(q):
    try:
        prime_power(q)
    except ValueError:
        return False
    return True


_inert_q = [q for q in range(23, 3000) if q % 5 in (2, 3) and math.gcd(q, 30) == 1 and _is_prime_power(q)]


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(_inert_q))
def test_trace_vanishes_for_q_pm2_mod5(q):
    assert lf.trace_aq(q) == 0


def test_cached_counts_give_vanishing_traces(traces):
    counts = CountCache(traces.counts.path).load() if traces.counts else {}
    for q, rec in counts.items():
        if q > 20 and q % 5 in (2, 3):
            assert lf.trace_record(q, traces.counts).a_q == 0, q


_tp = [QuadElem(a, b) for a in range(1, 9) for b in range(-4, 5) if QuadElem(a, b).is_totally_positive()]
_unit_squares = [QuadElem(0, 1) ** 2, (QuadElem(0, 1) ** 2).inverse()]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 11), st.sampled_from(_tp), st.sampled_from(_unit_squares))
def test_theta_even_and_unit_square_invariant(idx, xi, eps2):
    L = it.right_orders()[idx]
    c = len(it.enumerate_vectors(L, xi))
    assert c % 2 == 0
    assert len(it.enumerate_vectors(L, xi * eps2)) == c


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 11), st.sampled_from(_tp))
def test_ideal_theta_even(idx, xi):
    I = it.all_ideals()[idx]
    assert len(it.enumerate_vectors(I, xi)) % 2 == 0


_brandt_xis = ["2", "3", "2+w", "3-w", "3+w", "4-w", "5", "7"]


@settings(max_examples=5, deadline=None, derandomize=False)
@given(st.sampled_from(_brandt_xis), st.sampled_from(_brandt_xis))
def test_brandt_matrices_commute(x1, x2):
    assert B.commute_check(B.cached_brandt(x1), B.cached_brandt(x2))


@pytest.mark.parametrize("m", [1, 2, 3])
@settings(max_examples=8, deadline=None)
@given(x=st.floats(min_value=0.2, max_value=8.0))
def test_fm_ode(m, x):
    # theta F_m = -F_{m-1} with theta = x d/dx
    h = 1e-4 * x
    deriv = (float(lf.fm_eval(m, x + h)) - float(lf.fm_eval(m, x - h))) / (2 * h)
    assert x * deriv == pytest.approx(-float(lf.fm_eval(m - 1, x)), rel=1e-6, abs=1e-12)


@settings(max_examples=10, deadline=None)
@given(x=st.floats(min_value=0.2, max_value=8.0))
def test_f0_ode(x):
    # Mellin pair of Gamma(s) Gamma(s+2): theta(theta - 2) F_0 = x F_0
    h = 1e-3 * x
    f = lambda t: float(lf.f0(t))
    d1 = (f(x + h) - f(x - h)) / (2 * h)
    d2 = (f(x + h) - 2 * f(x) + f(x - h)) / h ** 2
    theta2 = x * x * d2 + x * d1
    assert theta2 - 2 * x * d1 == pytest.approx(x * f(x), rel=1e-5, abs=1e-10)


_fields = [fq_build(7, 2), fq_build(13, 1), fq_build(11, 2), fq_build(2, 4)]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(_fields), st.data())
def test_dickson_functional_equation(F, data):
    y1 = data.draw(st.integers(1, F.q - 1))
    y2 = data.draw(st.integers(1, F.q - 1))
    n = data.draw(st.sampled_from([1, 2, 3, 5]))
    assert dickson_identity_holds(F, y1, y2, n)

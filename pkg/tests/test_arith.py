from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nodalquintic.arith import (
    AlgAElem, CycloElem, QuadElem, VSQ_CHOICES, ZETA15, dickson_permutes, format_quad, fq_build,
    hnf_of, normalize_tp, parse_quad, quad_norm_trace_conj, tp_enumerate, W,
)

small = st.integers(-50, 50)
quads = st.builds(lambda a, b, d: QuadElem(a, b, d), small, small, st.integers(1, 6))


def test_norm_trace_conj_examples():
    assert quad_norm_trace_conj(W) == (-1, 1, QuadElem(1, -1))
    assert quad_norm_trace_conj(QuadElem(1)) == (1, 2, QuadElem(1))
    n, t, c = quad_norm_trace_conj(QuadElem(2, 1))
    assert (n, t, c) == (5, 5, QuadElem(3, -1))


@given(quads, quads)
def test_norm_is_multiplicative(x, y):
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x * y).conj() == x.conj() * y.conj()


@given(quads)
def test_format_parse_roundtrip(x):
    assert parse_quad(format_quad(x)) == x


@given(quads.filter(lambda x: not x.is_zero()))
def test_inverse(x):
    assert x * x.inverse() == QuadElem(1)


def test_tp_enumerate():
    heads = {format_quad(x) for x in tp_enumerate(4)}
    for s in ("2+w", "3+w", "4-w", "4+w", "4+2*w"):
        assert format_quad(normalize_tp(parse_quad(s))) in heads
    for x in tp_enumerate(6):
        assert x.is_totally_positive()


def test_hnf_identity_and_idempotent():
    one, zero = QuadElem(1), QuadElem(0)
    ident = [[one if i == j else zero for j in range(4)] for i in range(4)]
    assert hnf_of(ident) == ident
    cols = [[QuadElem(2, 1), QuadElem(0), QuadElem(1), QuadElem(3)],
            [QuadElem(0), QuadElem(4), QuadElem(0, 1), QuadElem(1)],
            [QuadElem(1), QuadElem(1), QuadElem(5), QuadElem(0)],
            [QuadElem(0), QuadElem(0), QuadElem(1), QuadElem(7, 1)],
            [QuadElem(3), QuadElem(2), QuadElem(1), QuadElem(1)]]
    h = hnf_of(cols)
    assert hnf_of(h) == h


def test_finite_fields():
    F7 = fq_build(7, 1)
    assert F7.q == 7
    F49 = fq_build(7, 2)
    assert all(F49.pow(x, 48) == F49.from_int(1) for x in range(1, 49))
    F11 = fq_build(11, 1)
    assert any(F11.mul(x, x) == F11.from_int(5) for x in range(11))


def test_algebra_relations():
    vsq = VSQ_CHOICES["3-w"]
    u = AlgAElem(0, 1, vsq=vsq)
    v = AlgAElem(0, 0, 1, vsq=vsq)
    assert u * u == AlgAElem(-6, vsq=vsq)
    assert v * v == AlgAElem(vsq, vsq=vsq)
    assert (AlgAElem(1, 1, vsq=vsq)) * (AlgAElem(1, -1, vsq=vsq)) == AlgAElem(7, vsq=vsq)
    assert u * v == v * u
    assert (u * v) * (u * v) == AlgAElem(vsq * -6, vsq=vsq)


def test_dickson_permutes():
    assert dickson_permutes(5, 7)
    assert not dickson_permutes(5, 11)
    assert dickson_permutes(1, 13)


def test_cyclotomic():
    assert ZETA15 ** 15 == CycloElem([1])
    assert not (ZETA15 ** 5 == CycloElem([1]))
    x = CycloElem([1, 2, 0, Fraction(1, 3)])
    assert x * x.inverse() == CycloElem([1])
    assert abs((CycloElem.coerce(W)).to_complex() - (1 + 5 ** 0.5) / 2) < 1e-12

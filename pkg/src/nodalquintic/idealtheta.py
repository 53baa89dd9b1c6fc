"""Twelve left O-ideal class representatives, their right orders, the
scaled norm form on Z^8 and theta (representation number) tables.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as K
from .arith import ONE, W, QuadElem, normalize_tp, parse_quad, unit_normalize
from .quatorder import (HALF, X, XY, Y, Lattice, LatticeError, QuatElem, f_basis, order_o,
                        reduced_discriminant)


class ConsistencyError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# Input data: the five auxiliary quaternions and the twelve generator pairs
# ---------------------------------------------------------------------------

# alpha_i as integer combinations of f_1..f_4 (coefficients in Z[w])
ALPHA_F_COORDS = {
    1: (0, 1, 0, 0),
    2: (0, 1, 3, -1),
    3: (2 - W, -1, -(W + 1), W),
    4: (0, -1, -(W + 2), 2 * W - 1),
    5: (-(5 * W + 2), 0, 2 * (2 * W + 1), 1 - 4 * W),
}


def alpha_explicit() -> dict[int, QuatElem]:
    """The same five elements written out in the basis 1, X, Y, XY."""
    return {
        1: X,
        2: QuatElem(W * Fraction(5, 2), HALF + W, Fraction(5, 2), (3 - W) * HALF),
        3: QuatElem((3 - 5 * W) * HALF, -1, -(2 + W) * HALF, 0),
        4: QuatElem(-W * Fraction(5, 2), -1, Fraction(-5, 2), 0),
        5: QuatElem(-W * HALF, (1 - W) * HALF, Fraction(5, 2) + 2 * W, (W - 2) * HALF),
    }


@lru_cache(maxsize=1)
def alphas() -> dict[int, QuatElem]:
    f = f_basis()
    out = {}
    for i, cs in ALPHA_F_COORDS.items():
        acc = QuatElem()
        for c, fj in zip(cs, f):
            acc = acc + fj * QuadElem.coerce(c)
        out[i] = acc
    return out


# i -> (scalar generator a + b w, (constant, alpha index)) ; gamma = constant + alpha
IDEAL_DATA: dict[int, tuple[QuadElem, tuple[QuadElem, int] | None]] = {
    1: (ONE, None),
    2: (2 + W, (QuadElem(2), 1)),
    3: (QuadElem(2), (2 * W, 1)),
    4: (2 + W, (QuadElem(3), 1)),
    5: (2 + W, (QuadElem(-2), 2)),
    6: (7 - 2 * W, (QuadElem(16), 2)),
    7: (9 + 13 * W, (QuadElem(10), 2)),
    8: (4 - W, (QuadElem(8), 3)),
    9: (4 - W, (QuadElem(9), 3)),
    10: (QuadElem(7), (6 + 4 * W, 4)),
    11: (3 * W + 5, (QuadElem(13), 5)),
    12: (QuadElem(17), (12 * (1 + W), 5)),
}


@dataclass(frozen=True)
class LeftIdeal:
    lattice: Lattice
    norm_gen: QuadElem
    label: str = ""

    @property
    def basis(self):
        return self.lattice.basis

    def conj(self) -> "LeftIdeal":
        return LeftIdeal(self.lattice.conj(), self.norm_gen, f"conj({self.label})")

    def inverse(self) -> "LeftIdeal":
        """I^{-1} = conj(I) / Nr(I)."""
        n = self.norm_gen
        return LeftIdeal(self.lattice.conj() * n.inverse(), n.inverse(), f"{self.label}^-1")

    def __mul__(self, other):
        if isinstance(other, LeftIdeal):
            return LeftIdeal(self.lattice * other.lattice, normalize_tp(self.norm_gen * other.norm_gen),
                             f"{self.label}*{other.label}")
        s = QuadElem.coerce(other)
        return LeftIdeal(self.lattice * s, unit_normalize(self.norm_gen * s * s), f"{self.label}*{s}")

    def right_order(self) -> Lattice:
        """Right order computed as conj(I) I / Nr(I) and as {b : I b in I}; they must agree."""
        a = (self.lattice.conj() * self.lattice) * self.norm_gen.inverse()
        b = self.lattice.right_order()
        if a != b:
            raise ConsistencyError(f"right order mismatch for {self.label}")
        return a

    def left_order(self) -> Lattice:
        return self.lattice.left_order()


def ideal_from_generators(i: int) -> LeftIdeal:
    """I_i = O (a_i + w b_i) + O gamma_i as an HNF lattice."""
    if i not in IDEAL_DATA:
        raise KeyError(f"ideal index must be in 1..12, got {i}")
    s, g = IDEAL_DATA[i]
    f = f_basis()
    gens = [fj * s for fj in f]
    if g is not None:
        const, k = g
        gamma = alphas()[k] + const
        gens += [fj * gamma for fj in f]
    L = Lattice(gens)
    O = order_o()
    if not all(L.contains(a * b) for a in O.basis for b in L.basis):
        raise ConsistencyError(f"I_{i} is not a left O-module")
    return LeftIdeal(L, L.norm_ideal(), f"I{i}")


@lru_cache(maxsize=1)
def all_ideals() -> tuple[LeftIdeal, ...]:
    return tuple(ideal_from_generators(i) for i in range(1, 13))


@lru_cache(maxsize=1)
def right_orders() -> tuple[Lattice, ...]:
    return tuple(I.right_order() for I in all_ideals())


def displayed_right_orders() -> dict[int, Lattice]:
    """The bases printed for O_5 and O_6 (columns are coordinates in 1, X, Y, XY)."""
    def lat(scale, rows):
        cols = [[QuadElem.coerce(rows[r][c]) for r in range(4)] for c in range(4)]
        return Lattice(QuatElem(*col) * scale for col in cols)

    o5 = [[4 * W + 3, 0, -(2 * W + Fraction(3, 2)), -(11 * W + 7) * HALF],
          [0, 5 * W, -(3 * W + 1), W - HALF],
          [0, 0, -5 * (W + 1) * HALF, -(3 * W * HALF + 1)],
          [0, 0, 0, (W - 1) * HALF]]
    o6 = [[2 * W - 7, 0, -W + Fraction(7, 2), 0],
          [0, 73 * W + 39, 30 * W + 19, -(55 * W * HALF + 19)],
          [0, 0, (11 * W - 23) * HALF, 2 * (W - 2)],
          [0, 0, 0, W + HALF]]
    return {5: lat((2 + W).inverse(), o5), 6: lat((7 - 2 * W).inverse(), o6)}


# ---------------------------------------------------------------------------
# Norm forms and enumeration
# ---------------------------------------------------------------------------

@dataclass
class NormForm8:
    """Nr(sum Y_k z_k) / n = Q1(Y) + Q2(Y) w on the Z-basis z = (e_k, w e_k)."""
    zbasis: tuple[QuatElem, ...]
    Q1: list[list[Fraction]]
    Q2: list[list[Fraction]]
    norm_gen: QuadElem
    _cache: dict = field(default_factory=dict, repr=False)

    def value(self, y: Sequence[int]) -> QuadElem:
        a = sum(self.Q1[i][j] * y[i] * y[j] for i in range(8) for j in range(8))
        b = sum(self.Q2[i][j] * y[i] * y[j] for i in range(8) for j in range(8))
        return QuadElem(a, b)

    def element(self, y: Sequence[int]) -> QuatElem:
        acc = QuatElem()
        for c, z in zip(y, self.zbasis):
            if c:
                acc = acc + z * int(c)
        return acc

    def _prep(self):
        if "prep" not in self._cache:
            den = 1
            for M in (self.Q1, self.Q2):
                for row in M:
                    for v in row:
                        den = den * v.denominator // math.gcd(den, v.denominator)
            g1 = np.array([[int(v * den) for v in row] for row in self.Q1], dtype=np.int64)
            g2 = np.array([[int(v * den) for v in row] for row in self.Q2], dtype=np.int64)
            qd, qu = completion_of_squares(self.Q1)
            self._cache["prep"] = (den, g1, g2, qd, qu)
        return self._cache["prep"]

    def short_vectors(self, a_max: Fraction | int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """All Y with Q1(Y) <= a_max, with exact (den*Q1, den*Q2) values."""
        den, g1, g2, qd, qu = self._prep()
        a_max = Fraction(a_max)
        bound = float(a_max) * (1 + 1e-9) + 1e-9
        ys = K.short_vectors(qd, qu, bound, 1024)
        v1 = np.einsum("ni,ij,nj->n", ys, g1, ys)
        keep = v1 <= int(a_max * den)
        ys, v1 = ys[keep], v1[keep]
        v2 = np.einsum("ni,ij,nj->n", ys, g2, ys)
        return ys, v1, v2


def completion_of_squares(Q: Sequence[Sequence[Fraction]]) -> tuple[np.ndarray, np.ndarray]:
    """Exact rational LDL^T of a positive definite form, returned as floats.

    Q(x) = sum_i qd[i] (x_i + sum_{j>i} qu[i, j] x_j)^2.
    """
    n = len(Q)
    q = [[Fraction(Q[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        if q[i][i] <= 0:
            raise LatticeError("form is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    qd = np.array([float(q[i][i]) for i in range(n)])
    qu = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            qu[i, j] = float(q[i][j])
    return qd, qu


def norm_form(L: Lattice | LeftIdeal, norm_gen: QuadElem | None = None) -> NormForm8:
    if isinstance(L, LeftIdeal):
        norm_gen = L.norm_gen if norm_gen is None else norm_gen
        L = L.lattice
    norm_gen = ONE if norm_gen is None else QuadElem.coerce(norm_gen)
    if not norm_gen.is_totally_positive():
        raise LatticeError(f"norm generator {norm_gen} is not totally positive")
    z = tuple(L.basis) + tuple(b * W for b in L.basis)
    inv = norm_gen.inverse()
    Q1 = [[Fraction(0)] * 8 for _ in range(8)]
    Q2 = [[Fraction(0)] * 8 for _ in range(8)]
    for i in range(8):
        for j in range(i, 8):
            if i == j:
                v = z[i].nrd() * inv
            else:
                v = (z[i] * z[j].conj()).trd() * inv * HALF
            a, b = v.coords()
            Q1[i][j] = Q1[j][i] = a
            Q2[i][j] = Q2[j][i] = b
    return NormForm8(z, Q1, Q2, norm_gen)


@lru_cache(maxsize=256)
def _form_for(L: Lattice, norm_gen: QuadElem) -> NormForm8:
    return norm_form(L, norm_gen)


def _target(form: NormForm8, xi: QuadElem) -> tuple[int, int]:
    den = form._prep()[0]
    a, b = QuadElem.coerce(xi).coords()
    return int(a * den), int(b * den)


def _trace_gram(form: NormForm8, xi: QuadElem) -> list[list[Fraction]]:
    # Tr_{F/Q}(Nr_S / xi) as a rational form; equals 2 exactly on the solutions
    inv = xi.inverse()
    out = [[Fraction(0)] * 8 for _ in range(8)]
    for i in range(8):
        for j in range(i, 8):
            v = QuadElem(form.Q1[i][j], form.Q2[i][j]) * inv
            out[i][j] = out[j][i] = v.trace()
    return out


def enumerate_vectors(L: Lattice | LeftIdeal, xi, norm_gen: QuadElem | None = None) -> np.ndarray:
    """Integer coordinate vectors Y with Nr_S = xi exactly.

    Every solution has Tr(Nr_S(Y)/xi) = 2, so the search runs over the
    ellipsoid of that positive definite trace form and keeps exact matches.
    """
    if isinstance(L, LeftIdeal):
        norm_gen = L.norm_gen if norm_gen is None else norm_gen
        L = L.lattice
    norm_gen = ONE if norm_gen is None else QuadElem.coerce(norm_gen)
    xi = QuadElem.coerce(xi) if not isinstance(xi, str) else parse_quad(xi)
    form = _form_for(L, norm_gen)
    if xi.is_zero():
        return np.zeros((1, 8), dtype=np.int64)
    if not xi.is_totally_positive():
        return np.zeros((0, 8), dtype=np.int64)
    key = ("trace", xi)
    if key not in form._cache:
        form._cache[key] = completion_of_squares(_trace_gram(form, xi))
    qd, qu = form._cache[key]
    den, g1, g2 = form._prep()[:3]
    ys = K.short_vectors(qd, qu, 2.0 * (1 + 1e-9) + 1e-9, 256)
    t1, t2 = _target(form, xi)
    v1 = np.einsum("ni,ij,nj->n", ys, g1, ys)
    ys = ys[v1 == t1]
    v2 = np.einsum("ni,ij,nj->n", ys, g2, ys)
    return ys[v2 == t2]


def enumerate_by_norm(L: Lattice | LeftIdeal, xi, norm_gen: QuadElem | None = None) -> list[QuatElem]:
    """Elements of L whose scaled norm Nr/n equals xi (n = Nr(L) for ideals, 1 for orders)."""
    lat = L.lattice if isinstance(L, LeftIdeal) else L
    ng = (L.norm_gen if isinstance(L, LeftIdeal) else ONE) if norm_gen is None else norm_gen
    form = _form_for(lat, QuadElem.coerce(ng))
    return [form.element(y) for y in enumerate_vectors(lat, xi, ng)]


def theta_table(L: Lattice | LeftIdeal, xis: Iterable, norm_gen: QuadElem | None = None) -> dict[QuadElem, int]:
    """c_xi = #{a in L : Nr_S(a) = xi} for each xi, from one ellipsoid enumeration."""
    if isinstance(L, LeftIdeal):
        norm_gen = L.norm_gen if norm_gen is None else norm_gen
        L = L.lattice
    norm_gen = ONE if norm_gen is None else QuadElem.coerce(norm_gen)
    xis = [parse_quad(x) if isinstance(x, str) else QuadElem.coerce(x) for x in xis]
    form = _form_for(L, norm_gen)
    if not xis:
        return {}
    a_max = max(x.coords()[0] for x in xis)
    ys, v1, v2 = form.short_vectors(a_max)
    counts: dict[tuple[int, int], int] = {}
    for p, q in zip(v1.tolist(), v2.tolist()):
        counts[(p, q)] = counts.get((p, q), 0) + 1
    return {x: counts.get(_target(form, x), 0) for x in xis}


# ---------------------------------------------------------------------------
# Classes and types
# ---------------------------------------------------------------------------

def same_class(I: LeftIdeal, J: LeftIdeal) -> bool:
    """I ~ J iff conj(J) I has an element of norm Nr(I) Nr(J) (up to unit squares)."""
    M = J.lattice.conj() * I.lattice
    target = I.norm_gen * J.norm_gen
    nm = M.norm_ideal()
    ratio = target / nm
    if not (ratio.is_integral() and abs(ratio.norm()) == 1 and ratio.is_totally_positive()):
        raise ConsistencyError("norm of conj(J) I differs from Nr(I) Nr(J)")
    return len(enumerate_vectors(M, ONE, norm_gen=target)) > 0


IDEAL_XIS = ("1", "2", "2+w", "3-w", "3", "3+w", "4-w", "4", "4+w", "4+2w", "5", "10")
ORDER_XIS = ("1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "11+w", "12-w", "13+w")
TYPE_XIS = ("11+w", "12-w", "13+w")


@dataclass(frozen=True)
class Classification:
    classes: tuple[tuple[int, ...], ...]
    types: tuple[tuple[int, ...], ...]
    units: tuple[int, ...]
    signatures: dict

    @property
    def class_count(self) -> int:
        return len(self.classes)

    @property
    def type_count(self) -> int:
        return len(self.types)


def classify_all() -> Classification:
    ideals = all_ideals()
    n = len(ideals)
    parent = list(range(n))
    for i in range(n):
        for j in range(i + 1, n):
            if parent[j] == j and same_class(ideals[i], ideals[j]):
                parent[j] = parent[i]
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(parent[i], []).append(i + 1)
    orders = right_orders()
    sigs, buckets = {}, {}
    for i, O in enumerate(orders, start=1):
        t = theta_table(O, TYPE_XIS)
        sig = tuple(t[parse_quad(x)] for x in TYPE_XIS)
        sigs[i] = sig
        buckets.setdefault(sig, []).append(i)
    units = tuple(theta_table(O, ["1"])[ONE] for O in orders)
    return Classification(tuple(tuple(g) for g in groups.values()),
                          tuple(tuple(b) for b in buckets.values()), units, sigs)


def ideal_theta_rows(xis: Sequence[str] = IDEAL_XIS) -> dict[int, list[int]]:
    out = {}
    for i, I in enumerate(all_ideals(), start=1):
        t = theta_table(I, xis)
        out[i] = [t[parse_quad(x)] for x in xis]
    return out


def order_theta_rows(xis: Sequence[str] = ORDER_XIS) -> dict[int, list[int]]:
    out = {}
    for i, O in enumerate(right_orders(), start=1):
        t = theta_table(O, xis)
        out[i] = [t[parse_quad(x)] for x in xis]
    return out


def right_order_discriminants() -> list[QuadElem]:
    return [reduced_discriminant(O) for O in right_orders()]

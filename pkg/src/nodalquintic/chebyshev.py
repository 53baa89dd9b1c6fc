"""The quintic P5, the skew pentagon polynomial F_{-2}, Dickson polynomials
and the critical-point data of P5."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .arith import (CYCLO_W, ZETA3, ZETA5, CycloElem, FieldTable, GaussRatElem,
                    I_UNIT, cyclo_to_fq, fq_build, root_of_unity)


def _is_zero(c) -> bool:
    if isinstance(c, (int, Fraction)):
        return c == 0
    return c.is_zero()


class BivarPoly:
    """Sparse polynomial in x1, x2: a dict (i, j) -> coefficient.

    Coefficients may be ints/Fractions or any exact ring element offering
    +, -, * and ``is_zero``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if not _is_zero(v)}

    @classmethod
    def const(cls, c) -> "BivarPoly":
        return cls({(0, 0): c})

    @classmethod
    def x1(cls) -> "BivarPoly":
        return cls({(1, 0): 1})

    @classmethod
    def x2(cls) -> "BivarPoly":
        return cls({(0, 1): 1})

    def _lift(self, o) -> "BivarPoly":
        return o if isinstance(o, BivarPoly) else BivarPoly.const(o)

    def __add__(self, o):
        o = self._lift(o)
        t = dict(self.terms)
        for k, v in o.terms.items():
            t[k] = t[k] + v if k in t else v
        return BivarPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return BivarPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        t: dict = {}
        for (i1, j1), v1 in self.terms.items():
            for (i2, j2), v2 in o.terms.items():
                k = (i1 + i2, j1 + j2)
                t[k] = t[k] + v1 * v2 if k in t else v1 * v2
        return BivarPoly(t)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        r = BivarPoly.const(1)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __eq__(self, o):
        if not isinstance(o, BivarPoly):
            o = self._lift(o)
        return (self - o).is_zero()

    def __hash__(self):
        return hash(tuple(sorted(self.terms)))

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, i: int, j: int):
        return self.terms.get((i, j), 0)

    def degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def swap(self) -> "BivarPoly":
        return BivarPoly({(j, i): v for (i, j), v in self.terms.items()})

    def map_coeffs(self, f: Callable) -> "BivarPoly":
        return BivarPoly({k: f(v) for k, v in self.terms.items()})

    def diff(self, var: int) -> "BivarPoly":
        t = {}
        for (i, j), v in self.terms.items():
            if var == 1 and i:
                t[(i - 1, j)] = v * i
            elif var == 2 and j:
                t[(i, j - 1)] = v * j
        return BivarPoly(t)

    def __call__(self, x1, x2, one=1):
        """Evaluate at (x1, x2); ``one`` supplies the multiplicative identity of the target ring."""
        total = None
        p1, p2 = {0: one}, {0: one}
        for (i, j), v in self.terms.items():
            if i not in p1:
                p1[i] = x1 ** i
            if j not in p2:
                p2[j] = x2 ** j
            term = p1[i] * p2[j] * v
            total = term if total is None else total + term
        return total if total is not None else one * 0

    def compose(self, s1: "BivarPoly", s2: "BivarPoly") -> "BivarPoly":
        """Substitute x1 -> s1, x2 -> s2."""
        out = BivarPoly()
        pw1, pw2 = {0: BivarPoly.const(1)}, {0: BivarPoly.const(1)}
        for (i, j), v in self.terms.items():
            if i not in pw1:
                pw1[i] = s1 ** i
            if j not in pw2:
                pw2[j] = s2 ** j
            out = out + pw1[i] * pw2[j] * v
        return out

    def to_sympy(self, x1, x2):
        import sympy
        expr = 0
        for (i, j), v in self.terms.items():
            expr += sympy.Rational(v.numerator, v.denominator) * x1 ** i * x2 ** j if isinstance(v, Fraction) \
                else sympy.Integer(v) * x1 ** i * x2 ** j
        return expr

    def __repr__(self):
        parts = [f"{v}*x1^{i}*x2^{j}" for (i, j), v in sorted(self.terms.items(), reverse=True)]
        return " + ".join(parts) if parts else "0"


X1, X2 = BivarPoly.x1(), BivarPoly.x2()


def build_p5() -> BivarPoly:
    """x1^5 + x2^5 - 5 x1 x2 (x1^2 + x2^2) + 5 x1 x2 (x1 + x2) + 5 (x1^2 + x2^2) - 5 (x1 + x2)."""
    return (X1 ** 5 + X2 ** 5 - 5 * X1 * X2 * (X1 ** 2 + X2 ** 2)
            + 5 * X1 * X2 * (X1 + X2) + 5 * (X1 ** 2 + X2 ** 2) - 5 * (X1 + X2))


def build_p5_factored() -> BivarPoly:
    """The same quintic written as x1^5 + x2^5 - 5 (x1 x2 - 1)(x1^2 + x2^2 - x1 - x2)."""
    return X1 ** 5 + X2 ** 5 - 5 * (X1 * X2 - 1) * (X1 ** 2 + X2 ** 2 - X1 - X2)


def dickson_pair(n: int) -> tuple[BivarPoly, BivarPoly]:
    """Dickson polynomials D_n^(1), D_n^(2) in two variables with a = 1."""
    if n < 0:
        raise ValueError("n must be >= 0")

    def seq(s: BivarPoly, t: BivarPoly) -> BivarPoly:
        d = [BivarPoly.const(3), s, s * s - 2 * t]
        for _ in range(3, n + 1):
            d.append(s * d[-1] - t * d[-2] + d[-3])
        return d[n]

    return seq(X1, X2), seq(X2, X1)


def skew_pentagon(c) -> BivarPoly:
    """F_c(x, y) = (x + c)(y^4 - y^2 (2x^2 - 2x + 1) + (x^2 + x - 1)^2 / 5)."""
    fifth = Fraction(1, 5)
    return (X1 + c) * (X2 ** 4 - X2 ** 2 * (2 * X1 ** 2 - 2 * X1 + 1)
                       + (X1 ** 2 + X1 - 1) ** 2 * fifth)


def verify_pentagon_match(perturb: bool = False) -> bool:
    """Check P5(x1, x2) = -10 F_{-2}(phi(x1, x2)) - 2 over Q(i).

    phi(x1, x2) = (-(x1 + x2)/2 + 1, i (x1 - x2)/2).  With ``perturb`` the
    constant shift of the first coordinate is dropped (negative control).
    """
    half = Fraction(1, 2)
    to_g = GaussRatElem.coerce
    x1 = BivarPoly({(1, 0): to_g(1)})
    x2 = BivarPoly({(0, 1): to_g(1)})
    shift = 0 if perturb else 1
    s1 = (x1 + x2) * to_g(-half) + to_g(shift)
    s2 = (x1 - x2) * (I_UNIT * half)
    f = skew_pentagon(-2).map_coeffs(to_g)
    rhs = f.compose(s1, s2) * to_g(-10) + to_g(-2)
    lhs = build_p5().map_coeffs(to_g)
    return (lhs - rhs).is_zero()


@dataclass(frozen=True)
class CriticalPoint:
    coords: tuple[CycloElem, CycloElem]
    value: int
    galois_orbit_size: int


# (x1, x2) seeds of the Galois orbits of critical points, with critical values
def _seed_points():
    w = CYCLO_W
    z5, z3 = ZETA5, ZETA3
    z5i, z3i = z5 ** 4, z3 ** 2
    return [
        ((w, w), 6),
        ((w + 1, w + 1), -2),
        ((-z5, -z5i), -2),
        ((z5 - z5i - 1, z5i - z5 - 1), -2),
        ((w * z3, w * z3i), -3),
    ]


GALOIS_KS = (1, 2, 4, 7, 8, 11, 13, 14)


def critical_points() -> list[CriticalPoint]:
    """All 16 critical points of P5, exact in Q(zeta15), with values and orbit sizes."""
    p5 = build_p5()
    d1, d2 = p5.diff(1), p5.diff(2)
    one = CycloElem([1])
    out: list[CriticalPoint] = []
    for (a, b), val in _seed_points():
        orbit = []
        for k in GALOIS_KS:
            pt = (a.galois(k), b.galois(k))
            if pt not in orbit:
                orbit.append(pt)
        for pt in orbit:
            if not (d1(*pt, one=one).is_zero() and d2(*pt, one=one).is_zero()):
                raise ArithmeticError(f"gradient does not vanish at {pt}")
            if p5(*pt, one=one) != val:
                raise ArithmeticError(f"critical value mismatch at {pt}")
            out.append(CriticalPoint(pt, val, len(orbit)))
    if len(out) != 16 or len(set(cp.coords for cp in out)) != 16:
        raise ArithmeticError("expected 16 distinct critical points")
    return out


def hessian_det(pt: tuple[CycloElem, CycloElem]) -> CycloElem:
    p5 = build_p5()
    one = CycloElem([1])
    h11 = p5.diff(1).diff(1)(*pt, one=one)
    h12 = p5.diff(1).diff(2)(*pt, one=one)
    h22 = p5.diff(2).diff(2)(*pt, one=one)
    return h11 * h22 - h12 * h12


def critical_points_mod(p: int, n: int | None = None) -> list[tuple[int, int]]:
    """Reduce the 16 critical points into F_{p^n}, n the order of p mod 15 by default."""
    if n is None:
        n = 1
        while pow(p, n, 15) != 1:
            n += 1
    F = fq_build(p, n)
    zeta = root_of_unity(F, 15)
    return [(cyclo_to_fq(cp.coords[0], F, zeta), cyclo_to_fq(cp.coords[1], F, zeta))
            for cp in critical_points()]


def bad_prime_certificate() -> set[int]:
    """Prime support of disc_{x2}(res_{x1}(dP5/dx1, dP5/dx2))."""
    import sympy
    x1, x2 = sympy.symbols("x1 x2")
    p5 = build_p5().to_sympy(x1, x2)
    f1, f2 = sympy.diff(p5, x1), sympy.diff(p5, x2)
    res = sympy.resultant(f1, f2, x1)
    res = sympy.Poly(sympy.expand(res), x2)
    if res.is_zero:
        raise ArithmeticError("resultant vanishes identically")
    disc = sympy.discriminant(res, x2)
    disc = int(disc)
    if disc == 0:
        raise ArithmeticError("discriminant vanishes")
    return set(sympy.factorint(abs(disc)).keys())


def resultant_in_x2():
    """The resultant with respect to x1 of the two partials, as a sympy Poly in x2."""
    import sympy
    x1, x2 = sympy.symbols("x1 x2")
    p5 = build_p5().to_sympy(x1, x2)
    return sympy.Poly(sympy.resultant(sympy.diff(p5, x1), sympy.diff(p5, x2), x1), x2)


def dickson_identity_holds(F: FieldTable, y1: int, y2: int, n: int = 5) -> bool:
    """D_n^(i)(s1, s2) = s_i(y1^n, y2^n, y3^n) for y3 = (y1 y2)^-1, over F."""
    y3 = F.inv(F.mul(y1, y2))

    def sym(a, b, c):
        s1 = F.add(F.add(a, b), c)
        s2 = F.add(F.add(F.mul(a, b), F.mul(a, c)), F.mul(b, c))
        return s1, s2

    s1, s2 = sym(y1, y2, y3)
    t1, t2 = sym(F.pow(y1, n), F.pow(y2, n), F.pow(y3, n))
    d1, d2 = dickson_pair(n)
    e1 = _eval_fq(d1, F, s1, s2)
    e2 = _eval_fq(d2, F, s1, s2)
    return e1 == t1 and e2 == t2


def _eval_fq(poly: BivarPoly, F: FieldTable, a: int, b: int) -> int:
    acc = 0
    for (i, j), v in poly.terms.items():
        c = F.from_int(int(v)) if isinstance(v, int) or Fraction(v).denominator == 1 else None
        if c is None:
            fr = Fraction(v)
            c = F.mul(F.from_int(fr.numerator), F.inv(F.from_int(fr.denominator)))
        acc = F.add(acc, F.mul(c, F.mul(F.pow(a, i), F.pow(b, j))))
    return acc


def eval_p5_fq(F: FieldTable, a: int, b: int) -> int:
    return _eval_fq(build_p5(), F, a, b)


# ---------------------------------------------------------------------------
# Singular points of the covering
# ---------------------------------------------------------------------------

# cos(pi k/3) and sin(pi k/3) / (sqrt3/2) for k = 0..5, exact
_COS = (Fraction(1), Fraction(1, 2), Fraction(-1, 2), Fraction(-1), Fraction(-1, 2), Fraction(1, 2))
_SIN = (0, 1, 1, 0, -1, -1)


def _cos_sum(a: int, b: int) -> Fraction:
    return _COS[a % 6] + _COS[b % 6] + _COS[(a + b) % 6]


def _is_critical(a: int, b: int) -> bool:
    # gradient of cos(t1) + cos(t2) + cos(t1 + t2) at t = pi*(a, b)/3
    s12 = _SIN[(a + b) % 6]
    return _SIN[a % 6] + s12 == 0 and _SIN[b % 6] + s12 == 0


def singular_tuples() -> list[tuple[complex, ...]]:
    """The set T of 6-tuples (z1..z6) of sixth roots of unity, z3 = 1/(z1 z2), z6 = 1/(z4 z5),
    whose halves are critical points of the cosine sum with equal values."""
    crit = [(a, b) for a in range(6) for b in range(6) if _is_critical(a, b)]
    out = []
    for a1, a2 in crit:
        for a4, a5 in crit:
            if _cos_sum(a1, a2) == _cos_sum(a4, a5):
                out.append((a1, a2, (-a1 - a2) % 6, a4, a5, (-a4 - a5) % 6))
    return out


def count_y_singular() -> tuple[int, int]:
    t = singular_tuples()
    return len(t), len(t) * 5 ** 4


def tuple_as_roots(alpha: Iterable[int]) -> tuple[complex, ...]:
    return tuple(complex(math.cos(math.pi * a / 3), math.sin(math.pi * a / 3)) for a in alpha)

"""Exact arithmetic: Z[w], Q(sqrt5), Q(i), Q(zeta15), the coefficient algebra A,
and finite fields F_{p^n} with Zech-logarithm tables.

Throughout, w = (1 + sqrt5)/2 so that w^2 = w + 1.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

SQRT5 = math.sqrt(5.0)
W_REAL = (1.0 + SQRT5) / 2.0
W_CONJ_REAL = (1.0 - SQRT5) / 2.0


class DegenerateLatticeError(ValueError):
    pass


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to a rational")


# ---------------------------------------------------------------------------
# Q(sqrt5)
# ---------------------------------------------------------------------------

class QuadElem:
    """Element (a + b*w)/d of Q(sqrt5), stored reduced with d > 0.

    Elements with d == 1 are the integers Z[w]; ``QuadInt`` is an alias used
    where integrality is expected.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d=1):
        if not (isinstance(a, int) and isinstance(b, int) and isinstance(d, int)):
            fa, fb, fd = _to_fraction(a), _to_fraction(b), _to_fraction(d)
            fa, fb = fa / fd, fb / fd
            den = fa.denominator * fb.denominator // math.gcd(fa.denominator, fb.denominator)
            a = fa.numerator * (den // fa.denominator)
            b = fb.numerator * (den // fb.denominator)
            d = den
        if d == 0:
            raise ZeroDivisionError("zero denominator")
        if d < 0:
            a, b, d = -a, -b, -d
        g = math.gcd(math.gcd(a, b), d)
        if g > 1:
            a //= g
            b //= g
            d //= g
        self.a = a
        self.b = b
        self.d = d

    # construction helpers
    @classmethod
    def coerce(cls, x) -> "QuadElem":
        if isinstance(x, QuadElem):
            return x
        if isinstance(x, int):
            return cls(x, 0, 1)
        if isinstance(x, Fraction):
            return cls(x.numerator, 0, x.denominator)
        raise TypeError(f"cannot coerce {type(x).__name__} to QuadElem")

    @staticmethod
    def _raw(a: int, b: int, d: int) -> "QuadElem":
        obj = object.__new__(QuadElem)
        obj.a, obj.b, obj.d = a, b, d
        return obj

    # field operations
    def __add__(self, other):
        if isinstance(other, int):
            return QuadElem(self.a + other * self.d, self.b, self.d)
        other = QuadElem.coerce(other)
        if self.d == other.d:
            return QuadElem(self.a + other.a, self.b + other.b, self.d)
        return QuadElem(self.a * other.d + other.a * self.d,
                        self.b * other.d + other.b * self.d, self.d * other.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem._raw(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-QuadElem.coerce(other))

    def __rsub__(self, other):
        return QuadElem.coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return QuadElem(self.a * other, self.b * other, self.d)
        other = QuadElem.coerce(other)
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        bb = b1 * b2
        return QuadElem(a1 * a2 + bb, a1 * b2 + a2 * b1 + bb, self.d * other.d)

    __rmul__ = __mul__

    def conj(self) -> "QuadElem":
        """Galois conjugate: sigma(a + b w) = (a + b) - b w."""
        return QuadElem._raw(self.a + self.b, -self.b, self.d)

    def norm(self) -> Fraction:
        a, b = self.a, self.b
        return Fraction(a * a + a * b - b * b, self.d * self.d)

    def trace(self) -> Fraction:
        return Fraction(2 * self.a + self.b, self.d)

    def inverse(self) -> "QuadElem":
        n = self.a * self.a + self.a * self.b - self.b * self.b
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt5)")
        # 1/x = d * conj(num) / Nr(num)
        return QuadElem((self.a + self.b) * self.d, -self.b * self.d, n)

    def __truediv__(self, other):
        if isinstance(other, int):
            return QuadElem(self.a, self.b, self.d * other)
        return self * QuadElem.coerce(other).inverse()

    def __rtruediv__(self, other):
        return QuadElem.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = QuadElem(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # predicates and views
    def __eq__(self, other):
        if isinstance(other, QuadElem):
            return self.a == other.a and self.b == other.b and self.d == other.d
        if isinstance(other, (int, Fraction)):
            return self == QuadElem.coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_integral(self) -> bool:
        return self.d == 1

    def is_rational(self) -> bool:
        return self.b == 0

    def rational(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is not rational")
        return Fraction(self.a, self.d)

    def coords(self) -> tuple[Fraction, Fraction]:
        """Rational coordinates (x, y) with self = x + y*w."""
        return Fraction(self.a, self.d), Fraction(self.b, self.d)

    def embed(self, which: int = 1) -> float:
        """Real embedding: which=1 sends w to (1+sqrt5)/2, which=2 to (1-sqrt5)/2."""
        wv = W_REAL if which == 1 else W_CONJ_REAL
        return (self.a + self.b * wv) / self.d

    def _sign_at(self, which: int) -> int:
        # sign of a + b*w (d > 0) without floating point: 2a + b +- b*sqrt5
        r = 2 * self.a + self.b
        s = self.b if which == 1 else -self.b
        if r >= 0 and s >= 0:
            return 0 if (r == 0 and s == 0) else 1
        if r <= 0 and s <= 0:
            return -1
        lhs, rhs = r * r, 5 * s * s
        if r > 0:
            return 1 if lhs > rhs else -1
        return 1 if rhs > lhs else -1

    def sign(self, which: int = 1) -> int:
        return self._sign_at(which)

    def is_totally_positive(self) -> bool:
        return self._sign_at(1) > 0 and self._sign_at(2) > 0

    def __repr__(self):
        return f"QuadElem({self})"

    def __str__(self):
        return format_quad(self)


QuadInt = QuadElem
W = QuadElem(0, 1)
ONE = QuadElem(1)
ZERO = QuadElem(0)


def quad(a, b=0, d=1) -> QuadElem:
    return QuadElem(a, b, d)


def parse_quad(text: str) -> QuadElem:
    """Parse strings such as '3+w', '4-w', '-1+2w', '7', '5/6*w', 'a/d+b/d*w'."""
    s = text.replace(" ", "").replace("*", "")
    if not s:
        raise ValueError("empty element")
    terms, cur = [], ""
    for ch in s:
        if ch in "+-" and cur and cur[-1] not in "+-/":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    total = QuadElem(0)
    for t in terms:
        if t.endswith("w"):
            coef = t[:-1]
            if coef in ("", "+"):
                val = Fraction(1)
            elif coef == "-":
                val = Fraction(-1)
            else:
                val = Fraction(coef)
            total = total + QuadElem(0, val)
        else:
            total = total + QuadElem(Fraction(t))
    return total


def format_quad(x: QuadElem) -> str:
    """Serialize as 'a/d+b/d*w' (terms with zero coefficient dropped)."""
    def frac(n, d):
        f = Fraction(n, d)
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
    if x.b == 0:
        return frac(x.a, x.d)
    bw = frac(x.b, x.d)
    bw = "w" if bw == "1" else "-w" if bw == "-1" else f"{bw}*w"
    if x.a == 0:
        return bw
    return f"{frac(x.a, x.d)}{'' if bw.startswith('-') else '+'}{bw}"


def quad_norm_trace_conj(x: QuadElem) -> tuple[Fraction, Fraction, QuadElem]:
    x = QuadElem.coerce(x)
    return x.norm(), x.trace(), x.conj()


# ---------------------------------------------------------------------------
# Z[w]: Euclidean division, gcd, units, totally positive elements
# ---------------------------------------------------------------------------

def _round_half(fr: Fraction) -> int:
    return math.floor(fr + Fraction(1, 2))


def zw_divmod(x: QuadElem, y: QuadElem) -> tuple[QuadElem, QuadElem]:
    """Norm-Euclidean division in Z[w]: x = q*y + r with |Nr(r)| < |Nr(y)|."""
    if y.is_zero():
        raise ZeroDivisionError("division by zero in Z[w]")
    t = x / y
    qa, qb = t.coords()
    q = QuadElem(_round_half(qa), _round_half(qb))
    return q, x - q * y


def zw_gcd(x: QuadElem, y: QuadElem) -> QuadElem:
    while not y.is_zero():
        _, r = zw_divmod(x, y)
        x, y = y, r
    return x


def zw_gcd_many(items: Iterable[QuadElem]) -> QuadElem:
    g = QuadElem(0)
    for it in items:
        g = zw_gcd(g, it)
    return g


def frac_ideal_gcd(items: Iterable[QuadElem]) -> QuadElem:
    """Generator of the fractional ideal spanned by ``items`` (Z[w] is a PID)."""
    items = [QuadElem.coerce(t) for t in items]
    den = 1
    for t in items:
        den = den * t.d // math.gcd(den, t.d)
    g = zw_gcd_many([t * den for t in items])
    return g / den


def unit_normalize(x: QuadElem) -> QuadElem:
    """Canonical associate of a nonzero x (multiplication by a unit +-w^k).

    The result is totally positive when Nr(x) can be made positive, and is
    the (a, |b|, b)-minimal representative of its class modulo unit squares.
    """
    if x.is_zero():
        return x
    if x.norm() < 0:
        x = x * W
    if x.sign(1) < 0:
        x = -x
    return normalize_tp(x)


def normalize_tp(x: QuadElem) -> QuadElem:
    """Representative of x modulo squares of units, minimizing (a, |b|, b).

    For totally positive x the coordinate a is positive and is a convex
    function of k along x*w^(2k), so a walk in the descending direction
    finds the minimum.
    """
    w2, w2inv = W * W, (W * W).inverse()

    def key(t: QuadElem):
        return (Fraction(t.a, t.d), abs(Fraction(t.b, t.d)), Fraction(t.b, t.d))

    best = x
    for step in (w2, w2inv):
        cur = x
        while True:
            nxt = cur * step
            if key(nxt) < key(best):
                best = nxt
                cur = nxt
            else:
                break
    return best


def tp_enumerate(a_max: int) -> list[QuadElem]:
    """All totally positive a + b w with 1 <= a <= a_max, ordered by (a, b)."""
    if a_max < 1:
        raise ValueError("a_max must be >= 1")
    out = []
    for a in range(1, a_max + 1):
        # strict bounds -a/w < b < a/(w-1) = a*w
        lo = math.floor(-a / W_REAL) - 1
        hi = math.ceil(a * W_REAL) + 1
        for b in range(lo, hi + 1):
            x = QuadElem(a, b)
            if x.is_totally_positive():
                out.append(x)
    return out


# ---------------------------------------------------------------------------
# Hermite normal form over Z[w]
# ---------------------------------------------------------------------------

def _floor_mod(x: QuadElem, d: QuadElem) -> QuadElem:
    """Quotient q with x - q*d in the fundamental domain [0,1)^2 (in w-coordinates) times d."""
    t = x / d
    ta, tb = t.coords()
    return QuadElem(math.floor(ta), math.floor(tb))


def hnf_of(columns: Sequence[Sequence[QuadElem]]) -> list[list[QuadElem]]:
    """Hermite normal form of the Z[w]-module spanned by integral column vectors.

    ``columns`` is a list of k vectors of length 4.  Returns four columns
    forming an upper-triangular basis (column j has zeros below row j) with
    canonical diagonal associates and off-diagonal entries reduced into a
    fixed fundamental domain modulo the diagonal.
    """
    cols = [[QuadElem.coerce(c) for c in col] for col in columns]
    if not cols:
        raise DegenerateLatticeError("no generators")
    n = len(cols[0])
    for c in cols:
        if any(not e.is_integral() for e in c):
            raise ValueError("hnf_of expects integral entries; scale first")
    basis: list[list[QuadElem] | None] = [None] * n
    rest = [c for c in cols if any(not e.is_zero() for e in c)]
    for row in range(n - 1, -1, -1):
        active = [c for c in rest if not c[row].is_zero()]
        idle = [c for c in rest if c[row].is_zero()]
        if not active:
            raise DegenerateLatticeError(f"rank deficiency at row {row}")
        while len(active) > 1:
            active.sort(key=lambda c: abs(c[row].norm()))
            piv = active[0]
            nxt = [piv]
            for c in active[1:]:
                q, _ = zw_divmod(c[row], piv[row])
                c = [ci - q * pi for ci, pi in zip(c, piv)]
                if c[row].is_zero():
                    if any(not e.is_zero() for e in c):
                        idle.append(c)
                else:
                    nxt.append(c)
            active = nxt
        piv = active[0]
        target = unit_normalize(piv[row])
        u = target / piv[row]
        basis[row] = [e * u for e in piv]
        rest = idle
    if any(any(not e.is_zero() for e in c) for c in rest):
        raise AssertionError("HNF elimination left nonzero residue")
    # reduce entries above the diagonal
    for j in range(n):
        col = basis[j]
        for i in range(j - 1, -1, -1):
            q = _floor_mod(col[i], basis[i][i])
            if not q.is_zero():
                col = [cj - q * bi for cj, bi in zip(col, basis[i])]
        basis[j] = col
    return basis


# ---------------------------------------------------------------------------
# Q(i)
# ---------------------------------------------------------------------------

class GaussRatElem:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _to_fraction(re) if not isinstance(re, Fraction) else re
        self.im = _to_fraction(im) if not isinstance(im, Fraction) else im

    @classmethod
    def coerce(cls, x):
        if isinstance(x, GaussRatElem):
            return x
        return cls(_to_fraction(x), 0)

    def __add__(self, o):
        o = GaussRatElem.coerce(o)
        return GaussRatElem(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRatElem(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-GaussRatElem.coerce(o))

    def __rsub__(self, o):
        return GaussRatElem.coerce(o) - self

    def __mul__(self, o):
        o = GaussRatElem.coerce(o)
        return GaussRatElem(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        return GaussRatElem(self.re / n, -self.im / n)

    def __truediv__(self, o):
        return self * GaussRatElem.coerce(o).inverse()

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            o = GaussRatElem.coerce(o)
        if not isinstance(o, GaussRatElem):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def __repr__(self):
        return f"GaussRatElem({self.re}, {self.im})"


I_UNIT = GaussRatElem(0, 1)


# ---------------------------------------------------------------------------
# Q(zeta15)
# ---------------------------------------------------------------------------

# Phi_15(x) = x^8 - x^7 + x^5 - x^4 + x^3 - x + 1, so
# x^8 = x^7 - x^5 + x^4 - x^3 + x - 1
_PHI15_TAIL = (-1, 1, 0, -1, 1, -1, 0, 1)  # coefficients of x^0..x^7 in x^8 mod Phi15


class CycloElem:
    """Element of Q(zeta15) as 8 rational coefficients in the power basis."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence = ()):
        c = [0] * 8
        for i, v in enumerate(coeffs):
            c[i] = v
        self.c = tuple(v if isinstance(v, (int, Fraction)) else _to_fraction(v) for v in c)

    @staticmethod
    def from_poly(coeffs: Sequence) -> "CycloElem":
        """Reduce an arbitrary-length polynomial in zeta15 modulo Phi15."""
        c = list(coeffs)
        for k in range(len(c) - 1, 7, -1):
            top = c[k]
            if top:
                c[k] = 0
                for i, t in enumerate(_PHI15_TAIL):
                    if t:
                        c[k - 8 + i] += t * top
        return CycloElem(c[:8])

    @classmethod
    def coerce(cls, x):
        if isinstance(x, CycloElem):
            return x
        if isinstance(x, (int, Fraction)):
            return cls([x])
        if isinstance(x, QuadElem):
            return cls([Fraction(x.a, x.d)]) + CYCLO_W * Fraction(x.b, x.d)
        raise TypeError(f"cannot coerce {type(x).__name__} to CycloElem")

    def __add__(self, o):
        o = CycloElem.coerce(o)
        return CycloElem([x + y for x, y in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return CycloElem([-x for x in self.c])

    def __sub__(self, o):
        return self + (-CycloElem.coerce(o))

    def __rsub__(self, o):
        return CycloElem.coerce(o) - self

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return CycloElem([x * o for x in self.c])
        o = CycloElem.coerce(o)
        prod = [0] * 15
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(o.c):
                    if y:
                        prod[i + j] += x * y
        return CycloElem.from_poly(prod)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        r, b = CycloElem([1]), self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def galois(self, k: int) -> "CycloElem":
        """Apply the automorphism zeta15 -> zeta15^k (gcd(k,15) = 1)."""
        if math.gcd(k, 15) != 1:
            raise ValueError("k must be coprime to 15")
        poly = [0] * 15
        for i, x in enumerate(self.c):
            if x:
                poly[(i * k) % 15] += x
        return CycloElem.from_poly(poly)

    def inverse(self) -> "CycloElem":
        # product of the nontrivial conjugates divided by the norm
        conj = CycloElem([1])
        for k in (2, 4, 7, 8, 11, 13, 14):
            conj = conj * self.galois(k)
        n = (self * conj).c
        if any(n[1:]):
            raise ArithmeticError("norm is not rational; internal error")
        if n[0] == 0:
            raise ZeroDivisionError("inverse of zero in Q(zeta15)")
        return conj * (Fraction(1) / Fraction(n[0]))

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction)):
            return CycloElem([Fraction(x) / o for x in self.c])
        return self * CycloElem.coerce(o).inverse()

    def __eq__(self, o):
        if isinstance(o, (int, Fraction, QuadElem)):
            o = CycloElem.coerce(o)
        if not isinstance(o, CycloElem):
            return NotImplemented
        return all(x == y for x, y in zip(self.c, o.c))

    def __hash__(self):
        return hash(tuple(Fraction(x) for x in self.c))

    def is_zero(self) -> bool:
        return not any(self.c)

    def to_complex(self) -> complex:
        z = complex(math.cos(2 * math.pi / 15), math.sin(2 * math.pi / 15))
        return sum(complex(float(x)) * z ** i for i, x in enumerate(self.c))

    def __repr__(self):
        return f"CycloElem({[str(x) for x in self.c]})"


ZETA15 = CycloElem([0, 1])
ZETA5 = ZETA15 ** 3
ZETA3 = ZETA15 ** 5
CYCLO_W = -(ZETA5 ** 2) - ZETA5 ** 3


# ---------------------------------------------------------------------------
# The coefficient algebra A = F[u, v], u^2 = -6, v^2 = vsq
# ---------------------------------------------------------------------------

VSQ_CHOICES = {"3-w": QuadElem(3, -1), "2+w": QuadElem(2, 1)}


class AlgAElem:
    """c00 + c10*u + c01*v + c11*u*v with c's in Q(sqrt5); u^2 = -6, v^2 = vsq."""

    __slots__ = ("c00", "c10", "c01", "c11", "vsq")

    def __init__(self, c00=0, c10=0, c01=0, c11=0, vsq: QuadElem = VSQ_CHOICES["3-w"]):
        self.c00 = QuadElem.coerce(c00)
        self.c10 = QuadElem.coerce(c10)
        self.c01 = QuadElem.coerce(c01)
        self.c11 = QuadElem.coerce(c11)
        self.vsq = vsq

    def _coerce(self, o):
        if isinstance(o, AlgAElem):
            if o.vsq != self.vsq:
                raise ValueError("mixing algebras with different v^2")
            return o
        return AlgAElem(QuadElem.coerce(o), vsq=self.vsq)

    def comps(self):
        return (self.c00, self.c10, self.c01, self.c11)

    def __add__(self, o):
        o = self._coerce(o)
        return AlgAElem(self.c00 + o.c00, self.c10 + o.c10, self.c01 + o.c01,
                        self.c11 + o.c11, self.vsq)

    __radd__ = __add__

    def __neg__(self):
        return AlgAElem(-self.c00, -self.c10, -self.c01, -self.c11, self.vsq)

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __mul__(self, o):
        if isinstance(o, (int, Fraction, QuadElem)):
            s = QuadElem.coerce(o)
            return AlgAElem(self.c00 * s, self.c10 * s, self.c01 * s, self.c11 * s, self.vsq)
        o = self._coerce(o)
        return alg_a_mul(self, o)

    __rmul__ = __mul__

    def sigma_u(self):
        return AlgAElem(self.c00, -self.c10, self.c01, -self.c11, self.vsq)

    def sigma_v(self):
        return AlgAElem(self.c00, self.c10, -self.c01, -self.c11, self.vsq)

    def inverse(self) -> "AlgAElem":
        a = self.sigma_u()
        b = self.sigma_v()
        c = b.sigma_u()
        conj = a * b * c
        n = self * conj
        if not (n.c10.is_zero() and n.c01.is_zero() and n.c11.is_zero()):
            raise ArithmeticError("norm to F not in F; internal error")
        if n.c00.is_zero():
            raise ZeroDivisionError("inverse of zero in A")
        return conj * n.c00.inverse()

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction, QuadElem)):
            return self * QuadElem.coerce(o).inverse()
        return self * self._coerce(o).inverse()

    def is_zero(self) -> bool:
        return self.c00.is_zero() and self.c10.is_zero() and self.c01.is_zero() and self.c11.is_zero()

    def in_f(self) -> bool:
        return self.c10.is_zero() and self.c01.is_zero() and self.c11.is_zero()

    def in_fu(self) -> bool:
        return self.c01.is_zero() and self.c11.is_zero()

    def in_fu_v(self) -> bool:
        return self.c00.is_zero() and self.c10.is_zero()

    def __eq__(self, o):
        if isinstance(o, (int, Fraction, QuadElem)):
            o = AlgAElem(QuadElem.coerce(o), vsq=self.vsq)
        if not isinstance(o, AlgAElem):
            return NotImplemented
        return self.comps() == o.comps()

    def __hash__(self):
        return hash(self.comps())

    def __repr__(self):
        parts = []
        for c, tag in zip(self.comps(), ("", "u", "v", "uv")):
            if not c.is_zero():
                parts.append(f"({c}){tag}")
        return "AlgA[" + (" + ".join(parts) if parts else "0") + "]"


def alg_a_mul(x: AlgAElem, y: AlgAElem) -> AlgAElem:
    if x.vsq != y.vsq:
        raise ValueError("mixing algebras with different v^2")
    s = x.vsq
    a0, a1, a2, a3 = x.comps()
    b0, b1, b2, b3 = y.comps()
    # (a0 + a1 u + a2 v + a3 uv)(b0 + b1 u + b2 v + b3 uv)
    c00 = a0 * b0 - 6 * (a1 * b1) + s * (a2 * b2) - 6 * s * (a3 * b3)
    c10 = a0 * b1 + a1 * b0 + s * (a2 * b3 + a3 * b2)
    c01 = a0 * b2 + a2 * b0 - 6 * (a1 * b3 + a3 * b1)
    c11 = a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1
    return AlgAElem(c00, c10, c01, c11, s)


# ---------------------------------------------------------------------------
# Finite fields F_{p^n}
# ---------------------------------------------------------------------------

TABLE_BUDGET = 1 << 24


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for sp in small:
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, n) with q = p^n, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    for n in range(1, q.bit_length() + 1):
        p = round(q ** (1.0 / n))
        for cand in (p - 1, p, p + 1):
            if cand >= 2 and cand ** n == q and is_prime(cand):
                return cand, n
    raise ValueError(f"{q} is not a prime power")


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _polymulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    """Multiply coefficient lists (low degree first) modulo monic f over F_p."""
    n = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k]
        if c:
            for i in range(n + 1):
                prod[k - n + i] = (prod[k - n + i] - c * f[i]) % p
    prod = prod[:n] + [0] * max(0, n - len(prod))
    return prod


def _polypowmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    n = len(f) - 1
    r = [1] + [0] * (n - 1)
    while e:
        if e & 1:
            r = _polymulmod(r, a, f, p)
        a = _polymulmod(a, a, f, p)
        e >>= 1
    return r


def _polygcd(a: list[int], b: list[int], p: int) -> list[int]:
    def trim(x):
        x = list(x)
        while x and x[-1] % p == 0:
            x.pop()
        return x
    a, b = trim(a), trim(b)
    while b:
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b):
            c = a[-1] * inv % p
            shift = len(a) - len(b)
            for i, y in enumerate(b):
                a[shift + i] = (a[shift + i] - c * y) % p
            a = trim(a)
            if not a:
                break
        a, b = b, a
    return a


def is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's test for monic f (coefficients low degree first) over F_p."""
    n = len(f) - 1
    if n == 1:
        return True
    x = [0, 1] + [0] * (n - 2)
    xpn = _polypowmod(x, p ** n, f, p)
    if [c % p for c in xpn] != [c % p for c in x]:
        return False
    for d in prime_factors(n):
        xq = _polypowmod(x, p ** (n // d), f, p)
        diff = [(xq[i] - x[i]) % p for i in range(n)]
        g = _polygcd(f, diff, p)
        if len(g) > 1:
            return False
    return True


def smallest_irreducible(p: int, n: int) -> list[int]:
    """Monic irreducible of degree n over F_p with lexicographically smallest coefficients."""
    if n == 1:
        return [0, 1]
    for idx in range(p ** n):
        coeffs, t = [], idx
        for _ in range(n):
            coeffs.append(t % p)
            t //= p
        # order by the constant term last so that x^n + x + c style polys come first
        f = coeffs + [1]
        if f[0] == 0:
            continue
        if is_irreducible(f, p):
            return f
    raise RuntimeError(f"no irreducible polynomial of degree {n} over F_{p}")


class FieldTable:
    """F_{p^n} with elements encoded as integers sum c_i p^i (c_i coefficient of x^i).

    When q = p^n is within the table budget, discrete-log (``log``), antilog
    (``exp``) and Zech tables are built; ``zech[k] = log(1 + g^k)`` with -1
    standing for log(0).
    """

    def __init__(self, p: int, n: int, budget: int | None = None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if not 1 <= n <= 4:
            raise ValueError("degree must be between 1 and 4")
        self.p, self.n = p, n
        self.q = p ** n
        self.modulus = smallest_irreducible(p, n)
        self.has_tables = self.q <= (TABLE_BUDGET if budget is None else budget)
        self.gen = self._find_generator()
        if self.has_tables:
            self._build_tables()

    # element <-> coefficient list
    def to_coeffs(self, e: int) -> list[int]:
        out = []
        for _ in range(self.n):
            out.append(e % self.p)
            e //= self.p
        return out

    def from_coeffs(self, c: Sequence[int]) -> int:
        e = 0
        for x in reversed(list(c)[: self.n] + [0] * (self.n - len(c))):
            e = e * self.p + (x % self.p)
        return e

    def _poly_mul(self, a: int, b: int) -> int:
        return self.from_coeffs(_polymulmod(self.to_coeffs(a), self.to_coeffs(b), self.modulus, self.p))

    def _poly_pow(self, a: int, e: int) -> int:
        return self.from_coeffs(_polypowmod(self.to_coeffs(a), e, self.modulus, self.p))

    def _find_generator(self) -> int:
        order = self.q - 1
        fac = prime_factors(order)
        for g in range(2 if self.n == 1 else self.p, self.q):
            if all(self._poly_pow(g, order // r) != 1 for r in fac):
                return g
        if self.q == 2:
            return 1
        if self.q == 3:
            return 2
        raise RuntimeError("no generator found")

    def _build_tables(self):
        q, p, n = self.q, self.p, self.n
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        if n == 1:
            x = 1
            g = self.gen
            for k in range(q - 1):
                exp[k] = x
                x = x * g % p
        else:
            # multiplication by g as an F_p-linear map on coefficient vectors
            gcoef = self.to_coeffs(self.gen)
            cols = []
            for i in range(n):
                basis = [0] * n
                basis[i] = 1
                cols.append(_polymulmod(basis, gcoef, self.modulus, p))
            mat = np.array(cols, dtype=np.int64).T  # mat @ v = coeffs of g * v
            v = np.zeros(n, dtype=np.int64)
            v[0] = 1
            powers = p ** np.arange(n, dtype=np.int64)
            for k in range(q - 1):
                exp[k] = int(v @ powers)
                v = (mat @ v) % p
        log[exp] = np.arange(q - 1, dtype=np.int64)
        if len(set(exp.tolist())) != q - 1:
            raise RuntimeError("generator does not have full order")
        # Zech: 1 + g^k, adding 1 to the constant coefficient
        c0 = exp % p
        one_plus = exp - c0 + (c0 + 1) % p
        zech = log[one_plus]
        self.exp, self.log, self.zech = exp, log, zech

    # scalar arithmetic on encoded elements
    def add(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a + b) % self.p
        ca, cb = self.to_coeffs(a), self.to_coeffs(b)
        return self.from_coeffs([x + y for x, y in zip(ca, cb)])

    def neg(self, a: int) -> int:
        return self.from_coeffs([-x for x in self.to_coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.n == 1:
            return a * b % self.p
        if self.has_tables:
            return int(self.exp[(self.log[a] + self.log[b]) % (self.q - 1)])
        return self._poly_mul(a, b)

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 0
        if self.has_tables:
            return int(self.exp[(int(self.log[a]) * e) % (self.q - 1)])
        return self._poly_pow(a, e % (self.q - 1))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, -1)

    def from_int(self, k: int) -> int:
        return k % self.p

    def element(self, code: int) -> "FqElem":
        return FqElem(self, code)

    def elements(self):
        return (FqElem(self, e) for e in range(self.q))

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    # vectorized helpers over numpy code arrays
    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.n == 1:
            return (a + b) % self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        scale = 1
        for _ in range(self.n):
            out += (((a // scale) + (b // scale)) % self.p) * scale
            scale *= self.p
        return out

    def vneg(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.n == 1:
            return (-a) % self.p
        out = np.zeros_like(a)
        scale = 1
        for _ in range(self.n):
            out += ((-(a // scale)) % self.p) * scale
            scale *= self.p
        return out

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.n == 1:
            return (a * b) % self.p
        la, lb = self.log[a], self.log[b]
        res = self.exp[(la + lb) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, res)

    def vpow(self, a: np.ndarray, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.n == 1:
            out = np.ones_like(a)
            base = a.copy()
            k = e
            while k:
                if k & 1:
                    out = out * base % self.p
                base = base * base % self.p
                k >>= 1
            return out
        res = self.exp[(self.log[a] * e) % (self.q - 1)]
        return np.where(a == 0, 0 if e > 0 else 1, res)

    def fifth_power_map(self) -> np.ndarray:
        """Array t -> t^5 over all element codes."""
        return self.vpow(np.arange(self.q, dtype=np.int64), 5)

    def histogram(self, values: np.ndarray) -> np.ndarray:
        return np.bincount(np.asarray(values, dtype=np.int64).ravel(), minlength=self.q)

    def __repr__(self):
        return f"FieldTable(p={self.p}, n={self.n}, modulus={self.modulus})"


class FqElem:
    """Convenience wrapper around an encoded element of a FieldTable."""

    __slots__ = ("F", "v")

    def __init__(self, F: FieldTable, v: int):
        self.F = F
        self.v = int(v)

    def _c(self, o):
        if isinstance(o, FqElem):
            return o.v
        if isinstance(o, int):
            return self.F.from_int(o)
        if isinstance(o, Fraction):
            return self.F.mul(self.F.from_int(o.numerator), self.F.inv(self.F.from_int(o.denominator)))
        raise TypeError(f"cannot coerce {type(o).__name__} into F_q")

    def __add__(self, o):
        return FqElem(self.F, self.F.add(self.v, self._c(o)))

    __radd__ = __add__

    def __neg__(self):
        return FqElem(self.F, self.F.neg(self.v))

    def __sub__(self, o):
        return FqElem(self.F, self.F.sub(self.v, self._c(o)))

    def __rsub__(self, o):
        return FqElem(self.F, self.F.sub(self._c(o), self.v))

    def __mul__(self, o):
        return FqElem(self.F, self.F.mul(self.v, self._c(o)))

    __rmul__ = __mul__

    def __truediv__(self, o):
        return FqElem(self.F, self.F.mul(self.v, self.F.inv(self._c(o))))

    def __pow__(self, e: int):
        return FqElem(self.F, self.F.pow(self.v, e))

    def inverse(self):
        return FqElem(self.F, self.F.inv(self.v))

    def is_zero(self):
        return self.v == 0

    def __eq__(self, o):
        if isinstance(o, (int, Fraction, FqElem)):
            return self.v == self._c(o)
        return NotImplemented

    def __hash__(self):
        return hash((self.F.q, self.v))

    def __repr__(self):
        return f"FqElem({self.v} in F_{self.F.q})"


@lru_cache(maxsize=64)
def fq_build(p: int, n: int = 1) -> FieldTable:
    return FieldTable(p, n)


@lru_cache(maxsize=64)
def field_for_q(q: int) -> FieldTable:
    p, n = prime_power(q)
    return fq_build(p, n)


def cyclo_to_fq(x: CycloElem, F: FieldTable, zeta: int) -> int:
    """Reduce a CycloElem into F using zeta as the image of zeta15 (denominators prime to p)."""
    acc, power = 0, 1
    for c in x.c:
        if c:
            fr = Fraction(c)
            num = F.from_int(fr.numerator)
            den = F.from_int(fr.denominator)
            if den == 0:
                raise ZeroDivisionError("denominator divisible by the characteristic")
            acc = F.add(acc, F.mul(F.mul(num, F.inv(den)), power))
        power = F.mul(power, zeta)
    return acc


def root_of_unity(F: FieldTable, order: int) -> int:
    """An element of exact multiplicative order ``order`` in F."""
    if (F.q - 1) % order:
        raise ValueError(f"F_{F.q} has no element of order {order}")
    return F.pow(F.gen, (F.q - 1) // order)


# ---------------------------------------------------------------------------
# Dickson permutation criterion
# ---------------------------------------------------------------------------

def dickson_vector_map(F: FieldTable, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate (D_n^(1), D_n^(2)) with a = 1 on all of F_q^2 (arrays indexed by x1*q + x2)."""
    q = F.q
    x1 = np.repeat(np.arange(q, dtype=np.int64), q)
    x2 = np.tile(np.arange(q, dtype=np.int64), q)
    three = np.full_like(x1, F.from_int(3))

    def run(s, t):
        # D_k = s*D_{k-1} - t*D_{k-2} + D_{k-3}
        d0 = three
        d1 = s
        d2 = F.vadd(F.vmul(s, s), F.vneg(F.vmul(np.full_like(t, F.from_int(2)), t)))
        seq = [d0, d1, d2]
        for _ in range(3, n + 1):
            a, b, c = seq[-1], seq[-2], seq[-3]
            nxt = F.vadd(F.vadd(F.vmul(s, a), F.vneg(F.vmul(t, b))), c)
            seq.append(nxt)
        return seq[n]

    return run(x1, x2), run(x2, x1)


def dickson_permutes(n: int, q: int, brute_force_limit: int = 200) -> bool:
    """Whether the degree-n Dickson vector map permutes F_q^2.

    The criterion gcd(n, q^s - 1) = 1 for s = 1, 2 is cross-checked against
    brute-force bijectivity when q <= ``brute_force_limit``.
    """
    crit = math.gcd(n, q - 1) == 1 and math.gcd(n, q * q - 1) == 1
    if q <= brute_force_limit:
        F = field_for_q(q)
        d1, d2 = dickson_vector_map(F, n)
        image = np.unique(d1 * q + d2)
        brute = image.size == q * q
        if brute != crit:
            raise ArithmeticError(
                f"Dickson criterion ({crit}) disagrees with brute force ({brute}) at n={n}, q={q}")
    return crit

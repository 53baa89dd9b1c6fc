"""The definite quaternion algebra B = (-6, w-3) over F = Q(sqrt5), Z[w]-lattices
in it, the orders O' and O, and their local invariants.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import linalg
from .arith import (ONE, W, ZERO, QuadElem, frac_ideal_gcd, hnf_of, normalize_tp,
                    unit_normalize)

X_SQ = QuadElem(-6)
Y_SQ = QuadElem(-3, 1)          # w - 3 = sqrt5 (1 - sqrt5)/2

SQRT5 = QuadElem(-1, 2)         # 2w - 1
P2, P3, P5 = QuadElem(2), QuadElem(3), SQRT5


class LatticeError(ValueError):
    pass


def _q(x) -> QuadElem:
    return QuadElem.coerce(x)


class QuatElem:
    """c1 + cX X + cY Y + cXY XY with X^2 = -6, Y^2 = w - 3, XY = -YX."""

    __slots__ = ("c",)

    def __init__(self, c1=0, cX=0, cY=0, cXY=0):
        self.c = (_q(c1), _q(cX), _q(cY), _q(cXY))

    @classmethod
    def from_coords(cls, v: Sequence) -> "QuatElem":
        return cls(*v)

    @property
    def coords(self) -> tuple[QuadElem, ...]:
        return self.c

    def __add__(self, o):
        o = as_quat(o)
        return QuatElem(*(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return QuatElem(*(-a for a in self.c))

    def __sub__(self, o):
        return self + (-as_quat(o))

    def __rsub__(self, o):
        return as_quat(o) - self

    def __mul__(self, o):
        if isinstance(o, (int, Fraction, QuadElem)):
            s = _q(o)
            return QuatElem(*(a * s for a in self.c))
        return quat_mul(self, o)

    def __rmul__(self, o):
        s = _q(o)
        return QuatElem(*(s * a for a in self.c))

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction, QuadElem)):
            inv = _q(o).inverse()
            return QuatElem(*(a * inv for a in self.c))
        return self * o.inverse()

    def conj(self) -> "QuatElem":
        a, b, c, d = self.c
        return QuatElem(a, -b, -c, -d)

    def nrd(self) -> QuadElem:
        a, b, c, d = self.c
        return a * a - X_SQ * b * b - Y_SQ * (c * c - X_SQ * d * d)

    def trd(self) -> QuadElem:
        return self.c[0] * 2

    def inverse(self) -> "QuatElem":
        n = self.nrd()
        if n.is_zero():
            raise ZeroDivisionError("zero quaternion")
        return self.conj() / n

    def sigma(self) -> "QuatElem":
        """Galois conjugation of F applied to the coordinates."""
        return QuatElem(*(a.conj() for a in self.c))

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.c)

    def __eq__(self, o):
        if not isinstance(o, QuatElem):
            try:
                o = as_quat(o)
            except TypeError:
                return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"QuatElem({', '.join(str(a) for a in self.c)})"

    def __str__(self):
        names = ("", "X", "Y", "XY")
        parts = [f"({a})" + (f"*{n}" if n else "") for a, n in zip(self.c, names) if not a.is_zero()]
        return " + ".join(parts) or "0"


def as_quat(x) -> QuatElem:
    if isinstance(x, QuatElem):
        return x
    if isinstance(x, (int, Fraction, QuadElem)):
        return QuatElem(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to QuatElem")


def quat_mul(x: QuatElem, y: QuatElem) -> QuatElem:
    # write b = l1 + l2 Y with l = p + q X in L = F(X); Y l = conj(l) Y
    a1, b1, c1, d1 = x.c
    a2, b2, c2, d2 = y.c

    def lmul(p1, q1, p2, q2):
        return p1 * p2 + X_SQ * q1 * q2, p1 * q2 + q1 * p2

    # l1 m1 + l2 conj(m2) Y^2
    r1 = lmul(a1, b1, a2, b2)
    r2 = lmul(c1, d1, c2, -d2)
    # (l1 m2 + l2 conj(m1)) Y
    s1 = lmul(a1, b1, c2, d2)
    s2 = lmul(c1, d1, a2, -b2)
    return QuatElem(r1[0] + Y_SQ * r2[0], r1[1] + Y_SQ * r2[1], s1[0] + s2[0], s1[1] + s2[1])


X = QuatElem(0, 1)
Y = QuatElem(0, 0, 1)
XY = QuatElem(0, 0, 0, 1)
Q_ONE = QuatElem(1)


def trace_pairing(x: QuatElem, y: QuatElem) -> QuadElem:
    """Tr_{B/F}(x * conj(y))."""
    a1, b1, c1, d1 = x.c
    a2, b2, c2, d2 = y.c
    return (a1 * a2 - X_SQ * b1 * b2 - Y_SQ * (c1 * c2 - X_SQ * d1 * d2)) * 2


# ---------------------------------------------------------------------------
# Local arithmetic of Z[w]
# ---------------------------------------------------------------------------

def valuation(x: QuadElem, pi: QuadElem) -> int:
    """Valuation of a nonzero x at the prime ideal (pi)."""
    if x.is_zero():
        raise ValueError("valuation of zero")
    num = QuadElem(x.a, x.b)
    v = 0
    while (num / pi).is_integral():
        num = num / pi
        v += 1
    den = QuadElem(x.d)
    while (den / pi).is_integral():
        den = den / pi
        v -= 1
    return v


def residue_f5(x: QuadElem) -> int:
    """Reduction of a P5-integral element to Z[w]/(sqrt5) = F_5 (w = 3)."""
    if x.d % 5 == 0:
        raise ValueError(f"{x} is not integral at P5")
    return (x.a + 3 * x.b) * pow(x.d, -1, 5) % 5


def _residue_pow_inert(x: QuadElem, e: int, p: int) -> tuple[int, int]:
    # x in Z[w]_(p) with p inert; returns (a, b) of x^e mod p
    inv = pow(x.d, -1, p)
    a, b = x.a * inv % p, x.b * inv % p
    ra, rb = 1, 0
    while e:
        if e & 1:
            ra, rb = (ra * a + rb * b) % p, (ra * b + rb * a + rb * b) % p
        a, b = (a * a + b * b) % p, (2 * a * b + b * b) % p
        e >>= 1
    return ra, rb


def tame_hilbert(a: QuadElem, b: QuadElem, pi: QuadElem, residue_size: int, p: int) -> int:
    """Hilbert symbol (a, b) at an odd prime (pi) with residue field of size residue_size."""
    alpha, beta = valuation(a, pi), valuation(b, pi)
    u = QuadElem(-1) ** (alpha * beta) * a ** beta / b ** alpha
    e = (residue_size - 1) // 2
    if residue_size == p:  # split or ramified: residue field F_p
        if p == 5 and pi == P5:
            r = pow(residue_f5(u), e, 5)
        else:
            raise NotImplementedError("only P5 among degree-one primes")
        return 1 if r == 1 else -1
    ra, rb = _residue_pow_inert(u, e, p)
    return 1 if (ra, rb) == (1, 0) else -1


def hilbert_checks(a: QuadElem = X_SQ, b: QuadElem = Y_SQ) -> dict[str, int]:
    """Local symbols of (a, b) at the places where they can be -1."""
    out = {
        "inf1": -1 if (a.sign(1) < 0 and b.sign(1) < 0) else 1,
        "inf2": -1 if (a.sign(2) < 0 and b.sign(2) < 0) else 1,
        "P3": tame_hilbert(a, b, P3, 9, 3),
        "P5": tame_hilbert(a, b, P5, 5, 5),
    }
    # other odd primes see units only; P2 follows from the product formula
    out["P2"] = math.prod(out.values())
    return out


def ramified_places(a: QuadElem = X_SQ, b: QuadElem = Y_SQ) -> list[str]:
    return sorted(k for k, v in hilbert_checks(a, b).items() if v == -1)


def quad_sqrt(x: QuadElem) -> QuadElem | None:
    """Exact square root in F, or None."""
    if x.is_zero():
        return x
    if not x.is_totally_positive():
        return None
    scale = x.d
    y = x * (scale * scale)         # integral
    r1, r2 = math.sqrt(y.embed(1)), math.sqrt(y.embed(2))
    for s2 in (r2, -r2):
        # a + b w1 = r1, a + b w2 = s2
        bb = (r1 - s2) / math.sqrt(5)
        aa = r1 - bb * (1 + math.sqrt(5)) / 2
        for da in (-1, 0, 1):
            for db in (-1, 0, 1):
                cand = QuadElem(round(aa) + da, round(bb) + db)
                if cand * cand == y:
                    return cand / scale
    return None


def ideal_sqrt(x: QuadElem) -> QuadElem:
    """Generator g with (g)^2 = (x)."""
    for u in (ONE, -ONE, W, -W):
        r = quad_sqrt(x * u)
        if r is not None:
            return unit_normalize(r)
    raise LatticeError(f"({x}) is not the square of an ideal")


# ---------------------------------------------------------------------------
# Lattices
# ---------------------------------------------------------------------------

class Lattice:
    """Full Z[w]-lattice in B, stored as (integer scale d, HNF of d*L).

    ``basis`` holds the four Z[w]-basis quaternions of L.
    """

    __slots__ = ("d", "hnf", "basis")

    def __init__(self, gens: Iterable[QuatElem]):
        gens = [as_quat(g) for g in gens]
        d = 1
        for g in gens:
            for a in g.c:
                d = d * a.d // math.gcd(d, a.d)
        cols = [[a * d for a in g.c] for g in gens if not g.is_zero()]
        try:
            self.hnf = tuple(tuple(col) for col in hnf_of(cols))
        except ValueError as exc:
            raise LatticeError(str(exc)) from exc
        self.d = d
        self.basis = tuple(QuatElem(*col) / d for col in self.hnf)

    def __eq__(self, o):
        return isinstance(o, Lattice) and self.d == o.d and self.hnf == o.hnf

    def __hash__(self):
        return hash((self.d, self.hnf))

    def __repr__(self):
        return f"Lattice({list(map(str, self.basis))})"

    def coords_of(self, x: QuatElem) -> list[QuadElem]:
        # back substitution in the upper-triangular HNF
        v = [a * self.d for a in as_quat(x).c]
        out = [ZERO] * 4
        for j in range(3, -1, -1):
            c = v[j] / self.hnf[j][j]
            out[j] = c
            if not c.is_zero():
                v = [vi - c * hj for vi, hj in zip(v, self.hnf[j])]
        return out

    def contains(self, x: QuatElem) -> bool:
        return all(c.is_integral() for c in self.coords_of(x))

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(self.contains(b) for b in other.basis)

    def __mul__(self, other):
        if isinstance(other, Lattice):
            return Lattice(a * b for a in self.basis for b in other.basis)
        return Lattice(b * other for b in self.basis)

    def __rmul__(self, other):
        return Lattice(other * b for b in self.basis)

    def __add__(self, other: "Lattice") -> "Lattice":
        return Lattice(self.basis + other.basis)

    def conj(self) -> "Lattice":
        return Lattice(b.conj() for b in self.basis)

    def gram(self) -> list[list[QuadElem]]:
        return [[trace_pairing(a, b) for b in self.basis] for a in self.basis]

    def dual(self) -> "Lattice":
        return Lattice(dual_basis(self.basis))

    def intersect(self, other: "Lattice") -> "Lattice":
        return (self.dual() + other.dual()).dual()

    def norm_ideal(self) -> QuadElem:
        """Totally positive generator of the ideal spanned by Nr(L)."""
        gens = [b.nrd() for b in self.basis]
        gens += [trace_pairing(a, b) for a, b in itertools.combinations(self.basis, 2)]
        return unit_normalize(frac_ideal_gcd(gens))

    def index_in(self, bigger: "Lattice") -> QuadElem:
        """Generator of the index ideal [bigger : self]."""
        m = [bigger.coords_of(b) for b in self.basis]
        return unit_normalize(linalg.det(m, ONE))

    def is_order(self) -> bool:
        return self.contains(Q_ONE) and all(self.contains(a * b) for a in self.basis for b in self.basis)

    def left_order(self) -> "Lattice":
        """{b : b L in L}."""
        return _colon(self, side="left")

    def right_order(self) -> "Lattice":
        """{b : L b in L}."""
        return _colon(self, side="right")


def _colon(L: Lattice, side: str) -> Lattice:
    # {b : e_i b in L for all i} = intersection of e_i^{-1} L
    parts = []
    for e in L.basis:
        inv = e.inverse()
        parts.append(Lattice((inv * b) if side == "right" else (b * inv) for b in L.basis))
    out = parts[0]
    for p in parts[1:]:
        out = out.intersect(p)
    return out


def dual_basis(basis: Sequence[QuatElem]) -> list[QuatElem]:
    """g_j with Tr(f_i conj(g_j)) = delta_ij."""
    g = [[trace_pairing(a, b) for b in basis] for a in basis]
    inv = linalg.inverse(g, ZERO, ONE)
    out = []
    for j in range(4):
        acc = QuatElem()
        for k in range(4):
            acc = acc + basis[k] * inv[k][j]
        out.append(acc)
    return out


def reduced_discriminant(L: Lattice) -> QuadElem:
    """Generator of d_r(L), the square root of the ideal (det Tr(e_i conj(e_j)))."""
    d = linalg.det(L.gram(), ONE)
    if d.is_zero():
        raise LatticeError("degenerate lattice")
    return ideal_sqrt(d)


def ideal_factorization(x: QuadElem) -> dict[str, int]:
    """Valuations of (x) at P2, P3, P5 (the primes relevant here)."""
    return {"P2": valuation(x, P2), "P3": valuation(x, P3), "P5": valuation(x, P5)}


# ---------------------------------------------------------------------------
# The two orders
# ---------------------------------------------------------------------------

HALF = Fraction(1, 2)


def big_order_basis() -> list[QuatElem]:
    return [Q_ONE, X, QuatElem(W * HALF, 0, HALF, 0), QuatElem(0, W * HALF, 0, HALF)]


def eichler_order_basis() -> list[QuatElem]:
    return [Q_ONE, X,
            QuatElem(-HALF, 0, (3 - W) * HALF, 0),
            QuatElem(-W * HALF, -(W + 1) * HALF, HALF, W * HALF)]


def f_basis() -> list[QuatElem]:
    """The basis f_1..f_4 of O used for the dual and the ideals."""
    return [Q_ONE, X,
            QuatElem(W, W * HALF, 1, HALF),
            QuatElem(W * HALF, (W + 1) * HALF, HALF, W * HALF)]


@lru_cache(maxsize=1)
def order_o_prime() -> Lattice:
    return Lattice(big_order_basis())


@lru_cache(maxsize=1)
def order_o() -> Lattice:
    return Lattice(eichler_order_basis())


# ---------------------------------------------------------------------------
# Ternary form and Eichler invariant
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TernaryForm:
    """q(X1, X2, X3) = sum coeff[(i, j)] X_i X_j (i <= j)."""
    basis: tuple[QuatElem, ...]
    coeffs: dict

    def __call__(self, x1, x2, x3):
        xs = (x1, x2, x3)
        return sum((c * xs[i] * xs[j] for (i, j), c in self.coeffs.items()), ZERO)

    def scaled(self, s: QuadElem) -> "TernaryForm":
        return TernaryForm(self.basis, {k: v * s for k, v in self.coeffs.items()})


def trace_zero_part(L: Lattice) -> list[QuatElem]:
    """Z[w]-basis of L intersected with B_0 = {Tr = 0}."""
    # reorder coordinates to (X, Y, XY, 1): the first three HNF columns are trace-free
    d = 1
    for b in L.basis:
        for a in b.c:
            d = d * a.d // math.gcd(d, a.d)
    cols = [[b.c[1] * d, b.c[2] * d, b.c[3] * d, b.c[0] * d] for b in L.basis]
    h = hnf_of(cols)
    return [QuatElem(col[3], col[0], col[1], col[2]) / d for col in h[:3]]


def ternary_form(L: Lattice, basis: Sequence[QuatElem] | None = None) -> TernaryForm:
    """Nr restricted to (L^* intersected with B_0), unscaled, on ``basis`` (default: HNF basis)."""
    hs = list(basis) if basis is not None else trace_zero_part(L.dual())
    if basis is not None and Lattice(hs + [Q_ONE]) != Lattice(trace_zero_part(L.dual()) + [Q_ONE]):
        raise LatticeError("basis does not span the trace-zero part of the dual")
    coeffs = {}
    for i in range(3):
        coeffs[(i, i)] = hs[i].nrd()
        for j in range(i + 1, 3):
            coeffs[(i, j)] = trace_pairing(hs[i], hs[j])
    return TernaryForm(tuple(hs), coeffs)


def _lin_forms_f5():
    seen = []
    for v in itertools.product(range(5), repeat=3):
        if any(v):
            lead = next(x for x in v if x)
            inv = pow(lead, -1, 5)
            n = tuple(x * inv % 5 for x in v)
            if n not in seen:
                seen.append(n)
    return seen


def factor_ternary_f5(c: dict) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All unordered pairs of projective linear forms over F_5 whose product is
    a nonzero scalar multiple of the quadratic form with coefficients c."""
    target = {k: v % 5 for k, v in c.items()}
    forms = _lin_forms_f5()
    out = []
    for i, l1 in enumerate(forms):
        for l2 in forms[i:]:
            prod = {}
            for a in range(3):
                for b in range(3):
                    key = (min(a, b), max(a, b))
                    prod[key] = (prod.get(key, 0) + l1[a] * l2[b]) % 5
            for s in range(1, 5):
                if all(prod.get(k, 0) * s % 5 == target.get(k, 0) for k in set(prod) | set(target)):
                    out.append((l1, l2))
                    break
    return out


def ternary_form_and_eichler(L: Lattice, basis: Sequence[QuatElem] | None = None):
    """(form scaled by the P5-part of Nr(L^*)^{-1}, its reduction mod P5, Eichler invariant at P5).

    The scaled form is primitive at P5; reduction into two distinct linear
    factors gives 1, a repeated factor 0, no factorisation over F_5 gives -1.
    """
    raw = ternary_form(L, basis)
    nd = L.dual().norm_ideal()
    v = valuation(nd, P5)
    scale = QuadElem(5) ** ((-v) // 2) * (SQRT5 ** ((-v) % 2))
    form = raw.scaled(scale)
    if any(valuation(c, P5) < 0 for c in form.coeffs.values() if not c.is_zero()):
        raise LatticeError("scaled form is not P5-integral")
    if all(c.is_zero() or valuation(c, P5) > 0 for c in form.coeffs.values()):
        raise LatticeError("scaled form is not primitive at P5")
    red = {k: residue_f5(c) if not c.is_zero() else 0 for k, c in form.coeffs.items()}
    facs = factor_ternary_f5(red)
    if any(a != b for a, b in facs):
        e = 1
    elif facs:
        e = 0
    else:
        e = -1
    return form, red, e


# ---------------------------------------------------------------------------
# Mass, class number, type number
# ---------------------------------------------------------------------------

ZETA_F_MINUS1 = Fraction(1, 30)
H_F = 1
DEGREE = 2

# (prime label, residue norm, valuation of d_r(O), Eichler invariant)
LOCAL_DATA_O = {"P2": (4, 1, -1), "P3": (9, 1, -1), "P5": (5, 2, None)}

# optimal embedding numbers E(Omega_v, O_v) for Omega = o_F[(w + i sqrt(2+w))/2],
# which is unramified at P2, P3 and ramified at P5 (rule table)
EMBEDDING_NUMBERS = {"P2": 2, "P3": 2, "P5": 0}
OMEGA_CLASS_NUMBER = 1
OMEGA_UNIT_INDEX = 5
OMEGA_COUNT = 4


def mass(e5: int, local=LOCAL_DATA_O) -> Fraction:
    """m(O) = 2 h_F |zeta_F(-1)| / 2^n * N(d_r) * prod (1 - N^-2)/(1 - e N^-1)."""
    m = 2 * H_F * ZETA_F_MINUS1 / 2 ** DEGREE
    for name, (norm, val, e) in local.items():
        if e is None:
            e = e5
        m *= Fraction(norm) ** val
        m *= (1 - Fraction(1, norm ** 2)) / (1 - Fraction(e, norm))
    return m


def central_picard(e: int, val: int) -> int:
    """[Gamma(O_v) : F_v^* O_v^*]: 2 when e != 0 and ord_v(d_r) is odd, else 1."""
    return 2 if (e != 0 and val % 2 == 1) else 1


def class_number(e5: int, embedding=EMBEDDING_NUMBERS) -> Fraction:
    m = mass(e5)
    corr = Fraction(0)
    for _ in range(OMEGA_COUNT):
        corr += math.prod(embedding.values()) * Fraction(OMEGA_CLASS_NUMBER, 2 * OMEGA_UNIT_INDEX)
    return m + corr


def type_number(e5: int) -> Fraction:
    prod = 1
    for name, (norm, val, e) in LOCAL_DATA_O.items():
        prod *= central_picard(e5 if e is None else e, val)
    return mass(e5) / prod


def class_and_type(L: Lattice | None = None):
    L = L or order_o()
    _, _, e5 = ternary_form_and_eichler(L)
    h, t = class_number(e5), type_number(e5)
    if h.denominator != 1 or t.denominator != 1:
        raise LatticeError(f"non-integral class/type number {h}, {t}")
    return int(h), int(t)


def displayed_trace_zero_basis() -> list[QuatElem]:
    """h_1, h_2, h_3: a column-reduced basis of O^* intersected with B_0."""
    return [QuatElem(0, (2 - W) / 6, 0, 0),
            QuatElem(0, 0, -(1 + 3 * W) / 5, 0),
            QuatElem(0, (-3 + 2 * W) / 12, (1 + W) / 5, (1 + W) / 60)]


def order_invariants() -> dict:
    Op, O = order_o_prime(), order_o()
    dp, d = reduced_discriminant(Op), reduced_discriminant(O)
    form, red, e5 = ternary_form_and_eichler(O)
    h, t = class_and_type(O)
    return {
        "d_r_O_prime": str(dp), "d_r_O_prime_norm": abs(int(dp.norm())),
        "d_r_O_prime_valuations": ideal_factorization(dp),
        "d_r_O": str(d), "d_r_O_norm": abs(int(d.norm())),
        "d_r_O_valuations": ideal_factorization(d),
        "index_norm": abs(int(O.index_in(Op).norm())),
        "ramified": ramified_places(),
        "eichler_P5": e5, "reduction_mod_P5": {f"{i}{j}": v for (i, j), v in red.items()},
        "mass": str(mass(e5)), "h": h, "t": t,
    }

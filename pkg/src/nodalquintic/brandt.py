"""Brandt matrices B(xi) for the weight carried by det x Sym^2 on the twelve
left ideal classes, the distinguished common eigenvector and its eigenvalues.

Entries of B(xi) live in A = F(u, v) with u^2 = -6, v^2 = vsq.  Conjugating by
D = diag(v^{s_k}), s_k = 1 at block positions 1 and 3, moves every entry into
F(u); all linear algebra runs there.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import linalg
from .arith import (ONE, VSQ_CHOICES, W, ZERO, AlgAElem, QuadElem, format_quad, normalize_tp,
                    parse_quad, tp_enumerate)
from .idealtheta import LeftIdeal, _form_for, all_ideals, enumerate_vectors
from .quatorder import Lattice, QuatElem


class ConventionError(RuntimeError):
    pass


class FieldError(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# F(u) = Q(sqrt5, sqrt-6)
# ---------------------------------------------------------------------------

class FU:
    """a + b u with a, b in F and u^2 = -6."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = QuadElem.coerce(a)
        self.b = QuadElem.coerce(b)

    @staticmethod
    def coerce(x) -> "FU":
        return x if isinstance(x, FU) else FU(x)

    def __add__(self, o):
        o = FU.coerce(o)
        return FU(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return FU(-self.a, -self.b)

    def __sub__(self, o):
        o = FU.coerce(o)
        return FU(self.a - o.a, self.b - o.b)

    def __rsub__(self, o):
        return FU.coerce(o) - self

    def __mul__(self, o):
        if isinstance(o, FU):
            return FU(self.a * o.a - 6 * (self.b * o.b), self.a * o.b + self.b * o.a)
        o = QuadElem.coerce(o)
        return FU(self.a * o, self.b * o)

    __rmul__ = __mul__

    def conj_u(self) -> "FU":
        return FU(self.a, -self.b)

    def sigma(self) -> "FU":
        return FU(self.a.conj(), self.b.conj())

    def norm_f(self) -> QuadElem:
        return self.a * self.a + 6 * (self.b * self.b)

    def inverse(self) -> "FU":
        n = self.norm_f()
        if n.is_zero():
            raise ZeroDivisionError("FU division by zero")
        ni = n.inverse()
        return FU(self.a * ni, -(self.b * ni))

    def __truediv__(self, o):
        return self * FU.coerce(o).inverse()

    def __rtruediv__(self, o):
        return FU.coerce(o) * self.inverse()

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def in_f(self) -> bool:
        return self.b.is_zero()

    def __eq__(self, o):
        if not isinstance(o, FU):
            try:
                o = FU.coerce(o)
            except (TypeError, ValueError):
                return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"FU({self.a}, {self.b})"

    def __str__(self):
        if self.b.is_zero():
            return str(self.a)
        return f"({self.a})+({self.b})*u"


FU_ZERO, FU_ONE = FU(0), FU(1)

# position 0 and 2 of each 3x3 block carry a factor v
S_POS = (1, 0, 1)


def _vsq(vsq) -> QuadElem:
    if isinstance(vsq, str):
        return VSQ_CHOICES[vsq]
    return QuadElem.coerce(vsq)


def _twist(alpha: QuatElem, vsq: QuadElem) -> tuple[QuadElem, ...]:
    # the X_2 embedding is the identity for v^2 = 3 - w and sigma for v^2 = 2 + w
    if vsq == VSQ_CHOICES["3-w"]:
        return alpha.c
    return tuple(c.conj() for c in alpha.c)


def _scalar(alpha: QuatElem, vsq: QuadElem) -> QuadElem:
    # the determinant factor uses the other real embedding
    n = alpha.nrd()
    return n.conj() if vsq == VSQ_CHOICES["3-w"] else n


def _p_parts(a, b, c, d, V):
    """p_ij as (F[u] coefficient, power of v) with x = (a, b sqrt6, c v, d sqrt6 v), i sqrt6 = u."""
    two = QuadElem(2)
    return {
        (0, 0): (FU(a * a - 6 * b * b, two * a * b), 0),
        (0, 1): (FU(two * (a * c - 6 * b * d), two * (a * d + b * c)), 1),
        (0, 2): (FU(V * (c * c - 6 * d * d), V * two * c * d), 0),
        (1, 0): (FU(-(a * c) - 6 * b * d, a * d - b * c), 1),
        (1, 1): (FU(a * a + 6 * b * b - V * (c * c) - V * 6 * d * d), 0),
        (1, 2): (FU(a * c + 6 * b * d, a * d - b * c), 1),
        (2, 0): (FU(V * (c * c - 6 * d * d), -(V * two * c * d)), 0),
        (2, 1): (FU(two * (6 * b * d - a * c), two * (a * d + b * c)), 1),
        (2, 2): (FU(a * a - 6 * b * b, -(two * a * b)), 0),
    }


def sym_square_block(alpha: QuatElem, vsq="3-w") -> list[list[AlgAElem]]:
    """Transpose of X_2(alpha) with entries in A (from the nine harmonic p_ij)."""
    V = _vsq(vsq)
    parts = _p_parts(*_twist(alpha, V), V)
    out = [[None] * 3 for _ in range(3)]
    for (i, j), (f, e) in parts.items():
        el = AlgAElem(f.a, f.b, vsq=V) if e == 0 else AlgAElem(0, 0, f.a, f.b, vsq=V)
        out[j][i] = el
    return out


def sym_square_from_matrix(alpha: QuatElem, vsq="3-w") -> list[list[AlgAElem]]:
    """Oracle: Sym^2 of the 2x2 matrix [[z, w], [-conj w, conj z]] over A, transposed.

    z = a + u b and w = v (c + u d); rows are the images of e1^2, e1 e2, e2^2.
    """
    V = _vsq(vsq)
    a, b, c, d = _twist(alpha, V)
    z = AlgAElem(a, b, vsq=V)
    wv = AlgAElem(0, 0, c, d, vsq=V)
    m = [[z, wv], [-wv.sigma_u(), z.sigma_u()]]
    rows = []
    for (p, q) in ((0, 0), (0, 1), (1, 1)):
        r1, r2 = m[p], m[q]
        rows.append([r1[0] * r2[0], r1[0] * r2[1] + r1[1] * r2[0], r1[1] * r2[1]])
    return [[rows[j][i] for j in range(3)] for i in range(3)]


def _reduced_block(alpha: QuatElem, V: QuadElem) -> list[list[FU]]:
    """D^{-1} (scalar * transpose X_2(alpha)) D with entries in F(u)."""
    parts = _p_parts(*_twist(alpha, V), V)
    s = _scalar(alpha, V)
    out = [[FU_ZERO] * 3 for _ in range(3)]
    for (i, j), (f, e) in parts.items():
        k, l = j, i                      # transpose
        val = f * s
        if e and S_POS[k] == 0 and S_POS[l] == 1:
            val = val * V
        out[k][l] = val
    return out


def block_to_algebra(block: Sequence[Sequence[FU]], V: QuadElem) -> list[list[AlgAElem]]:
    """Undo the diagonal conjugation: entry v^{s_k} b_kl v^{-s_l}."""
    out = []
    for k in range(3):
        row = []
        for l in range(3):
            f = block[k][l]
            sk, sl = S_POS[k], S_POS[l]
            if sk == sl:
                row.append(AlgAElem(f.a, f.b, vsq=V))
            elif sk == 1:
                row.append(AlgAElem(0, 0, f.a, f.b, vsq=V))
            else:
                g = f * V.inverse()
                row.append(AlgAElem(0, 0, g.a, g.b, vsq=V))
        out.append(row)
    return out


def pattern_ok(block: Sequence[Sequence[AlgAElem]]) -> bool:
    """(1,1),(1,3),(2,2),(3,1),(3,3) in F[u]; the rest in F[u] v."""
    for k in range(3):
        for l in range(3):
            e = block[k][l]
            in_fu = e.c01.is_zero() and e.c11.is_zero()
            in_fuv = e.c00.is_zero() and e.c10.is_zero()
            if (S_POS[k] == S_POS[l]) and not in_fu:
                return False
            if (S_POS[k] != S_POS[l]) and not in_fuv:
                return False
    return True


# ---------------------------------------------------------------------------
# Brandt matrices
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _connecting(i: int, j: int) -> tuple[Lattice, QuadElem]:
    """I_j^{-1} I_i (1-based indices) and the generator n_i / n_j of its norm."""
    ideals = all_ideals()
    Ii, Ij = ideals[i - 1], ideals[j - 1]
    L = (Ij.lattice.conj() * Ii.lattice) * Ij.norm_gen.inverse()
    return L, Ii.norm_gen / Ij.norm_gen


def connecting_elements(i: int, j: int, xi: QuadElem) -> list[QuatElem]:
    L, n = _connecting(i, j)
    form = _form_for(L, n)
    return [form.element(y) for y in enumerate_vectors(L, xi, n)]


def _sum_blocks(elems: Iterable[QuatElem], V: QuadElem, e_j: int) -> list[list[FU]]:
    acc = [[FU_ZERO] * 3 for _ in range(3)]
    for a in elems:
        b = _reduced_block(a, V)
        for k in range(3):
            for l in range(3):
                acc[k][l] = acc[k][l] + b[k][l]
    inv = Fraction(1, e_j)
    return [[x * inv for x in row] for row in acc]


def _xi(x) -> QuadElem:
    return parse_quad(x) if isinstance(x, str) else QuadElem.coerce(x)


UNITS = 2                          # e_j for every right order (checked in idealtheta)


@dataclass
class BrandtMatrix:
    xi: QuadElem
    vsq: QuadElem
    blocks: dict = field(default_factory=dict)      # (i, j) 1-based -> 3x3 FU

    @property
    def size(self) -> int:
        return 36

    def matrix(self) -> list[list[FU]]:
        m = [[FU_ZERO] * 36 for _ in range(36)]
        for (i, j), blk in self.blocks.items():
            for k in range(3):
                for l in range(3):
                    m[3 * (i - 1) + k][3 * (j - 1) + l] = blk[k][l]
        return m

    def algebra_blocks(self) -> dict:
        return {key: block_to_algebra(b, self.vsq) for key, b in self.blocks.items()}

    def pattern_ok(self) -> bool:
        return all(pattern_ok(b) for b in self.algebra_blocks().values())


def brandt_block(i: int, j: int, xi, vsq="3-w") -> list[list[FU]]:
    """Block (i, j) computed directly from I_j^{-1} I_i."""
    return _sum_blocks(connecting_elements(i, j, _xi(xi)), _vsq(vsq), UNITS)


def brandt_matrix(xi, vsq="3-w") -> BrandtMatrix:
    """All 144 blocks; j >= i by enumeration, the rest from alpha -> conj(alpha) n_j / n_i."""
    xi, V = _xi(xi), _vsq(vsq)
    ideals = all_ideals()
    out = BrandtMatrix(xi, V)
    for i in range(1, 13):
        for j in range(i, 13):
            elems = connecting_elements(i, j, xi)
            out.blocks[(i, j)] = _sum_blocks(elems, V, UNITS)
            if i != j:
                c = ideals[j - 1].norm_gen / ideals[i - 1].norm_gen
                out.blocks[(j, i)] = _sum_blocks((a.conj() * c for a in elems), V, UNITS)
    return out


@lru_cache(maxsize=64)
def cached_brandt(xi: str, vsq: str = "3-w") -> BrandtMatrix:
    return brandt_matrix(xi, vsq)


def _matmul(a, b):
    return linalg.matmul(a, b, FU_ZERO)


def commute_check(b1: BrandtMatrix, b2: BrandtMatrix) -> bool:
    m1, m2 = b1.matrix(), b2.matrix()
    return _matmul(m1, m2) == _matmul(m2, m1)


# ---------------------------------------------------------------------------
# Characteristic polynomial
# ---------------------------------------------------------------------------

def charpoly(m: Sequence[Sequence]) -> list:
    """Monic characteristic polynomial (coefficients from degree n down to 0) via
    reduction to upper Hessenberg form and the standard recurrence."""
    n = len(m)
    h = [list(r) for r in m]
    zero = h[0][0] * 0
    for k in range(n - 2):
        piv = next((i for i in range(k + 1, n) if not h[i][k].is_zero()), None)
        if piv is None:
            continue
        if piv != k + 1:
            h[piv], h[k + 1] = h[k + 1], h[piv]
            for r in h:
                r[piv], r[k + 1] = r[k + 1], r[piv]
        inv = 1 / h[k + 1][k]
        for i in range(k + 2, n):
            if h[i][k].is_zero():
                continue
            f = h[i][k] * inv
            h[i] = [x - f * y for x, y in zip(h[i], h[k + 1])]
            for r in h:
                r[k + 1] = r[k + 1] + f * r[i]
    # p_0 = 1, p_k(T) = (T - h_kk) p_{k-1} - sum_{i<k} h_ik (prod h_{j,j-1}) p_{i-1}
    polys = [[zero + 1]]
    for k in range(n):
        prev = polys[-1]
        cur = [zero] * (len(prev) + 1)
        for idx, c in enumerate(prev):
            cur[idx] = cur[idx] + c
            cur[idx + 1] = cur[idx + 1] - h[k][k] * c
        prod = zero + 1
        for i in range(k - 1, -1, -1):
            prod = prod * h[i + 1][i]
            if prod.is_zero():
                break
            coef = h[i][k] * prod
            if coef.is_zero():
                continue
            base = polys[i]
            off = len(cur) - len(base)
            for idx, c in enumerate(base):
                cur[off + idx] = cur[off + idx] - coef * c
        polys.append(cur)
    return polys[-1]


def _poly_eval(coeffs, x):
    acc = coeffs[0] * 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def _synthetic_div(coeffs, r):
    out, acc = [], coeffs[0] * 0
    for c in coeffs:
        acc = acc * r + c
        out.append(acc)
    return out[:-1], out[-1]


def root_multiplicity(coeffs, r) -> int:
    m = 0
    while len(coeffs) > 1:
        q, rem = _synthetic_div(coeffs, r)
        if not rem.is_zero():
            break
        coeffs, m = q, m + 1
    return m


@dataclass(frozen=True)
class CharpolyInfo:
    xi: str
    degree: int
    in_f: bool
    linear: dict          # root (str) -> multiplicity
    other: list           # (degree, multiplicity) of irreducible factors over F of degree > 1
    trace: str

    def root_multiplicity(self, r) -> int:
        return self.linear.get(format_quad(_xi(r)), 0)


def _to_sympy(coeffs_f):
    import sympy as sp
    T, s5 = sp.Symbol("T"), sp.sqrt(5)
    wv = (1 + s5) / 2
    expr = sum((sp.Rational(c.a, c.d) + sp.Rational(c.b, c.d) * wv) * T ** (len(coeffs_f) - 1 - k)
               for k, c in enumerate(coeffs_f))
    return sp.Poly(sp.expand(expr), T, extension=s5)


def _from_sympy_root(expr) -> QuadElem:
    import sympy as sp
    expr = sp.nsimplify(sp.expand(expr), [sp.sqrt(5)])
    a = sp.Rational(expr.subs(sp.sqrt(5), 0))
    b = sp.Rational(sp.expand((expr - a) / sp.sqrt(5)))
    # a + b sqrt5 = (a - b) + 2b w
    return QuadElem(Fraction(int(a.p), int(a.q)) - Fraction(int(b.p), int(b.q)),
                    2 * Fraction(int(b.p), int(b.q)))


def charpoly_info(xi="3+w", vsq="3-w", bm: BrandtMatrix | None = None) -> CharpolyInfo:
    import sympy as sp
    bm = bm or cached_brandt(xi if isinstance(xi, str) else format_quad(xi), vsq if isinstance(vsq, str) else "3-w")
    m = bm.matrix()
    cp = charpoly(m)
    in_f = all(c.in_f() for c in cp)
    tr = sum((m[i][i] for i in range(36)), FU_ZERO)
    if not in_f:
        return CharpolyInfo(format_quad(bm.xi), 36, False, {}, [], str(tr))
    coeffs = [c.a for c in cp]
    P = _to_sympy(coeffs)
    _, facs = sp.factor_list(P.as_expr(), extension=sp.sqrt(5))
    linear, other = {}, []
    for f, mult in facs:
        mult = int(mult)
        fp = sp.Poly(f, sp.Symbol("T"))
        if fp.degree() == 1:
            c1, c0 = fp.all_coeffs()
            r = _from_sympy_root(-c0 / c1)
            linear[format_quad(r)] = linear.get(format_quad(r), 0) + mult
        elif fp.degree() > 1:
            other.append((fp.degree(), mult))
    return CharpolyInfo(format_quad(bm.xi), 36, True, linear, sorted(other), format_quad(tr.a))


# ---------------------------------------------------------------------------
# Eigenvector and eigenvalues
# ---------------------------------------------------------------------------

def _shift(m, lam):
    lam = FU.coerce(lam)
    return [[x - lam if i == j else x for j, x in enumerate(row)] for i, row in enumerate(m)]


def common_eigenspace(pairs: Sequence[tuple[BrandtMatrix, QuadElem]]) -> list[list[FU]]:
    rows = []
    for bm, lam in pairs:
        rows += _shift(bm.matrix(), lam)
    return linalg.kernel(rows, FU_ZERO, FU_ONE)


LAMBDA_11 = QuadElem(-60, 4)        # 4(-15 + w)
LAMBDA_7 = QuadElem(-70)


@dataclass
class EigenData:
    """Left eigenvector eps (eps B = lambda eps) in reduced coordinates.

    With eps' = eps D the reduced vector lives in F(u)^36; in A the entries at
    block positions 1 and 3 are eps'_k / v.
    """
    vector: list[FU]
    vsq: QuadElem
    eigenvalues: dict = field(default_factory=dict)

    def in_algebra(self) -> list[AlgAElem]:
        out = []
        vinv = self.vsq.inverse()
        for k, f in enumerate(self.vector):
            if S_POS[k % 3]:
                g = f * vinv
                out.append(AlgAElem(0, 0, g.a, g.b, vsq=self.vsq))
            else:
                out.append(AlgAElem(f.a, f.b, vsq=self.vsq))
        return out

    def pattern_ok(self) -> bool:
        """Entries at k = 2 mod 3 (1-based) in F(u), the others in F(u) v."""
        for k, e in enumerate(self.in_algebra()):
            if S_POS[k % 3]:
                if not (e.c00.is_zero() and e.c10.is_zero()):
                    return False
            elif not (e.c01.is_zero() and e.c11.is_zero()):
                return False
        return True


def left_common_eigenspace(pairs: Sequence[tuple[BrandtMatrix, QuadElem]]) -> list[list[FU]]:
    rows = []
    for bm, lam in pairs:
        rows += _shift(linalg.transpose(bm.matrix()), lam)
    return linalg.kernel(rows, FU_ZERO, FU_ONE)


def find_eigenvector(vsq="3-w") -> EigenData:
    """The left eigenvector shared by B(3+w) at 4(-15+w) and B(7) at -70."""
    key = vsq if isinstance(vsq, str) else format_quad(vsq)
    b11, b7 = cached_brandt("3+w", key), cached_brandt("7", key)
    ker = left_common_eigenspace([(b11, LAMBDA_11), (b7, LAMBDA_7)])
    if len(ker) != 1:
        raise ConventionError(f"common eigenspace has dimension {len(ker)} (vsq={key})")
    v = ker[0]
    ref = v[4] if not v[4].is_zero() else next(x for x in v if not x.is_zero())
    return EigenData([x / ref for x in v], _vsq(vsq))


def resolve_convention() -> str:
    """The vsq for which the distinguished eigen-system exists with lambda(3+w) = 4(-15+w)."""
    found = []
    for key in VSQ_CHOICES:
        try:
            find_eigenvector(key)
            found.append(key)
        except ConventionError:
            pass
    if len(found) != 1:
        raise ConventionError(f"embedding convention not unique: {found}")
    return found[0]


def printed_eigenvector() -> list[FU]:
    """The printed eigenvector (with v = sqrt(3 - w)) in reduced left coordinates."""
    F = Fraction
    V = VSQ_CHOICES["3-w"]
    middles = [QuadElem(-2, -1), ONE, QuadElem(-1, F(-1, 2)), ONE]
    out: list[FU] = []
    for m in middles:
        out += [FU_ZERO, FU(m), FU_ZERO]
    # (uv coefficient, v coefficient, middle): entries p u v + q v, m, p u v - q v
    rest = [
        ((F(4, 25), F(-3, 25)), (F(-2, 25), F(3, 50)), (F(-3, 10), F(1, 10))),
        ((F(486, 4805), F(833, 4805)), (F(142, 4805), F(467, 9610)), (F(-101, 1922), F(-183, 1922))),
        ((F(-4, 4205), F(63, 4205)), (F(-521, 8410), F(847, 8410)), (F(67, 1682), F(-2, 841))),
        ((F(23, 605), F(4, 605)), (F(87, 1210), F(-169, 1210)), (F(-23, 242), F(-2, 121))),
        ((F(58, 605), F(89, 605)), (F(267, 1210), F(441, 1210)), (F(85, 242), F(60, 121))),
        ((F(3, 245), F(4, 245)), (F(31, 245), F(111, 490)), (F(-5, 98), F(-5, 98))),
        ((F(63, 4805), F(19, 4805)), (F(-884, 4805), F(1221, 9610)), (F(-151, 1922), F(107, 1922))),
        ((F(16, 1445), F(-1, 85)), (F(-11, 2890), F(-33, 2890)), (F(-19, 578), F(4, 289))),
    ]
    for (p, q, mid) in rest:
        P, Q, M = QuadElem(*p), QuadElem(*q), QuadElem(*mid)
        out += [FU(Q, P) * V, FU(M), FU(-Q, P) * V]
    return out


def proportional(v1: Sequence[FU], v2: Sequence[FU]) -> bool:
    k = next((i for i, x in enumerate(v2) if not x.is_zero()), None)
    if k is None or v1[k].is_zero():
        return False
    r = v1[k] / v2[k]
    return all((a - r * b).is_zero() for a, b in zip(v1, v2))


@dataclass(frozen=True)
class PrintedComparison:
    block_ratios: list          # printed / computed per block (None when both vanish)
    blockwise_scalar: bool      # each block of the printed vector is a multiple of ours
    normalised_equal: bool      # ratio_i / sigma(n_i) agree up to totally positive unit squares


def compare_printed(eig: EigenData) -> PrintedComparison:
    """Block-by-block comparison with the printed eigenvector.

    The printed vector differs from ours by diag(sigma(n_i)), n_i the norm
    generator of I_i, and by the choice of n_i up to unit squares.
    """
    P = printed_eigenvector()
    ns = [I.norm_gen for I in all_ideals()]
    ratios, scalar_ok, normed = [], True, []
    for i in range(12):
        rs = []
        for k in range(3):
            a, b = P[3 * i + k], eig.vector[3 * i + k]
            if b.is_zero() != a.is_zero():
                scalar_ok = False
            elif not b.is_zero():
                rs.append(a / b)
        if rs and any(x != rs[0] for x in rs):
            scalar_ok = False
        r = rs[0] if rs else None
        ratios.append(r)
        if r is not None:
            normed.append(r / FU(ns[i].conj()))
    same = scalar_ok and all(x.in_f() for x in normed)
    if same:
        base = normed[0].a
        same = all(normalize_tp(x.a / base) == ONE for x in normed)
    return PrintedComparison([None if r is None else str(r) for r in ratios], scalar_ok, same)


def eigenvalue_at(xi, eig: EigenData) -> FU:
    """Eigenvalue from one block-column of B(xi): (eps B)_l / eps_l.

    All nonzero entries of the column block must give the same value, and
    the value must have no u-part.
    """
    xi = _xi(xi)
    V = eig.vsq
    v = eig.vector
    k0 = next(k for k, x in enumerate(v) if not x.is_zero())
    j = k0 // 3 + 1
    col = [FU_ZERO] * 3
    for i in range(1, 13):
        blk = _sum_blocks(connecting_elements(i, j, xi), V, UNITS)
        for k in range(3):
            for l in range(3):
                col[l] = col[l] + v[3 * (i - 1) + k] * blk[k][l]
    base = 3 * (j - 1)
    lams = [col[l] / v[base + l] for l in range(3) if not v[base + l].is_zero()]
    if any(x != lams[0] for x in lams):
        raise FieldError(f"inconsistent eigenvalue at xi={xi}")
    for l in range(3):
        if v[base + l].is_zero() and not col[l].is_zero():
            raise FieldError(f"vector is not an eigenvector of B({xi})")
    lam = lams[0]
    if not lam.in_f():
        raise FieldError(f"eigenvalue at {xi} has a nonzero u-component: {lam}")
    eig.eigenvalues[format_quad(xi)] = lam.a
    return lam


# published eigenvalues (xi -> lambda); the 41 and 59 rows are handled separately
EIGEN_TABLE = {
    "1": "1", "2": "4", "3": "9", "-1+2w": "0", "7": "-70",
    "3+w": "-60+4w", "4-w": "-56-4w", "13": "2990", "17": "-170",
    "4+w": "48-116w", "5-w": "-68+116w", "23": "3450",
    "5+w": "38-16w", "6-w": "22+16w", "7-2w": "72-120w", "5+2w": "-48+120w",
}
EIGEN_TABLE_LATE = {
    "37": "-29970", "43": "149210", "47": "93530", "53": "-235850",
    "7-w": "-26-264w", "6+w": "-290-264w", "2w+7": "-564-32w", "9-2w": "596-32w",
}


def primes_above(p: int) -> list[QuadElem]:
    """Totally positive generators (normalized) of the primes of F above a rational prime p != 5."""
    if p % 5 in (2, 3):
        return [QuadElem(p)]
    out: list[QuadElem] = []
    for x in tp_enumerate(p):
        if abs(x.norm()) == p:
            y = normalize_tp(x)
            if y not in out:
                out.append(y)
    return out


@dataclass(frozen=True)
class FrobeniusReport:
    p: int
    kind: str
    eigenvalues: dict
    a_p: int
    a_p2: int
    ok: bool
    detail: str


def frobenius_match(p: int, eig: EigenData, store=None) -> FrobeniusReport:
    """Compare eigenvalues at the primes above p with the Frobenius traces."""
    from .lfunction import _default_store, frob_charpoly, split_over_f
    store = store or _default_store()
    lf = frob_charpoly(p, store)
    a_p, a_p2 = store.a_p(p), store.a_p2(p)
    if p % 5 in (2, 3):
        lam = eigenvalue_at(p, eig).a
        ok = lam * 2 == QuadElem(a_p2)
        return FrobeniusReport(p, "inert", {str(p): format_quad(lam)}, a_p, a_p2, ok,
                               f"lambda={lam}, a_p2/2={Fraction(a_p2, 2)}")
    gens = primes_above(p)
    lams = {format_quad(g): eigenvalue_at(g, eig).a for g in gens}
    first = lams[format_quad(gens[0])]
    pair = [first, first.conj()]
    ok_sum = (pair[0] + pair[1]) == QuadElem(a_p)
    prod = _poly_prod([ONE, -pair[0], QuadElem(p ** 3)], [ONE, -pair[1], QuadElem(p ** 3)])
    ok_poly = [x.rational() if x.is_rational() else None for x in prod] == list(lf.coeffs)
    conj_ok = len(gens) == 2 and lams[format_quad(gens[1])] == first.conj()
    detail = (f"sum={pair[0] + pair[1]} a_p={a_p} product_matches={ok_poly} "
              f"second_prime_is_conjugate={conj_ok}")
    return FrobeniusReport(p, "split", {k: format_quad(v) for k, v in lams.items()}, a_p, a_p2,
                           ok_sum and ok_poly and conj_ok, detail)


def _poly_prod(a, b):
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out

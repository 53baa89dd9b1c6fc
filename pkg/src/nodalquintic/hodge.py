"""D4 symmetry of the nodal quintic threefold, its 120 nodes and the defect.

The threefold is the projective closure of P5(x1, x2) = P5(x3, x4).  The
defect is the corank of the evaluation map from quintic forms in x0..x4 to
functions on the nodes; it is pinned down by an explicit kernel (lower
bound) and a rank computed modulo a prime (upper bound on the corank).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
import sympy

from .arith import CycloElem, is_prime
from .chebyshev import build_p5, critical_points, hessian_det
from .linalg import rank as exact_rank


class CharacterTableError(ArithmeticError):
    """A multiplicity came out non-integral or negative."""


class CertificateError(ArithmeticError):
    """The rank bounds failed to meet."""


# ---------------------------------------------------------------------------
# The group
# ---------------------------------------------------------------------------

LABELS = ("id", "s1", "s2", "s3", "s4", "s5", "s6", "s7")


@dataclass(frozen=True)
class D4Element:
    """Coordinate permutation: the point x goes to (x[perm[0]], ..., x[perm[3]])."""

    label: str
    perm: tuple[int, int, int, int]

    def __call__(self, pt):
        return tuple(pt[i] for i in self.perm)

    def __mul__(self, other: "D4Element") -> "D4Element":
        # (self * other)(x) = self(other(x))
        perm = tuple(other.perm[i] for i in self.perm)
        return _by_perm(perm)

    def inverse(self) -> "D4Element":
        inv = [0] * 4
        for i, j in enumerate(self.perm):
            inv[j] = i
        return _by_perm(tuple(inv))

    def order(self) -> int:
        g, n = self, 1
        while g.perm != (0, 1, 2, 3):
            g, n = g * self, n + 1
        return n


_IDENTITY = (0, 1, 2, 3)
_S1 = (1, 0, 2, 3)
_S2 = (0, 1, 3, 2)
_S3 = (2, 3, 0, 1)


def _compose(a, b):
    return tuple(b[i] for i in a)


def _power(a, n):
    r = _IDENTITY
    for _ in range(n):
        r = _compose(r, a)
    return r


_S5 = _compose(_S1, _S3)
_PERMS = {
    "id": _IDENTITY,
    "s1": _S1,
    "s2": _S2,
    "s3": _S3,
    "s4": _power(_S5, 2),
    "s5": _S5,
    "s6": _power(_S5, 3),
    "s7": _compose(_S3, _power(_S5, 2)),
}
_BY_PERM = {p: lbl for lbl, p in _PERMS.items()}


def _by_perm(perm) -> D4Element:
    try:
        return D4Element(_BY_PERM[perm], perm)
    except KeyError:
        raise CharacterTableError(f"{perm} is not in the group") from None


def group() -> list[D4Element]:
    if len(_BY_PERM) != 8:
        raise CharacterTableError("the eight labels do not give eight permutations")
    return [D4Element(lbl, _PERMS[lbl]) for lbl in LABELS]


def element(label: str) -> D4Element:
    return D4Element(label, _PERMS[label])


# rows chi_1..chi_5, columns in LABELS order
CHARACTER_TABLE = (
    (1, 1, 1, 1, 1, 1, 1, 1),
    (1, -1, -1, 1, 1, -1, -1, 1),
    (1, 1, 1, -1, 1, -1, -1, -1),
    (1, -1, -1, -1, 1, 1, 1, -1),
    (2, 0, 0, 0, -2, 0, 0, 0),
)
DEGREES = (1, 1, 1, 1, 2)

# characters of the partials of F5 (with the sign from s3 F5 = -F5) and of the linear forms
CHI_PARTIALS = (5, 3, 3, -1, 1, -1, -1, -1)
CHI_LINEAR = (5, 3, 3, 1, 1, 1, 1, 1)


def presentation_holds() -> bool:
    """s3^2 = s5^4 = 1, s3 s5 s3 = s5^-1, and the derived labels agree."""
    s1, s2, s3, s5 = (element(x) for x in ("s1", "s2", "s3", "s5"))
    e = element("id")
    ok = s3 * s3 == e and s5.order() == 4 and s3 * s5 * s3 == s5.inverse()
    ok &= s1 == s3 * s5 * s5 * s5 and s2 == s3 * s5
    ok &= element("s4") == s5 * s5 and element("s6") == s5 * s5 * s5
    ok &= element("s7") == s3 * s5 * s5
    return ok


def character_of_class(g: D4Element) -> tuple[int, ...]:
    i = LABELS.index(g.label)
    return tuple(row[i] for row in CHARACTER_TABLE)


def table_is_orthonormal() -> bool:
    for a, b in itertools.product(range(5), repeat=2):
        s = sum(x * y for x, y in zip(CHARACTER_TABLE[a], CHARACTER_TABLE[b]))
        if s != (8 if a == b else 0):
            return False
    return True


def table_is_class_function() -> bool:
    """Each row is constant on conjugacy classes."""
    G = group()
    for g in G:
        for h in G:
            c = h * g * h.inverse()
            if character_of_class(c) != character_of_class(g):
                return False
    return True


@dataclass(frozen=True)
class IsotypicDecomp:
    multiplicities: tuple[int, int, int, int, int]

    @property
    def dimension(self) -> int:
        return sum(m * d for m, d in zip(self.multiplicities, DEGREES))

    def __iter__(self):
        return iter(self.multiplicities)

    def __getitem__(self, i):
        return self.multiplicities[i]


def decompose(phi) -> IsotypicDecomp:
    """Multiplicities (1/8) sum phi(g) chi_i(g) of a character given in LABELS order."""
    out = []
    for row in CHARACTER_TABLE:
        m = Fraction(sum(a * b for a, b in zip(phi, row)), 8)
        if m.denominator != 1 or m < 0:
            raise CharacterTableError(f"multiplicity {m} for character values {tuple(phi)}")
        out.append(int(m))
    return IsotypicDecomp(tuple(out))


# ---------------------------------------------------------------------------
# Quintic monomials
# ---------------------------------------------------------------------------

Exponent = tuple[int, int, int, int, int]


@lru_cache(maxsize=None)
def monomials(degree: int = 5) -> tuple[Exponent, ...]:
    """Exponent vectors (e0, ..., e4) of total degree ``degree``, lexicographically."""
    return tuple(sorted(e for e in itertools.product(range(degree + 1), repeat=5)
                        if sum(e) == degree))


def act_on_exponent(g: D4Element, e: Exponent) -> Exponent:
    """Exponent of x^e composed with g^-1, so that (g f)(g P) = f(P)."""
    out = [e[0], 0, 0, 0, 0]
    # x^e(g^-1 y): g^-1 y has coordinate k equal to y[ginv.perm[k]]
    ginv = g.inverse()
    for k in range(4):
        out[1 + ginv.perm[k]] += e[1 + k]
    return tuple(out)


def monomial_character() -> tuple[int, ...]:
    mons = monomials()
    return tuple(sum(1 for e in mons if act_on_exponent(g, e) == e) for g in group())


def monomial_multiplicities() -> IsotypicDecomp:
    return decompose(monomial_character())


def monomial_orbit_count() -> int:
    seen, orbits = set(), 0
    for e in monomials():
        if e in seen:
            continue
        orbits += 1
        seen.update(act_on_exponent(g, e) for g in group())
    return orbits


# ---------------------------------------------------------------------------
# Polynomials in x0..x4 as {exponent: Fraction}
# ---------------------------------------------------------------------------

Poly = dict


def poly_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def poly_diff(a: Poly, var: int) -> Poly:
    out: Poly = {}
    for e, c in a.items():
        if e[var]:
            f = list(e)
            f[var] -= 1
            out[tuple(f)] = out.get(tuple(f), 0) + c * e[var]
    return {e: c for e, c in out.items() if c}


def poly_act(g: D4Element, a: Poly) -> Poly:
    return {act_on_exponent(g, e): c for e, c in a.items()}


def homogenize(a: Poly, degree: int) -> Poly:
    out: Poly = {}
    for e, c in a.items():
        d = sum(e[1:])
        if d > degree:
            raise ValueError("term of degree above the target")
        f = (degree - d,) + tuple(e[1:])
        out[f] = out.get(f, 0) + c
    return {e: c for e, c in out.items() if c}


def f5() -> Poly:
    """x0^5 (P5(x1/x0, x2/x0) - P5(x3/x0, x4/x0))."""
    out: Poly = {}
    for (i, j), c in build_p5().terms.items():
        c = Fraction(c)
        out[(5 - i - j, i, j, 0, 0)] = c
        out[(5 - i - j, 0, 0, i, j)] = -c
    return out


def linear_form(k: int) -> Poly:
    e = [0] * 5
    e[k] = 1
    return {tuple(e): Fraction(1)}


def jacobian_products() -> list[Poly]:
    """x_k * dF5/dx_l for k, l in 0..4."""
    F = f5()
    parts = [poly_diff(F, l) for l in range(5)]
    return [poly_mul(linear_form(k), d) for k in range(5) for d in parts]


def coefficient_vector(a: Poly, mons=None) -> list[Fraction]:
    mons = monomials() if mons is None else mons
    index = {e: i for i, e in enumerate(mons)}
    v = [Fraction(0)] * len(mons)
    for e, c in a.items():
        v[index[e]] += Fraction(c)
    return v


# the extra chi_3 kernel element as printed, in its six bracket groups; S is the
# sign of x1^2 x2 x3 inside the last parenthesis (+1 as printed)
_H_GROUPS = (
    "-x1**2*x3 - x2**2*x3 + x1*x3**2 + x2*x3**2 - x1**2*x4 - x2**2*x4 + x1*x4**2 + x2*x4**2",
    "-x1**4*x3 - x2**4*x3 + x1*x3**4 + x2*x3**4 - x1**4*x4 - x2**4*x4 + x1*x4**4 + x2*x4**4",
    "-x1*x2*x3 - x1*x2*x4 + x1*x3*x4 + x2*x3*x4",
    "-x1**2*x2**2*x3 - x1**2*x2**2*x4 + x1*x3**2*x4**2 + x2*x3**2*x4**2",
    "-x1**3*x3 - x2**3*x3 + x1*x3**3 + x2*x3**3 - x1**3*x4 - x2**3*x4 + x1*x4**3 + x2*x4**3",
    "-(S*x1**2*x2*x3 - x1*x2**2*x3 - x1**2*x2*x4 - x1*x2**2*x4 + x1*x3**2*x4"
    " + x2*x3**2*x4 + x1*x3*x4**2 + x2*x3*x4**2)",
)
PRINTED_WEIGHTS = (1, 1, 1, 1, 1, 1)


def _parse(text: str) -> Poly:
    xs = sympy.symbols("x0 x1 x2 x3 x4")
    expr = sympy.sympify(text, locals={f"x{i}": xs[i] for i in range(5)})
    p = sympy.Poly(sympy.expand(expr), *xs)
    return {tuple(m): Fraction(int(c.p), int(c.q)) for m, c in p.terms()}


def printed_groups(sign: int = 1) -> list[Poly]:
    """The six groups, each homogenized to degree 5."""
    return [homogenize(_parse(g.replace("S", f"({sign})")), 5) for g in _H_GROUPS]


def combine(groups: list[Poly], weights) -> Poly:
    out: Poly = {}
    for g, c in zip(groups, weights):
        for e, v in g.items():
            out[e] = out.get(e, 0) + Fraction(c) * v
    return {e: v for e, v in out.items() if v}


def _rational_reconstruct(a: int, p: int) -> Fraction:
    bound = math.isqrt(p // 2)
    r0, r1, s0, s1 = p, a % p, 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1, s0, s1 = r1, r0 - q * r1, s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        raise ArithmeticError(f"no small rational for {a} mod {p}")
    return Fraction(r1, s1)


def _nullspace_mod(a: np.ndarray, p: int) -> list[list[int]]:
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    pivots, r = [], 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i, c]), None)
        if piv is None:
            continue
        m[[r, piv]] = m[[piv, r]]
        m[r] = m[r] * pow(int(m[r, c]), -1, p) % p
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        pivots.append(c)
        r += 1
    basis = []
    for f in (c for c in range(cols) if c not in pivots):
        v = [0] * cols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = int(-m[i, f] % p)
        basis.append(v)
    return basis


@lru_cache(maxsize=1)
def vanishing_weights() -> tuple[Fraction, ...]:
    """Weights on the (sign-corrected) printed groups that vanish on every node.

    Found modulo a prime, lifted by rational reconstruction and then checked
    exactly in Q(zeta15), so the result does not depend on the prime.
    """
    p = primes_for_reduction(1)[0]
    E = evaluation_matrix_mod(p)
    groups = printed_groups(-1)
    cols = np.array([[int(x) for x in coefficient_vector(g)] for g in groups]).T
    basis = _nullspace_mod(E @ cols % p, p)
    if len(basis) != 1:
        raise CertificateError(f"expected a unique vanishing combination, found {len(basis)}")
    v = basis[0]
    lead = next(x for x in v if x)
    v = [x * pow(lead, -1, p) % p for x in v]
    weights = tuple(_rational_reconstruct(x, p) for x in v)
    h = combine(groups, weights)
    if not all(evaluate_exact(h, n).is_zero() for n in enumerate_nodes()):
        raise CertificateError("reconstructed element does not vanish on the nodes")
    return weights


def extra_kernel_element(variant: str = "vanishing") -> Poly:
    """The chi_3 kernel vector outside the Jacobian span.

    ``printed``: the groups with unit weights, as printed.  ``sign_fixed``: the
    same with the x1^2 x2 x3 sign flipped, which makes it chi_3-isotypic.
    ``vanishing``: the unique combination of the sign-fixed groups that
    vanishes at all 120 nodes; this is the one used by the certificate.
    """
    if variant == "printed":
        return combine(printed_groups(1), PRINTED_WEIGHTS)
    if variant == "sign_fixed":
        return combine(printed_groups(-1), PRINTED_WEIGHTS)
    if variant == "vanishing":
        return combine(printed_groups(-1), vanishing_weights())
    raise ValueError(f"unknown variant {variant!r}")


# ---------------------------------------------------------------------------
# Nodes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Node:
    first: tuple[CycloElem, CycloElem]
    second: tuple[CycloElem, CycloElem]
    value: int

    @property
    def coords(self) -> tuple[CycloElem, ...]:
        return self.first + self.second

    @property
    def diagonal(self) -> bool:
        return self.first == self.second


@lru_cache(maxsize=1)
def enumerate_nodes() -> tuple[Node, ...]:
    """Ordered pairs of critical points of P5 with equal critical value."""
    cps = critical_points()
    p5 = build_p5()
    d1, d2 = p5.diff(1), p5.diff(2)
    one = CycloElem([1])
    dets = {cp.coords: hessian_det(cp.coords) for cp in cps}
    nodes = []
    for a in cps:
        for b in cps:
            if a.value != b.value:
                continue
            for pt in (a.coords, b.coords):
                if not (d1(*pt, one=one).is_zero() and d2(*pt, one=one).is_zero()):
                    raise ArithmeticError(f"gradient of P5 nonzero at {pt}")
            # the affine Hessian of F5 is block diagonal (H(a), -H(b))
            if (dets[a.coords] * dets[b.coords]).is_zero():
                raise ArithmeticError("degenerate node")
            nodes.append(Node(a.coords, b.coords, a.value))
    return tuple(nodes)


def node_value_counts() -> dict[int, int]:
    counts: dict[int, int] = {}
    for cp in critical_points():
        counts[cp.value] = counts.get(cp.value, 0) + 1
    return counts


def node_permutation(g: D4Element) -> list[int]:
    """Index of g(node) for each node; raises if the set is not preserved."""
    nodes = enumerate_nodes()
    index = {n.coords: i for i, n in enumerate(nodes)}
    out = []
    for n in nodes:
        img = g(n.coords)
        if img not in index:
            raise ArithmeticError(f"{g.label} moves a node off the node set")
        out.append(index[img])
    return out


def node_character() -> tuple[int, ...]:
    return tuple(sum(1 for i, j in enumerate(node_permutation(g)) if i == j) for g in group())


def node_multiplicities() -> IsotypicDecomp:
    return decompose(node_character())


def evaluate_exact(a: Poly, node: Node) -> CycloElem:
    """a(1, x1, x2, x3, x4) at the node, in Q(zeta15)."""
    x = node.coords
    pw = [[CycloElem([1])] for _ in range(4)]
    for k in range(4):
        for _ in range(5):
            pw[k].append(pw[k][-1] * x[k])
    acc = CycloElem()
    for e, c in a.items():
        t = pw[0][e[1]] * pw[1][e[2]] * pw[2][e[3]] * pw[3][e[4]]
        acc = acc + t * Fraction(c)
    return acc


# ---------------------------------------------------------------------------
# Jacobian part of the kernel
# ---------------------------------------------------------------------------

def jacobian_kernel_multiplicities() -> IsotypicDecomp:
    """Decomposition of (linear forms) x (partials of F5) from the two character tables."""
    return decompose(tuple(a * b for a, b in zip(CHI_PARTIALS, CHI_LINEAR)))


@lru_cache(maxsize=1)
def jacobian_span_dimension() -> int:
    return exact_rank([coefficient_vector(p) for p in jacobian_products()])


def partial_character() -> tuple[int, ...]:
    """Trace of g on span{dF5/dx_l}, computed from the polynomials themselves."""
    F = f5()
    parts = [poly_diff(F, l) for l in range(5)]
    out = []
    for g in group():
        tr = 0
        for d in parts:
            img = poly_act(g, d)
            if img == d:
                tr += 1
            elif img == {e: -c for e, c in d.items()}:
                tr -= 1
        out.append(tr)
    return tuple(out)


def linear_character() -> tuple[int, ...]:
    return tuple(1 + sum(1 for i in range(4) if g.perm[i] == i) for g in group())


def extra_element_report(variant: str = "vanishing") -> dict:
    """Vanishing on nodes, independence from the Jacobian span, chi_3 behaviour."""
    h = extra_kernel_element(variant)
    nodes = enumerate_nodes()
    vanishing = sum(1 for n in nodes if evaluate_exact(h, n).is_zero())
    rows = [coefficient_vector(p) for p in jacobian_products()]
    independent = exact_rank(rows + [coefficient_vector(h)]) == jacobian_span_dimension() + 1
    chi3 = CHARACTER_TABLE[2]
    equivariant = all(poly_act(g, h) == {e: c * chi3[i] for e, c in h.items()}
                      for i, g in enumerate(group()))
    return {"variant": variant, "vanishing_nodes": vanishing, "independent": independent,
            "chi3_isotypic": equivariant}


# ---------------------------------------------------------------------------
# Evaluation matrix modulo p
# ---------------------------------------------------------------------------

def primes_for_reduction(count: int, start: int = 10_000):
    """The first ``count`` primes p = 1 mod 15 above ``start``."""
    out, p = [], start + 1
    while len(out) < count:
        if p % 15 == 1 and is_prime(p):
            out.append(p)
        p += 1
    return out


def zeta15_mod(p: int) -> int:
    for g in range(2, p):
        z = pow(g, (p - 1) // 15, p)
        if pow(z, 5, p) != 1 and pow(z, 3, p) != 1:
            return z
    raise ValueError(f"no element of order 15 mod {p}")


def cyclo_mod(x: CycloElem, p: int, zeta: int) -> int:
    acc, pw = 0, 1
    for c in x.c:
        if c:
            fr = Fraction(c)
            acc += fr.numerator * pow(fr.denominator, -1, p) * pw
        pw = pw * zeta % p
    return acc % p


def evaluation_matrix_mod(p: int, zeta: int | None = None) -> np.ndarray:
    """E[node, monomial] = monomial(1, node) mod p, a 120 x 126 int64 array."""
    zeta = zeta15_mod(p) if zeta is None else zeta
    nodes = enumerate_nodes()
    mons = monomials()
    E = np.zeros((len(nodes), len(mons)), dtype=np.int64)
    for i, n in enumerate(nodes):
        x = [cyclo_mod(c, p, zeta) for c in n.coords]
        for j, e in enumerate(mons):
            v = 1
            for k in range(4):
                v = v * pow(x[k], e[k + 1], p) % p
            E[i, j] = v
    return E


def rank_mod(a: np.ndarray, p: int) -> int:
    """Rank of an integer matrix over F_p (p < 3e9 so products fit in int64)."""
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i, c]), None)
        if piv is None:
            continue
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = m[r] * pow(int(m[r, c]), -1, p) % p
        f = m[:, c].copy()
        f[r] = 0
        nz = np.nonzero(f)[0]
        if nz.size:
            m[nz] = (m[nz] - np.outer(f[nz], m[r])) % p
        r += 1
        if r == rows:
            break
    return r


def monomial_rep(g: D4Element) -> np.ndarray:
    """Matrix of f -> g f on coefficient vectors (columns are images of monomials)."""
    mons = monomials()
    index = {e: i for i, e in enumerate(mons)}
    R = np.zeros((len(mons), len(mons)), dtype=np.int64)
    for j, e in enumerate(mons):
        R[index[act_on_exponent(g, e)], j] = 1
    return R


def node_rep(g: D4Element) -> np.ndarray:
    """Matrix of the induced action on node functions, (g v)[g n] = v[n]."""
    perm = node_permutation(g)
    R = np.zeros((len(perm), len(perm)), dtype=np.int64)
    for i, j in enumerate(perm):
        R[j, i] = 1
    return R


def scaled_projector(rep, i: int) -> np.ndarray:
    """(8 / n_i) p_i = sum_g chi_i(g) rep(g), an integer matrix."""
    return sum(c * rep(g) for c, g in zip(CHARACTER_TABLE[i], group()))


def projectors_ok(rep) -> bool:
    """Idempotent, mutually annihilating, summing to the identity (checked with integers)."""
    A = [scaled_projector(rep, i) for i in range(5)]
    n = A[0].shape[0]
    total = np.zeros((n, n), dtype=np.int64)
    for i in range(5):
        k = 8 // DEGREES[i]
        if not np.array_equal(A[i] @ A[i], k * A[i]):
            return False
        for j in range(5):
            if i != j and np.any(A[i] @ A[j]):
                return False
        total += DEGREES[i] * A[i]
    return np.array_equal(total, 8 * np.eye(n, dtype=np.int64))


def equivariance_ok(p: int, E: np.ndarray | None = None) -> bool:
    """E rho(g) = pi(g) E for every g, modulo p."""
    E = evaluation_matrix_mod(p) if E is None else E
    return all(np.array_equal(E @ monomial_rep(g) % p, node_rep(g) @ E % p) for g in group())


@dataclass
class RankCertificate:
    prime: int
    rank_mod_p: int
    kernel_lower_bound: int
    rank: int
    corank: int
    kernel_dimension: int
    block_ranks: tuple[int, ...]
    kernel: IsotypicDecomp
    cokernel: IsotypicDecomp
    primes_tried: list[int] = field(default_factory=list)


@lru_cache(maxsize=1)
def _kernel_lower_bound() -> tuple[int, tuple[int, ...]]:
    """Exact dimension of span(Jacobian products, h) and its dimension in each isotypic block."""
    rows = [coefficient_vector(p) for p in jacobian_products()]
    rows.append(coefficient_vector(extra_kernel_element()))
    total = exact_rank(rows)
    per_block = []
    for i in range(5):
        A = scaled_projector(monomial_rep, i)
        proj = [[sum(Fraction(int(A[r, c])) * v[c] for c in range(len(v)) if A[r, c])
                 for r in range(A.shape[0])] for v in rows]
        per_block.append(exact_rank(proj))
    return total, tuple(per_block)


def kernel_span_multiplicities() -> IsotypicDecomp:
    """Block decomposition of the explicit kernel, from exact projection ranks."""
    _, blocks = _kernel_lower_bound()
    out = []
    for b, d in zip(blocks, DEGREES):
        if b % d:
            raise CharacterTableError("block dimension not divisible by the degree")
        out.append(b // d)
    return IsotypicDecomp(tuple(out))


@lru_cache(maxsize=4)
def evaluation_rank(max_primes: int = 3) -> RankCertificate:
    """Rank of the 126 -> 120 evaluation map, proved by the two-sided pinch.

    Over Q(zeta15) the rank is at most 126 - (explicit kernel dimension) and at
    least its rank modulo any prime above p.  The same pinch applies block by
    block, since the block ranks modulo p are lower bounds summing to the total.
    """
    lower, kblocks = _kernel_lower_bound()
    n_mons, n_nodes = len(monomials()), len(enumerate_nodes())
    upper = n_mons - lower
    tried = []
    for p in primes_for_reduction(max_primes):
        tried.append(p)
        E = evaluation_matrix_mod(p)
        r = rank_mod(E, p)
        if r > upper:
            raise CertificateError(f"rank {r} mod {p} exceeds the bound {upper}")
        if r < upper:
            continue
        block_ranks = tuple(rank_mod(E @ scaled_projector(monomial_rep, i) % p, p)
                            for i in range(5))
        if sum(block_ranks) != r:
            raise CertificateError("block ranks do not add up to the total rank")
        mon = monomial_multiplicities()
        nod = node_multiplicities()
        ker, cok = [], []
        for i, d in enumerate(DEGREES):
            kd = mon[i] * d - block_ranks[i]
            cd = nod[i] * d - block_ranks[i]
            if kd % d or cd % d or kd < kblocks[i]:
                raise CertificateError(f"inconsistent block {i + 1}")
            ker.append(kd // d)
            cok.append(cd // d)
        return RankCertificate(p, r, lower, r, n_nodes - r, n_mons - r, block_ranks,
                               IsotypicDecomp(tuple(ker)), IsotypicDecomp(tuple(cok)), tried)
    raise CertificateError(f"rank stayed below {upper} modulo {tried}")


def cokernel_multiplicities() -> IsotypicDecomp:
    return evaluation_rank().cokernel


def defect() -> int:
    return evaluation_rank().corank


def exact_rank_cyclotomic() -> int:
    """Rank of the evaluation matrix by elimination over Q(zeta15).  Slow."""
    from .linalg import rref
    nodes = enumerate_nodes()
    mons = monomials()
    # evaluate with shared powers
    rows = []
    for n in nodes:
        x = n.coords
        pw = [[CycloElem([1])] for _ in range(4)]
        for k in range(4):
            for _ in range(5):
                pw[k].append(pw[k][-1] * x[k])
        rows.append([pw[0][e[1]] * pw[1][e[2]] * pw[2][e[3]] * pw[3][e[4]] for e in mons])
    _, pivots = rref(rows, zero=CycloElem(), is_zero=lambda z: z.is_zero())
    return len(pivots)


# ---------------------------------------------------------------------------
# Hodge numbers
# ---------------------------------------------------------------------------

def smooth_quintic_euler() -> int:
    """Euler number of a smooth quintic threefold: degree 5 times the c3 coefficient."""
    n, q = 4, 5
    c3 = sum(math.comb(n + 1, k) * (-q) ** (3 - k) for k in range(4))
    return q * c3


@dataclass(frozen=True)
class HodgeNumbers:
    nodes: int
    defect: int
    euler_smooth: int
    euler_nodal: int
    euler_resolved: int
    h3_resolved: int
    h2_resolved: int
    h11_resolved: int
    h3_nodal: int
    h4_nodal: int
    h30: int
    h21: int

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def hodge_numbers(nodes: int | None = None, defect_value: int | None = None) -> HodgeNumbers:
    s = len(enumerate_nodes()) if nodes is None else nodes
    d = defect() if defect_value is None else defect_value
    e_smooth = smooth_quintic_euler()
    e_nodal = e_smooth + s
    # each node is replaced by P1 x P1
    e_res = e_smooth + 4 * s
    h3 = 204 - 2 * s + 2 * d
    # e = 2 + 2 h2 - h3 with h1 = 0
    h2 = (e_res - 2 + h3) // 2
    # H^4 of the resolution is H^4 of the nodal model plus one class per exceptional fibre
    h4_nodal = h2 - s
    # e(nodal) = 3 - h3 + h4 with h2(nodal) = 1
    h3_nodal = 3 + h4_nodal - e_nodal
    h30 = 1
    return HodgeNumbers(s, d, e_smooth, e_nodal, e_res, h3, h2, h2, h3_nodal, h4_nodal,
                        h30, h3 // 2 - h30)


def summary() -> dict:
    cert = evaluation_rank()
    return {
        "monomials": list(monomial_multiplicities()),
        "nodes": list(node_multiplicities()),
        "node_count": len(enumerate_nodes()),
        "jacobian_kernel": list(jacobian_kernel_multiplicities()),
        "jacobian_span_dimension": jacobian_span_dimension(),
        "kernel": list(cert.kernel),
        "cokernel": list(cert.cokernel),
        "rank": cert.rank,
        "defect": cert.corank,
        "prime": cert.prime,
        "hodge": hodge_numbers(defect_value=cert.corank).as_dict(),
    }

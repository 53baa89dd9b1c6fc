"""Exact Gaussian elimination over any field whose elements support
+, -, *, / and a zero test (Fraction, QuadElem, CycloElem, ...).

Matrices are lists of rows.
"""
from __future__ import annotations

from typing import Callable, Sequence


def _is_zero(x) -> bool:
    z = getattr(x, "is_zero", None)
    return z() if callable(z) else x == 0


def rref(rows: Sequence[Sequence], zero=None, is_zero: Callable = _is_zero):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    nr, nc = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if not is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nr):
            if i != r and not is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def kernel(rows, zero, one) -> list[list]:
    """Basis of {v : rows . v = 0} as column vectors (lists)."""
    m, piv = rref(rows)
    nc = len(rows[0])
    free = [c for c in range(nc) if c not in piv]
    basis = []
    for f in free:
        v = [zero] * nc
        v[f] = one
        for i, pc in enumerate(piv):
            v[pc] = -m[i][f]
        basis.append(v)
    return basis


def solve(a, b):
    """Solve a x = b for square invertible a (b a list)."""
    n = len(a)
    aug = [list(a[i]) + [b[i]] for i in range(n)]
    m, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [m[i][n] for i in range(n)]


def inverse(a, zero, one):
    n = len(a)
    aug = [list(a[i]) + [one if j == i else zero for j in range(n)] for i in range(n)]
    m, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in m]


def det(a, one):
    m = [list(r) for r in a]
    n = len(m)
    d = one
    for c in range(n):
        piv = next((i for i in range(c, n) if not _is_zero(m[i][c])), None)
        if piv is None:
            return one - one
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d = d * m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if not _is_zero(m[i][c]):
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def matmul(a, b, zero):
    bt = list(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = zero
            for x, y in zip(row, col):
                if not (_is_zero(x) or _is_zero(y)):
                    acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return out


def matvec(a, v, zero):
    out = []
    for row in a:
        acc = zero
        for x, y in zip(row, v):
            if not (_is_zero(x) or _is_zero(y)):
                acc = acc + x * y
        out.append(acc)
    return out


def transpose(a):
    return [list(r) for r in zip(*a)]

"""Compiled inner loops for the O(q^2) scans.

Extension fields are handled in the discrete-log domain: an element is its
logarithm in [0, q-2], and -1 stands for zero.  Addition uses the Zech table.
"""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, inline="always")
def zadd(a, b, zech, m):
    if a < 0:
        return b
    if b < 0:
        return a
    d = b - a
    if d < 0:
        d += m
    z = zech[d]
    if z < 0:
        return -1
    r = a + z
    if r >= m:
        r -= m
    return r


@njit(cache=True, inline="always")
def zmul(a, b, m):
    if a < 0 or b < 0:
        return -1
    r = a + b
    if r >= m:
        r -= m
    return r


@njit(cache=True, nogil=True)
def p5_hist_prime(p, lo, hi):
    """Histogram of P5 over x1 in [lo, hi), x2 >= x1, weighted for symmetry."""
    hist = np.zeros(p, dtype=np.int64)
    G = np.empty(p, dtype=np.int64)
    U = np.empty(p, dtype=np.int64)
    WU = np.empty(p, dtype=np.int64)
    for t in range(p):
        t2 = t * t % p
        t4 = t2 * t2 % p
        t5 = t4 * t % p
        G[t] = (t5 + 5 * t2 - 5 * t) % p
        U[t] = (t - t2) % p
        WU[t] = t * U[t] % p
    for x1 in range(lo, hi):
        A = G[x1]
        B = U[x1]
        c = 5 * x1 % p
        for x2 in range(x1, p):
            inner = (WU[x2] + B * x2) % p
            v = (A + G[x2] + c * inner) % p
            if x2 == x1:
                hist[v] += 1
            else:
                hist[v] += 2
    return hist


@njit(cache=True, nogil=True)
def p5_hist_log(q, LG, LU, LX, LWU, l5, zech, lo, hi):
    """Same histogram over F_q in the log domain.  Index 0 counts zero,
    index k+1 counts g^k.  Arrays are indexed by element code."""
    m = q - 1
    hist = np.zeros(q, dtype=np.int64)
    for x1 in range(lo, hi):
        A = LG[x1]
        B = LU[x1]
        c = zmul(l5, LX[x1], m)
        for x2 in range(x1, q):
            inner = zadd(LWU[x2], zmul(B, LX[x2], m), zech, m)
            v = zadd(zadd(A, LG[x2], zech, m), zmul(c, inner, m), zech, m)
            if x2 == x1:
                hist[v + 1] += 1
            else:
                hist[v + 1] += 2
    return hist


@njit(cache=True, nogil=True)
def poly_zero_scan_log(q, LX, zech, lcoef1, e1a, e1b, lcoef2, e2a, e2b):
    """All (x1, x2) codes where two polynomials vanish simultaneously.

    Each polynomial is given by parallel arrays (log coefficient, exponent of
    x1, exponent of x2).
    """
    m = q - 1
    out = []
    for x1 in range(q):
        l1 = LX[x1]
        for x2 in range(q):
            l2 = LX[x2]
            acc = -1
            for k in range(lcoef1.shape[0]):
                t = lcoef1[k]
                if e1a[k] > 0:
                    if l1 < 0:
                        continue
                    t = (t + e1a[k] * l1) % m
                if e1b[k] > 0:
                    if l2 < 0:
                        continue
                    t = (t + e1b[k] * l2) % m
                acc = zadd(acc, t, zech, m)
            if acc >= 0:
                continue
            acc = -1
            for k in range(lcoef2.shape[0]):
                t = lcoef2[k]
                if e2a[k] > 0:
                    if l1 < 0:
                        continue
                    t = (t + e2a[k] * l1) % m
                if e2b[k] > 0:
                    if l2 < 0:
                        continue
                    t = (t + e2b[k] * l2) % m
                acc = zadd(acc, t, zech, m)
            if acc < 0:
                out.append((x1, x2))
    return out


@njit(cache=True, nogil=True)
def sumset_hist_log(q, support_logs, weights, zech):
    """g(v) = sum_{a + b = v} w(a) w(b) for a, b over a support given in logs
    (-1 allowed for zero).  Output indexed like p5_hist_log."""
    m = q - 1
    g = np.zeros(q, dtype=np.int64)
    n = support_logs.shape[0]
    for i in range(n):
        a = support_logs[i]
        wa = weights[i]
        for j in range(n):
            v = zadd(a, support_logs[j], zech, m)
            g[v + 1] += wa * weights[j]
    return g


@njit(cache=True)
def short_vectors(qd, qu, bound, cap):
    """Integer x with sum_i qd[i] (x_i + sum_{j>i} qu[i, j] x_j)^2 <= bound.

    qd, qu come from a completion of squares of a positive definite form;
    ``bound`` should already include a safety margin.  Returns an (m, n)
    int64 array; callers re-check each row exactly.
    """
    n = qd.shape[0]
    out = np.empty((cap, n), dtype=np.int64)
    m = 0
    x = np.zeros(n, dtype=np.int64)
    centre = np.zeros(n)
    rem = np.zeros(n + 1)
    upper = np.zeros(n, dtype=np.int64)
    rem[n] = bound
    k = n - 1
    # initialise level k
    c = 0.0
    centre[k] = c
    r = np.sqrt(max(rem[k + 1], 0.0) / qd[k])
    x[k] = np.int64(np.ceil(c - r - 1e-12))
    upper[k] = np.int64(np.floor(c + r + 1e-12))
    while True:
        if x[k] > upper[k]:
            k += 1
            if k == n:
                break
            x[k] += 1
            continue
        t = x[k] - centre[k]
        rem[k] = rem[k + 1] - qd[k] * t * t
        if rem[k] < 0:
            x[k] += 1
            continue
        if k == 0:
            if m == out.shape[0]:
                bigger = np.empty((2 * out.shape[0], n), dtype=np.int64)
                bigger[:m] = out[:m]
                out = bigger
            out[m] = x
            m += 1
            x[k] += 1
            continue
        k -= 1
        c = 0.0
        for j in range(k + 1, n):
            c -= qu[k, j] * x[j]
        centre[k] = c
        r = np.sqrt(max(rem[k + 1], 0.0) / qd[k])
        x[k] = np.int64(np.ceil(c - r - 1e-12))
        upper[k] = np.int64(np.floor(c + r + 1e-12))
    return out[:m]

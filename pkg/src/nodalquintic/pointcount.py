"""Point counts of the nodal quintic threefold, its small resolution and the
locus at infinity over finite fields F_q, gcd(q, 30) = 1.

The affine model is P5(x1, x2) = P5(x4, x5); its point count is the sum of
squared fibre sizes of P5 on F_q^2.
"""
from __future__ import annotations

import csv
import hashlib
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from . import _kernels as K
from .arith import FieldTable, dickson_permutes, field_for_q, prime_power
from .chebyshev import build_p5


class BadReductionError(ValueError):
    pass


class ConsistencyError(RuntimeError):
    pass


class CacheCorruptionError(RuntimeError):
    pass


def check_good(q: int) -> tuple[int, int]:
    p, n = prime_power(q)
    if math.gcd(q, 30) != 1:
        raise BadReductionError(f"q={q}: bad reduction at 2, 3 or 5")
    return p, n


@dataclass(frozen=True)
class CountBreakdown:
    q: int
    affine_singular_model: int
    rational_nodes: int
    infinity: int
    resolved_total: int

    def check(self) -> None:
        q = self.q
        expect = self.affine_singular_model + self.rational_nodes * ((q + 1) ** 2 - 1) + self.infinity
        if expect != self.resolved_total:
            raise ConsistencyError(f"inconsistent breakdown {self}")


def _stripes(q: int, parts: int) -> list[tuple[int, int]]:
    # the inner loop runs over x2 >= x1, so balance by triangular area
    bounds = [0]
    total = q * (q + 1) / 2
    for k in range(1, parts):
        target = total * k / parts
        # area of rows [0, x) is x*q - x(x-1)/2
        x = int(q + 0.5 - math.sqrt(max((q + 0.5) ** 2 - 2 * target, 0)))
        bounds.append(min(max(x, bounds[-1]), q))
    bounds.append(q)
    return [(a, b) for a, b in zip(bounds, bounds[1:]) if b > a]


def _log_arrays(F: FieldTable):
    codes = np.arange(F.q, dtype=np.int64)
    t2 = F.vmul(codes, codes)
    t5 = F.vpow(codes, 5)
    five = F.from_int(5)
    five_t = F.vmul(np.full_like(codes, five), codes)
    G = F.vadd(F.vadd(t5, F.vmul(np.full_like(codes, five), t2)), F.vneg(five_t))
    U = F.vadd(codes, F.vneg(t2))
    WU = F.vmul(codes, U)
    lg = F.log
    return lg[G], lg[U], lg[codes], lg[WU], int(lg[five])


def _log_hist_to_codes(F: FieldTable, h: np.ndarray) -> np.ndarray:
    out = np.zeros(F.q, dtype=np.int64)
    out[0] = h[0]
    out[F.exp] = h[1:]
    return out


def scan_histogram(q: int, workers: int | None = None) -> np.ndarray:
    """Brute-force histogram of P5 on F_q^2, indexed by element code."""
    check_good(q)
    F = field_for_q(q)
    workers = workers or 1
    stripes = _stripes(q, max(workers, 1) * 4 if workers > 1 else 1)
    if F.n == 1:
        def job(s):
            return K.p5_hist_prime(q, s[0], s[1])
    else:
        LG, LU, LX, LWU, l5 = _log_arrays(F)

        def job(s):
            return K.p5_hist_log(q, LG, LU, LX, LWU, l5, F.zech, s[0], s[1])
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(job, stripes))
    else:
        parts = [job(s) for s in stripes]
    h = np.sum(parts, axis=0)
    if F.n > 1:
        h = _log_hist_to_codes(F, h)
    if int(h.sum()) != q * q:
        raise ConsistencyError("histogram mass differs from q^2")
    return h


def value_histogram(q: int, method: str = "scan", workers: int | None = None) -> np.ndarray:
    """Histogram of P5 over F_q^2 (array indexed by element code, total mass q^2).

    method="auto" uses the permutation property of the degree-5 Dickson map
    when it holds: then (D5^(1), D5^(2)) is a bijection of F_q^2 and P5 = D5^(1) + D5^(2)
    takes every value exactly q times.
    """
    check_good(q)
    if method == "auto" and dickson_permutes(5, q):
        return np.full(q, q, dtype=np.int64)
    if method not in ("auto", "scan"):
        raise ValueError(f"unknown method {method!r}")
    return scan_histogram(q, workers)


def sum_of_squares(h: np.ndarray) -> int:
    return sum(int(x) * int(x) for x in h.tolist())


def affine_count(q: int, method: str = "scan", workers: int | None = None) -> int:
    return sum_of_squares(value_histogram(q, method, workers))


# ---------------------------------------------------------------------------
# Nodes
# ---------------------------------------------------------------------------

def nodes_closed_form(q: int) -> int:
    return {1: 120, 11: 104, 4: 24, 14: 8}.get(q % 15, 0)


def _partials_log_terms(F: FieldTable):
    p5 = build_p5()
    out = []
    for var in (1, 2):
        d = p5.diff(var)
        lc, ea, eb = [], [], []
        for (i, j), c in d.terms.items():
            code = F.from_int(int(c))
            if code == 0:
                continue
            lc.append(int(F.log[code]))
            ea.append(i)
            eb.append(j)
        out.append((np.array(lc, dtype=np.int64), np.array(ea, dtype=np.int64),
                    np.array(eb, dtype=np.int64)))
    return out


def critical_points_fq(q: int) -> list[tuple[int, int]]:
    """F_q-rational critical points of P5 by exhaustive scan (codes)."""
    check_good(q)
    F = field_for_q(q)
    (c1, a1, b1), (c2, a2, b2) = _partials_log_terms(F)
    LX = F.log.copy()
    pts = K.poly_zero_scan_log(q, LX, F.zech, c1, a1, b1, c2, a2, b2)
    return [(int(a), int(b)) for a, b in pts]


def _eval_p5_code(F: FieldTable, a: int, b: int) -> int:
    acc = 0
    for (i, j), c in build_p5().terms.items():
        acc = F.add(acc, F.mul(F.from_int(int(c)), F.mul(F.pow(a, i), F.pow(b, j))))
    return acc


def nodes_by_scan(q: int) -> int:
    buckets: dict[int, int] = {}
    F = field_for_q(q)
    for a, b in critical_points_fq(q):
        v = _eval_p5_code(F, a, b)
        buckets[v] = buckets.get(v, 0) + 1
    return sum(c * c for c in buckets.values())


def rational_node_count(q: int, verify: bool = False) -> int:
    """Number of F_q-rational nodes; with ``verify`` the closed form is checked by a scan."""
    check_good(q)
    a = nodes_closed_form(q)
    if verify:
        b = nodes_by_scan(q)
        if a != b:
            raise ConsistencyError(f"node count mismatch at q={q}: closed form {a}, scan {b}")
    return a


# ---------------------------------------------------------------------------
# Infinity and totals
# ---------------------------------------------------------------------------

def fifth_power_sum_histogram(q: int) -> np.ndarray:
    """Histogram of x1^5 + x2^5 over F_q^2, indexed by element code."""
    F = field_for_q(q)
    m = np.bincount(F.fifth_power_map(), minlength=q)
    support = np.nonzero(m)[0]
    logs = F.log[support].astype(np.int64)
    g = K.sumset_hist_log(q, logs, m[support].astype(np.int64), F.zech)
    return _log_hist_to_codes(F, g)


def infinity_count(q: int, method: str = "scan") -> int:
    """Points of x1^5 + x2^5 = x4^5 + x5^5 in P^3(F_q)."""
    check_good(q)
    if method == "auto" and math.gcd(5, q - 1) == 1:
        return q * q + q + 1
    g = fifth_power_sum_histogram(q)
    total = sum_of_squares(g) - 1
    if total % (q - 1):
        raise ConsistencyError(f"non-integral projective count at q={q}")
    return total // (q - 1)


def resolved_count(q: int, method: str = "auto", verify_nodes: bool = False,
                   workers: int | None = None) -> CountBreakdown:
    """F_q-points of the small resolution: affine part, blown-up nodes, infinity."""
    check_good(q)
    aff = affine_count(q, method, workers)
    nodes = rational_node_count(q, verify=verify_nodes)
    inf = infinity_count(q, method)
    total = aff + nodes * ((q + 1) ** 2 - 1) + inf
    rec = CountBreakdown(q, aff, nodes, inf, total)
    rec.check()
    if q % 5 in (2, 3) and total != q ** 3 + q ** 2 + q + 1:
        raise ConsistencyError(f"q={q}: count {total} differs from q^3+q^2+q+1")
    return rec


# ---------------------------------------------------------------------------
# Persistent cache
# ---------------------------------------------------------------------------

CACHE_FIELDS = ("q", "affine", "nodes", "infinity", "resolved", "checksum")


def _checksum(values: Iterable[int]) -> str:
    payload = ",".join(str(v) for v in values).encode()
    return hashlib.sha256(payload).hexdigest()[:16]


def default_cache_dir() -> Path:
    return Path(os.environ.get("NODALQUINTIC_CACHE", Path.home() / ".cache" / "nodalquintic"))


class CountCache:
    """Append-only CSV of CountBreakdown rows keyed by q."""

    def __init__(self, path: str | os.PathLike | None = None):
        if path is None:
            path = default_cache_dir() / "counts.csv"
        self.path = Path(path)
        self.computed = 0

    def load(self) -> dict[int, CountBreakdown]:
        rows: dict[int, CountBreakdown] = {}
        if not self.path.exists():
            return rows
        with self.path.open(newline="") as fh:
            reader = csv.DictReader(fh)
            for lineno, row in enumerate(reader, start=2):
                try:
                    vals = [int(row[k]) for k in CACHE_FIELDS[:-1]]
                except (TypeError, ValueError, KeyError) as exc:
                    raise CacheCorruptionError(f"{self.path}:{lineno}: unreadable row {row}") from exc
                if _checksum(vals) != row["checksum"]:
                    raise CacheCorruptionError(f"{self.path}:{lineno}: checksum mismatch for q={vals[0]}")
                rec = CountBreakdown(*vals)
                rec.check()
                rows[rec.q] = rec
        return rows

    def append(self, rec: CountBreakdown) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        new = not self.path.exists()
        vals = [rec.q, rec.affine_singular_model, rec.rational_nodes, rec.infinity, rec.resolved_total]
        with self.path.open("a", newline="") as fh:
            w = csv.writer(fh)
            if new:
                w.writerow(CACHE_FIELDS)
            w.writerow(vals + [_checksum(vals)])


def count_range(q_list: Iterable[int], cache: CountCache | None = None, method: str = "auto",
                workers: int | None = None) -> list[CountBreakdown]:
    """Resolved counts for each q, reusing and extending the cache."""
    cache = cache or CountCache()
    have = cache.load()
    out = []
    for q in q_list:
        if q not in have:
            rec = resolved_count(q, method=method, workers=workers)
            cache.append(rec)
            cache.computed += 1
            have[q] = rec
        out.append(have[q])
    return out


def breakdown_dict(rec: CountBreakdown) -> dict:
    return asdict(rec)

import json
from pathlib import Path

import numpy as np
import pytest

from nodalquintic import pointcount as pc
from nodalquintic.arith import fq_build

GOLDEN = json.loads((Path(__file__).parent / "golden" / "q11.json").read_text())


def _naive_histogram(p):
    h = [0] * p
    for a in range(p):
        for b in range(p):
            v = (a ** 5 + b ** 5 - 5 * (a ** 3 * b + a * b ** 3) + 5 * (a * a * b + a * b * b)
                 + 5 * (a * a + b * b) - 5 * (a + b)) % p
            h[v] += 1
    return h


@pytest.mark.parametrize("p", [7, 11, 13])
def test_scan_matches_naive(p):
    assert list(pc.value_histogram(p, "scan")) == _naive_histogram(p)


def test_golden_q11():
    assert [int(x) for x in pc.value_histogram(11, "scan")] == GOLDEN["histogram"]
    assert pc.infinity_count(11, "scan") == GOLDEN["infinity"]
    assert pc.resolved_count(11, method="scan").resolved_total == GOLDEN["resolved_total"]


@pytest.mark.parametrize("q", [7, 13, 17, 23, 343])
def test_uniform_histogram(q):
    h = pc.value_histogram(q, "scan")
    assert int(h.sum()) == q * q
    assert np.all(h == q)


def test_bad_reduction():
    for q in (2, 3, 25, 9):
        with pytest.raises(pc.BadReductionError):
            pc.check_good(q)
    with pytest.raises(ValueError):
        pc.check_good(30)


@pytest.mark.parametrize("q, expected", [(31, 120), (7, 0), (11, 104), (61, 120), (19, 24), (29, 8), (13, 0)])
def test_rational_nodes(q, expected):
    assert pc.rational_node_count(q) == expected
    assert pc.nodes_by_scan(q) == expected


def test_infinity():
    assert pc.infinity_count(7) == 57
    assert pc.infinity_count(7, "scan") == 57


@pytest.mark.parametrize("q", [7, 13])
def test_resolved_closed_form(q):
    assert pc.resolved_count(q).resolved_total == q ** 3 + q ** 2 + q + 1


def test_count_cache(tmp_path):
    cache = pc.CountCache(tmp_path / "c.csv")
    out = pc.count_range([7], cache)
    assert out[0].resolved_total == 400 and cache.computed == 1
    cache2 = pc.CountCache(tmp_path / "c.csv")
    pc.count_range([7], cache2)
    assert cache2.computed == 0
    rows = pc.count_range([7, 13, 23], cache2)
    assert [r.resolved_total for r in rows] == [q ** 3 + q ** 2 + q + 1 for q in (7, 13, 23)]


def test_count_cache_corruption(tmp_path):
    cache = pc.CountCache(tmp_path / "c.csv")
    pc.count_range([7, 13], cache)
    text = (tmp_path / "c.csv").read_text().replace("2380", "2381")
    (tmp_path / "c.csv").write_text(text)
    with pytest.raises(pc.CacheCorruptionError, match="q=13"):
        pc.CountCache(tmp_path / "c.csv").load()

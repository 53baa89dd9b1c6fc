import json
import os

import pytest
from click.testing import CliRunner

from nodalquintic import arith
from nodalquintic.cli import Config, main


@pytest.fixture
def run(tmp_path, monkeypatch):
    """Invoke the CLI with a private cache; env and table budget are restored afterwards."""
    monkeypatch.setenv("NODALQUINTIC_CACHE", os.environ["NODALQUINTIC_CACHE"])
    monkeypatch.setattr(arith, "TABLE_BUDGET", arith.TABLE_BUDGET)
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps({"cache_dir": str(tmp_path / "cache")}))
    runner = CliRunner()

    def invoke(*args, config=cfg):
        pre = ["--config", str(config)] if config else []
        return runner.invoke(main, pre + [str(a) for a in args])
    invoke.tmp = tmp_path
    return invoke


def test_count_json(run):
    res = run("count", 11)
    assert res.exit_code == 0, res.output
    out = json.loads(res.output)
    assert out["resolved_total"] == 17948
    assert len(out["config_hash"]) == 16


@pytest.mark.parametrize("q", [2, 3, 5, 25])
def test_bad_reduction_is_usage_error(run, q):
    assert run("count", q).exit_code == 2


def test_not_a_prime_power_is_usage_error(run):
    assert run("count", 30).exit_code == 2


def test_unknown_config_key(run, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"cache_dir": str(tmp_path), "colour": "red"}))
    res = run("count", 7, config=bad)
    assert res.exit_code == 2
    assert "colour" in res.output


def test_bad_embedding_choice(run, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"embedding_choice": "7"}))
    assert run("count", 7, config=bad).exit_code == 2


def test_config_digest_ignores_cache_location():
    a, b = Config(cache_dir="/x"), Config(cache_dir="/y")
    assert a.digest() == b.digest()
    assert Config(cache_dir="/x", dps=50).digest() != a.digest()


def test_lfactor_split(run):
    res = run("lfactor", 11)
    assert res.exit_code == 0, res.output
    out = json.loads(res.output)
    # -(58 +- 2 sqrt5) written with sqrt5 = 2w - 1
    assert {f["t"] for f in out["factors"]} == {"-56-4*w", "-60+4*w"}
    assert {f["c"] for f in out["factors"]} == {"1331"}


def test_trace_cached_roundtrip(run):
    first = json.loads(run("trace", 29).output)
    again = json.loads(run("trace", 29).output)
    assert first == again
    assert (first["a_p"], first["a_p2"]) == (60, -95116)
    assert (run.tmp / "cache" / "manifest.json").exists()


def test_corrupted_trace_cache_pinpoints_prime(run):
    assert run("trace", 29).exit_code == 0
    path = run.tmp / "cache" / "traces.csv"
    lines = path.read_text().splitlines()
    lines = [l.replace("29,60,", "29,62,", 1) if l.startswith("29,") else l for l in lines]
    path.write_text("\n".join(lines) + "\n")
    res = run("verify", "--json")
    assert res.exit_code == 1
    report = json.loads(res.output)
    fail = {f["name"]: f["detail"] for f in report["failures"]}
    assert "p=29" in fail["trace-cache"]
    # direct use of the cache is an internal consistency error
    res = run("trace", 31)
    assert res.exit_code == 3
    assert "p=29" in res.output


def test_verify_quick_passes(run):
    res = run("verify", "--json")
    assert res.exit_code == 0, res.output
    report = json.loads(res.output)
    assert report["ok"] and not report["failures"]
    names = [c["name"] for c in report["checks"]]
    assert {"theta-ideals", "theta-orders", "lambda-7", "defect"} <= set(names)
    orders = next(c for c in report["checks"] if c["name"] == "theta-orders")
    assert "swap" in orders["detail"]


def test_verify_detects_config_mismatch(run, tmp_path):
    assert run("count", 7).exit_code == 0
    assert run("trace", 23).exit_code == 0
    other = tmp_path / "other.json"
    other.write_text(json.dumps({"cache_dir": str(tmp_path / "cache"), "dps": 40}))
    res = run("verify", "--json", config=other)
    assert res.exit_code == 1
    assert "cache-config-hash" in {f["name"] for f in json.loads(res.output)["failures"]}


@pytest.mark.parametrize("kind, args", [("traces", ["--max-p", "31"]), ("theta", []), ("hodge", [])])
def test_export_is_byte_stable(run, kind, args):
    outs = []
    for name in ("a", "b"):
        d = run.tmp / name
        res = run("export", kind, "--out", d, *args)
        assert res.exit_code == 0, res.output
        outs.append({p.name: p.read_bytes() for p in sorted(d.iterdir())})
    assert outs[0] == outs[1]
    assert outs[0]


def test_export_traces_layout(run):
    d = run.tmp / "t"
    run("export", "traces", "--out", d, "--max-p", "13")
    lines = (d / "traces.csv").read_text().splitlines()
    assert lines[0].startswith("# config_hash=")
    assert lines[1:] == ["p,a_p,a_p2", "7,0,-140", "11,-116,1444", "13,0,5980"]


def test_theta_command(run):
    res = run("theta", "--kind", "ideals", "--xi", "1", "--xi", "2")
    assert res.exit_code == 0, res.output
    assert "config_hash" in json.loads(res.output)


def test_order_invariants_command(run):
    out = json.loads(run("order-invariants").output)
    assert (out["h"], out["t"], out["eichler_P5"]) == (12, 3, 1)


def test_bench_small(run):
    res = run("bench", "--q", 13, "--workers", 1, "--min-rate", 0)
    assert res.exit_code == 0, res.output
    assert json.loads(res.output)["results"][0]["evaluations"] == 169


def test_bench_threshold_fails(run):
    assert run("bench", "--q", 13, "--workers", 1, "--min-rate", 1e30).exit_code == 1

"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 internal
consistency error.  Every machine-readable output carries the hash of the
configuration that produced it.
"""
from __future__ import annotations

import csv
import dataclasses
import hashlib
import io
import json
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import click

from . import arith
from .arith import format_quad, parse_quad

CONFIG_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

@dataclass
class Config:
    cache_dir: str = ""
    table_budget: int = arith.TABLE_BUDGET
    dps: int = 30
    embedding_choice: str = "3-w"
    bad_factor_guess: dict | None = None
    version: int = CONFIG_VERSION

    @classmethod
    def load(cls, path: str | None) -> "Config":
        data: dict = {}
        if path:
            text = Path(path).read_text()
            if path.endswith(".toml"):
                try:
                    import tomllib
                except ImportError:
                    raise click.UsageError("TOML configs need Python 3.11; use JSON") from None
                data = tomllib.loads(text)
            else:
                data = json.loads(text)
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise click.UsageError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(**data)
        if not cfg.cache_dir:
            from .pointcount import default_cache_dir
            cfg.cache_dir = str(default_cache_dir())
        if cfg.embedding_choice not in arith.VSQ_CHOICES:
            raise click.UsageError(f"embedding_choice must be one of {list(arith.VSQ_CHOICES)}")
        return cfg

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)

    def digest(self) -> str:
        # the cache location does not change any computed value
        payload = {k: v for k, v in self.as_dict().items() if k != "cache_dir"}
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def apply(self) -> None:
        os.environ["NODALQUINTIC_CACHE"] = self.cache_dir
        arith.TABLE_BUDGET = self.table_budget

    def guess(self):
        from .lfunction import ACCEPTED_GUESS, BadFactorGuess
        if not self.bad_factor_guess:
            return ACCEPTED_GUESS
        g = dict(self.bad_factor_guess)
        for k in ("f2", "f3", "f5"):
            if g.get(k) is not None:
                g[k] = tuple(g[k])
        return BadFactorGuess(**g)

    def manifest_path(self) -> Path:
        return Path(self.cache_dir) / "manifest.json"

    def stamp_cache(self) -> None:
        p = self.manifest_path()
        if not p.exists():
            p.parent.mkdir(parents=True, exist_ok=True)
            p.write_text(json.dumps({"config_hash": self.digest()}, sort_keys=True) + "\n")

    def cache_hash(self) -> str | None:
        p = self.manifest_path()
        if not p.exists():
            return None
        return json.loads(p.read_text()).get("config_hash")


def _store(cfg: Config):
    from .lfunction import TraceStore
    from .pointcount import CountCache
    d = Path(cfg.cache_dir)
    cfg.stamp_cache()
    return TraceStore(d / "traces.csv", CountCache(d / "counts.csv"))


def _emit(cfg: Config, payload: dict) -> None:
    payload = dict(payload)
    payload["config_hash"] = cfg.digest()
    click.echo(json.dumps(payload, indent=2, sort_keys=True, default=_json_default))


def _json_default(o):
    if isinstance(o, arith.QuadElem):
        return format_quad(o)
    if dataclasses.is_dataclass(o):
        return dataclasses.asdict(o)
    if isinstance(o, (set, tuple)):
        return list(o)
    return str(o)


class InternalError(click.ClickException):
    exit_code = EXIT_INTERNAL


class CheckFailed(click.ClickException):
    exit_code = EXIT_FAIL


def _internal_errors():
    from .brandt import ConventionError, FieldError
    from .hodge import CertificateError, CharacterTableError
    from .idealtheta import ConsistencyError as ThetaConsistency
    from .lfunction import AmbiguityError, DataError
    from .pointcount import CacheCorruptionError, ConsistencyError
    return (ConventionError, FieldError, CertificateError, CharacterTableError, ThetaConsistency,
            AmbiguityError, DataError, CacheCorruptionError, ConsistencyError, ArithmeticError)


class _Group(click.Group):
    def invoke(self, ctx):
        from .pointcount import BadReductionError
        try:
            return super().invoke(ctx)
        except BadReductionError as exc:
            raise click.UsageError(str(exc)) from exc
        except _internal_errors() as exc:
            raise InternalError(f"{type(exc).__name__}: {exc}") from exc
        except ValueError as exc:
            # remaining ValueErrors come from argument validation (e.g. q not a prime power)
            raise click.UsageError(str(exc)) from exc


@click.group(cls=_Group)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              help="JSON or TOML file with Config fields.")
@click.pass_context
def main(ctx, config_path):
    """Point counts, L-series checks, quaternionic theta series, Brandt
    matrices and Hodge data for the nodal quintic P5(x1,x2) = P5(x3,x4)."""
    cfg = Config.load(config_path)
    cfg.apply()
    ctx.obj = cfg


# ---------------------------------------------------------------------------
# Single computations
# ---------------------------------------------------------------------------

@main.command()
@click.argument("q", type=int)
@click.option("--method", type=click.Choice(["auto", "scan"]), default="auto")
@click.pass_obj
def count(cfg, q, method):
    """Rational points of the resolved threefold over F_q."""
    from .pointcount import breakdown_dict, resolved_count
    rec = resolved_count(q, method=method)
    _emit(cfg, breakdown_dict(rec))


@main.command()
@click.argument("p", type=int)
@click.option("--square/--no-square", default=True, help="Also report a_{p^2}.")
@click.pass_obj
def trace(cfg, p, square):
    """Frobenius traces a_p (and a_{p^2}) on H^3."""
    store = _store(cfg)
    out = {"p": p, "a_p": store.a_p(p)}
    if square:
        out["a_p2"] = store.a_p2(p)
    _emit(cfg, out)


@main.command()
@click.argument("p", type=int)
@click.pass_obj
def lfactor(cfg, p):
    """Characteristic polynomial of Frobenius and its splitting over Q(sqrt5)."""
    from .lfunction import frob_charpoly, split_over_f
    store = _store(cfg)
    lf = frob_charpoly(p, store)
    parts = split_over_f(p, store, lf)
    _emit(cfg, {
        "p": p, "coeffs": list(lf.coeffs), "charpoly": lf.charpoly_str(),
        "weil_ok": lf.weil_ok(),
        "factors": [{"t": format_quad(f.t), "c": format_quad(f.c)} for f in parts],
    })


@main.command()
@click.option("--m", "orders", type=int, multiple=True, default=(0, 1), show_default=True)
@click.option("--t", "ts", type=float, multiple=True, default=(1.0, 1.4, 1.6, 2.0, 2.5),
              show_default=True)
@click.option("--n-max", type=int, default=3000, show_default=True)
@click.pass_obj
def lseries(cfg, orders, ts, n_max):
    """Functional-equation test values of L^(m)(2) across the scale t."""
    from .lfunction import dirichlet_coeffs, ensure_traces, fe_test
    store = _store(cfg)
    ensure_traces(n_max, store)
    guess = cfg.guess()
    coeffs = dirichlet_coeffs(n_max, guess, store)
    out = {"guess": guess.describe(), "n_max": n_max, "values": {}}
    for m in orders:
        vals = {str(t): fe_test(m, t, n_max, guess, store, coeffs) for t in ts}
        spread = max(vals.values()) - min(vals.values())
        out["values"][str(m)] = {"by_t": vals, "spread": spread}
    _emit(cfg, out)


@main.command()
@click.option("--kind", type=click.Choice(["ideals", "orders"]), default="ideals")
@click.option("--xi", "xis", multiple=True, help="Override the list of xi (a+bw).")
@click.pass_obj
def theta(cfg, kind, xis):
    """Theta-series coefficients of the 12 ideals or their right orders."""
    from . import idealtheta, tables
    if kind == "ideals":
        xis = xis or tables.IDEAL_THETA_XIS
        rows = idealtheta.ideal_theta_rows(xis)
    else:
        xis = xis or tables.ORDER_THETA_XIS
        rows = idealtheta.order_theta_rows(xis)
    _emit(cfg, {"kind": kind, "xis": list(xis), "rows": {str(k): v for k, v in rows.items()}})


@main.command("order-invariants")
@click.pass_obj
def order_invariants(cfg):
    """Discriminants, Eichler invariant, mass, class and type numbers."""
    from .quatorder import order_invariants as inv
    _emit(cfg, inv())


@main.command()
@click.argument("xi", default="3+w")
@click.option("--charpoly/--no-charpoly", default=False, help="Factor the characteristic polynomial.")
@click.pass_obj
def brandt(cfg, xi, charpoly):
    """Brandt matrix at xi and the eigenvalue of the distinguished eigenvector."""
    from . import brandt as B
    bm = B.cached_brandt(format_quad(parse_quad(xi)), cfg.embedding_choice)
    m = bm.matrix()
    tr = arith.QuadElem(0)
    for i in range(len(m)):
        if not m[i][i].in_f():
            raise B.FieldError("diagonal entry outside F")
        tr = tr + m[i][i].a
    eig = B.find_eigenvector(cfg.embedding_choice)
    out = {"xi": format_quad(parse_quad(xi)), "vsq": cfg.embedding_choice, "size": len(m),
           "trace": format_quad(tr), "pattern_ok": bm.pattern_ok(),
           "eigenvalue": format_quad(B.eigenvalue_at(xi, eig).a)}
    if charpoly:
        info = B.charpoly_info(xi, cfg.embedding_choice, bm)
        out["charpoly"] = {"in_f": info.in_f, "linear_roots": info.linear,
                           "other_factors": [{"degree": d, "multiplicity": k} for d, k in info.other]}
    _emit(cfg, out)


@main.command()
@click.pass_obj
def hodge(cfg):
    """D4 decompositions, certified defect and Hodge numbers."""
    from .hodge import summary
    _emit(cfg, summary())


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------

@dataclass
class Check:
    name: str
    reference: str
    ok: bool = False
    detail: str = ""
    seconds: float = 0.0


@dataclass
class Report:
    level: str
    checks: list[Check] = field(default_factory=list)

    def run(self, name: str, reference: str, fn: Callable[[], tuple[bool, str]]) -> Check:
        c = Check(name, reference)
        t0 = time.perf_counter()
        try:
            c.ok, c.detail = fn()
        except Exception as exc:  # a failed check, reported rather than raised
            c.ok, c.detail = False, f"{type(exc).__name__}: {exc}"
        c.seconds = round(time.perf_counter() - t0, 3)
        self.checks.append(c)
        return c

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[dict]:
        return [{"name": c.name, "detail": c.detail} for c in self.checks if not c.ok]


def _check_cache_hash(cfg: Config) -> tuple[bool, str]:
    h = cfg.cache_hash()
    if h is None:
        return True, "no cached artifacts yet"
    return h == cfg.digest(), f"cache {h}, config {cfg.digest()}"


def _check_counts() -> tuple[bool, str]:
    from .pointcount import resolved_count
    qs = [7, 13, 17, 23, 37, 43, 47, 53, 73, 83, 97, 103]
    bad = [q for q in qs if resolved_count(q, method="scan").resolved_total != q ** 3 + q ** 2 + q + 1]
    return not bad, f"q = {qs}" if not bad else f"mismatch at q = {bad}"


def _check_traces(store, primes) -> tuple[bool, str]:
    from .tables import TRACE_TABLE
    bad = []
    for p in primes:
        got = (store.a_p(p), store.a_p2(p))
        if got != TRACE_TABLE[p]:
            bad.append(f"p={p}: got {got}, expected {TRACE_TABLE[p]}")
    return not bad, "; ".join(bad) or f"p = {list(primes)}"


def _check_weil(store) -> tuple[bool, str]:
    from .lfunction import weil_report
    rep = weil_report(store)
    bad = [p for p, ok in rep.items() if not ok]
    return not bad, f"{len(rep)} primes" if not bad else f"Weil bound fails at p = {bad}"


def _check_theta(kind: str) -> tuple[bool, str]:
    from . import idealtheta, tables
    if kind == "ideals":
        rows, ref = idealtheta.ideal_theta_rows(tables.IDEAL_THETA_XIS), tables.IDEAL_THETA
    else:
        rows, ref = idealtheta.order_theta_rows(tables.ORDER_THETA_XIS), tables.ORDER_THETA
    bad = [i for i in ref if tuple(rows[i]) != ref[i]]
    if not bad:
        return True, "all rows equal"
    swapped = {}
    for a, b in tables.KNOWN_ROW_SWAPS.get(kind, ()):
        swapped[a], swapped[b] = ref[b], ref[a]
    if all(tuple(rows[i]) == swapped.get(i) for i in bad):
        return True, f"equal after the documented print swap of rows {sorted(bad)}"
    return False, f"rows differ: {bad}"


def _check_lambda7(cfg) -> tuple[bool, str]:
    from . import brandt as B
    eig = B.find_eigenvector(cfg.embedding_choice)
    lam = B.eigenvalue_at("7", eig).a
    return lam == arith.QuadElem(-70), f"lambda(7) = {format_quad(lam)}"


def _check_defect() -> tuple[bool, str]:
    from .hodge import evaluation_rank
    cert = evaluation_rank()
    return cert.corank == 20, f"rank {cert.rank} mod {cert.prime}, corank {cert.corank}"


def _check_frobenius(cfg, store) -> tuple[bool, str]:
    from . import brandt as B
    eig = B.find_eigenvector(cfg.embedding_choice)
    bad, seen = [], []
    for p in (7, 11, 13, 17, 19, 23, 29, 31):
        r = B.frobenius_match(p, eig, store)
        seen.append(p)
        if not r.ok:
            bad.append(f"p={p}: {r.detail}")
    return not bad, "; ".join(bad) or f"p = {seen}"


def _check_fe(cfg, store) -> tuple[bool, str]:
    from .lfunction import dirichlet_coeffs, ensure_traces, fe_test
    from .tables import FE_DERIVATIVE
    n_max = 3000
    ensure_traces(n_max, store)
    guess = cfg.guess()
    coeffs = dirichlet_coeffs(n_max, guess, store)
    ts = (1.0, 1.4, 1.6, 2.0, 2.5)
    v0 = [fe_test(0, t, n_max, guess, store, coeffs) for t in ts]
    v1 = [fe_test(1, t, n_max, guess, store, coeffs) for t in ts]
    ok = max(map(abs, v0)) < 1e-10 and max(v1) - min(v1) < 1e-8 and abs(v1[0] - FE_DERIVATIVE) < 1e-8
    return ok, f"L'(2) = {v1[0]:.12f}, max |L(2)| = {max(map(abs, v0)):.2e}"


def _check_charpoly(cfg) -> tuple[bool, str]:
    from .brandt import LAMBDA_11, charpoly_info
    info = charpoly_info("3+w", cfg.embedding_choice)
    mult = info.root_multiplicity(LAMBDA_11)
    return info.in_f and mult >= 1, f"degree {info.degree}, {len(info.linear)} linear factors"


def _open_store(cfg: Config):
    try:
        return _store(cfg), None
    except Exception as exc:  # reported as a failed check below
        return None, f"{type(exc).__name__}: {exc}"


def build_report(cfg: Config, level: str, frobenius: bool) -> Report:
    store, store_error = _open_store(cfg)

    def with_store(fn):
        if store is None:
            return lambda: (False, f"skipped, trace cache unusable ({store_error})")
        return lambda: fn(store)

    rep = Report(level)
    rep.run("cache-config-hash", "cached artifacts were built with this configuration",
            lambda: _check_cache_hash(cfg))
    rep.run("trace-cache", "checksummed rows of the trace cache",
            lambda: (store is not None, store_error or "readable"))
    rep.run("closed-form-counts", "count q^3+q^2+q+1 for q = +-2 mod 5", _check_counts)
    rep.run("trace-table", "published table of a_p, a_p^2",
            with_store(lambda st: _check_traces(st, (23, 29, 31, 37, 41))))
    rep.run("weil-bounds", "Weil bounds on every cached trace", with_store(_check_weil))
    rep.run("theta-ideals", "published theta table of the 12 ideals", lambda: _check_theta("ideals"))
    rep.run("theta-orders", "published theta table of the 12 right orders",
            lambda: _check_theta("orders"))
    rep.run("lambda-7", "eigenvalue -70 at xi = 7", lambda: _check_lambda7(cfg))
    rep.run("defect", "defect 20 of the nodal quintic", _check_defect)
    if level == "full" or frobenius:
        rep.run("frobenius-match", "Brandt eigenvalues against Frobenius up to 31",
                with_store(lambda st: _check_frobenius(cfg, st)))
    if level == "full":
        rep.run("functional-equation", "L'(2) = 2.838113... at n_max = 3000",
                with_store(lambda st: _check_fe(cfg, st)))
        rep.run("charpoly-3+w", "characteristic polynomial of B(3+w) over F",
                lambda: _check_charpoly(cfg))
    return rep


@main.command()
@click.option("--level", type=click.Choice(["quick", "full"]), default="quick", show_default=True)
@click.option("--frobenius", is_flag=True, help="Add the eigenvalue/Frobenius comparison to quick.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable report only.")
@click.pass_obj
def verify(cfg, level, frobenius, as_json):
    """Run the cross-checks; exit 0 only if all pass."""
    rep = build_report(cfg, level, frobenius)
    if as_json:
        _emit(cfg, {"level": level, "ok": rep.ok, "checks": [dataclasses.asdict(c) for c in rep.checks],
                    "failures": rep.failures()})
    else:
        for c in rep.checks:
            click.echo(f"[{'PASS' if c.ok else 'FAIL'}] {c.name:<22} {c.detail}  ({c.reference}; {c.seconds}s)")
        click.echo(f"config {cfg.digest()}: {'all checks passed' if rep.ok else 'FAILED'}")
    if not rep.ok:
        sys.exit(EXIT_FAIL)


# ---------------------------------------------------------------------------
# Export
# ---------------------------------------------------------------------------

def _csv_text(cfg: Config, header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    buf.write(f"# config_hash={cfg.digest()}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _write(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as exc:
        raise click.ClickException(f"cannot write {path}: {exc}") from exc


def export_traces(cfg: Config, max_p: int) -> dict[str, str]:
    from .arith import is_prime
    store = _store(cfg)
    rows = []
    for p in range(7, max_p + 1):
        if is_prime(p):
            rows.append([p, store.a_p(p), store.a_p2(p)])
    return {"traces.csv": _csv_text(cfg, ["p", "a_p", "a_p2"], rows)}


def export_theta(cfg: Config) -> dict[str, str]:
    from . import idealtheta, tables
    ideals = idealtheta.ideal_theta_rows(tables.IDEAL_THETA_XIS)
    orders = idealtheta.order_theta_rows(tables.ORDER_THETA_XIS)
    return {
        "theta_ideals.csv": _csv_text(cfg, ["ideal", *tables.IDEAL_THETA_XIS],
                                      [[f"I{i}", *r] for i, r in ideals.items()]),
        "theta_orders.csv": _csv_text(cfg, ["order", *tables.ORDER_THETA_XIS],
                                      [[f"O{i}", *r] for i, r in orders.items()]),
    }


def export_eigenvalues(cfg: Config) -> dict[str, str]:
    from . import brandt as B
    eig = B.find_eigenvector(cfg.embedding_choice)
    rows = []
    for xi in list(B.EIGEN_TABLE) + list(B.EIGEN_TABLE_LATE):
        x = parse_quad(xi)
        # rational prime below xi (inert primes are their own generator)
        p = abs(int(x.rational())) if x.is_rational() else abs(int(x.norm()))
        rows.append([format_quad(x), p, format_quad(B.eigenvalue_at(x, eig).a)])
    return {"eigenvalues.csv": _csv_text(cfg, ["xi", "p", "lambda"], rows)}


def export_hodge(cfg: Config) -> dict[str, str]:
    from .hodge import summary
    payload = summary()
    payload["config_hash"] = cfg.digest()
    return {"hodge.json": json.dumps(payload, indent=2, sort_keys=True) + "\n"}


@main.command()
@click.argument("kind", type=click.Choice(["traces", "theta", "eigenvalues", "hodge"]))
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=".", show_default=True)
@click.option("--max-p", type=int, default=41, show_default=True, help="Largest prime for traces.")
@click.pass_obj
def export(cfg, kind, out_dir, max_p):
    """Write tables as CSV/JSON, byte-stable for a fixed configuration."""
    files = {
        "traces": lambda: export_traces(cfg, max_p),
        "theta": lambda: export_theta(cfg),
        "eigenvalues": lambda: export_eigenvalues(cfg),
        "hodge": lambda: export_hodge(cfg),
    }[kind]()
    for name, text in files.items():
        path = Path(out_dir) / name
        _write(path, text)
        click.echo(str(path))


# ---------------------------------------------------------------------------
# Benchmark
# ---------------------------------------------------------------------------

def bench_scan(q: int, workers: int | None = None) -> dict:
    from .pointcount import check_good, scan_histogram
    check_good(q)
    scan_histogram(q, workers=1)          # compile and warm caches
    t0 = time.perf_counter()
    scan_histogram(q, workers=1)
    serial = time.perf_counter() - t0
    t0 = time.perf_counter()
    scan_histogram(q, workers=workers)
    parallel = time.perf_counter() - t0
    evals = q * q
    return {"q": q, "evaluations": evals, "serial_s": serial, "parallel_s": parallel,
            "evals_per_s": evals / max(parallel, 1e-12), "speedup": serial / max(parallel, 1e-12)}


@main.command()
@click.option("--q", "qs", type=int, multiple=True, default=(101, 401, 1601), show_default=True)
@click.option("--workers", type=int, default=None)
@click.option("--min-rate", type=float, default=1e6, show_default=True,
              help="Fail if the slowest scan falls below this many evaluations per second.")
@click.pass_obj
def bench(cfg, qs, workers, min_rate):
    """Throughput of the q^2 value scan."""
    results = [bench_scan(q, workers) for q in qs]
    _emit(cfg, {"results": results, "min_rate": min_rate})
    if min(r["evals_per_s"] for r in results) < min_rate:
        sys.exit(EXIT_FAIL)


if __name__ == "__main__":
    main()

"""Command line harness: ``orelab <command> --config <path>``.

A config is a JSON object::

    {"command": "radical", "field": {"p": 2, "k": 1}, "params": {...}, "seed": 0}

``field.k`` may be ``"auto"``; the harness then picks the smallest extension
with enough interpolation nodes for the command (matrix coefficients must
then be prime-field integers). Reports go to ``<out>/report.json`` (and
``rows.csv`` for tabular commands). Exit status: 0 when every assertion
passes, 1 when one fails, 2 for configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from . import __version__
from .errors import FieldTooSmallError, HypothesisError, OrelabError, ParseError, PreconditionError
from .field import GF, FieldCtx, field_with_nodes
from .freealg import FreePoly, Span
from .matalg import (ZeroPower, algebra_closure, assumption3_check, check_pseudo_idempotent,
                     check_radical, power_to_assumption3, pseudo_idempotent, radical)
from .matrices import MatConst, MatFree
from .ore import (OrePoly, free_derivation, frobenius_d_rhs, is_quasi_inverse, iterated_d, ore_mul,
                  ore_to_free, quasi_inverse_nilpotent)
from .shift import assumption1_scan, extract_components, gamma_y_expand, platinum_closure
from .starcal import GoodSet, StarCalculus, compute_BZ, naj_spot_check

COMMANDS = (
    "assumption1-scan",
    "assumption3-witness",
    "radical",
    "pseudo-idempotent",
    "bz-sweep",
    "naj-check",
    "ore-identities",
    "quasi-inverse",
)

OUT_ENV = "ORELAB_OUT_DIR"


class ConfigError(OrelabError, ValueError):
    """Invalid experiment configuration."""


@dataclass
class ExperimentConfig:
    command: str
    p: int
    k: int | str = 1
    params: dict = field(default_factory=dict)
    seed: int = 0

    @classmethod
    def from_json(cls, data: Any) -> "ExperimentConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(data) - {"command", "field", "params", "seed"}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        command = data.get("command")
        if command not in COMMANDS:
            raise ConfigError(f"unknown command {command!r}; expected one of {', '.join(COMMANDS)}")
        fld = data.get("field", {"p": 2, "k": 1})
        if not isinstance(fld, dict) or "p" not in fld:
            raise ConfigError("field must be an object with at least 'p'")
        p, k = fld["p"], fld.get("k", 1)
        if not isinstance(p, int) or isinstance(p, bool):
            raise ConfigError("field.p must be an integer")
        if k != "auto" and (not isinstance(k, int) or isinstance(k, bool) or k < 1):
            raise ConfigError("field.k must be a positive integer or \"auto\"")
        params = data.get("params", {})
        if not isinstance(params, dict):
            raise ConfigError("params must be an object")
        seed = data.get("seed", 0)
        if not isinstance(seed, int) or isinstance(seed, bool) or not 0 <= seed < 2**64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        return cls(command, p, k, params, seed)

    @classmethod
    def load(cls, path: str | Path) -> "ExperimentConfig":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc
        return cls.from_json(data)

    def to_json(self) -> dict:
        return {"command": self.command, "field": {"p": self.p, "k": self.k},
                "params": self.params, "seed": self.seed}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"


class Report:
    def __init__(self, config: ExperimentConfig):
        self.config = config
        self.field: dict | None = None
        self.rows: list[dict] = []
        self.result: dict = {}
        self.assertions: list[dict] = []
        self.timings: dict[str, float] = {}
        self.csv_rows: list[dict] | None = None

    def check(self, name: str, passed: bool, witness: Any = None) -> None:
        entry = {"name": name, "passed": bool(passed)}
        if not passed and witness is not None:
            entry["witness"] = witness
        self.assertions.append(entry)

    def guarded(self, name: str, fn: Callable[[], Any]) -> Any:
        """Run fn, recording an internal AssertionError as a failed check."""
        try:
            out = fn()
        except AssertionError as exc:
            self.check(name, False, str(exc) or "assertion failed")
            return None
        self.check(name, True)
        return out

    @property
    def passed(self) -> bool:
        return all(a["passed"] for a in self.assertions)

    def to_json(self, stable: bool = False) -> dict:
        out = {
            "config": self.config.to_json(),
            "version": __version__,
            "field": self.field,
            "result": self.result,
            "rows": self.rows,
            "assertions": self.assertions,
            "passed": self.passed,
        }
        if not stable:
            out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out


# -- parameter helpers ---------------------------------------------------------------------


def _param(params: dict, name: str, kind, default=None, required: bool = False):
    if name not in params:
        if required:
            raise ConfigError(f"missing parameter {name!r}")
        return default
    val = params[name]
    if kind is int and (not isinstance(val, int) or isinstance(val, bool)):
        raise ConfigError(f"parameter {name!r} must be an integer")
    if kind is list and not isinstance(val, list):
        raise ConfigError(f"parameter {name!r} must be a list")
    if kind is bool and not isinstance(val, bool):
        raise ConfigError(f"parameter {name!r} must be true or false")
    return val


def _int_range(params: dict, name: str, default=None) -> list[int]:
    val = params.get(name, default)
    if val is None:
        raise ConfigError(f"missing parameter {name!r}")
    if isinstance(val, int) and not isinstance(val, bool):
        return [val]
    if isinstance(val, dict) and set(val) == {"from", "to"}:
        return list(range(val["from"], val["to"] + 1))
    if isinstance(val, list) and all(isinstance(v, int) and not isinstance(v, bool) for v in val):
        return list(val)
    raise ConfigError(f"parameter {name!r} must be an integer, a list of integers or {{\"from\", \"to\"}}")


def _matrix_text(params: dict, name: str = "matrix") -> list[list[str]]:
    rows = _param(params, name, list, required=True)
    if not rows or not all(isinstance(r, list) and len(r) == len(rows) for r in rows):
        raise ConfigError(f"parameter {name!r} must be a square list of lists")
    return [[str(e) for e in r] for r in rows]


def _parse_matrix(ctx: FieldCtx, rows: list[list[str]], name: str = "matrix") -> MatFree:
    return MatFree.parse(ctx, rows, source=name)


def _const_matrices(ctx: FieldCtx, params: dict, name: str) -> list[MatConst]:
    raw = _param(params, name, list, required=True)
    try:
        mats = [MatConst.from_json(ctx, m) for m in raw]
    except (TypeError, ValueError, IndexError) as exc:
        raise ConfigError(f"bad matrix in {name!r}: {exc}") from exc
    if not mats:
        raise ConfigError(f"{name!r} must not be empty")
    if len({m.d for m in mats}) != 1:
        raise ConfigError(f"matrices in {name!r} have different sizes")
    return mats


def _resolve_field(cfg: ExperimentConfig, nodes: Callable[[FieldCtx], int] | None) -> FieldCtx:
    try:
        if cfg.k != "auto":
            return GF(cfg.p, cfg.k)
        base = GF(cfg.p, 1)
        if nodes is None:
            return base
        return field_with_nodes(cfg.p, nodes(base))
    except ValueError as exc:
        if isinstance(exc, OrelabError):
            raise
        raise ConfigError(str(exc)) from exc


def _x_degree_nodes(power_of: Callable[[dict], int] = lambda params: 1) -> Callable:
    def need(cfg: ExperimentConfig) -> Callable[[FieldCtx], int]:
        def count(base: FieldCtx) -> int:
            m = _parse_matrix(base, _matrix_text(cfg.params))
            return m.max_x_degree() * power_of(cfg.params) + 1
        return count
    return need


# -- commands ------------------------------------------------------------------------------


def _cmd_assumption1_scan(cfg: ExperimentConfig, ctx: FieldCtx, rep: Report, rng: random.Random) -> None:
    m = _parse_matrix(ctx, _matrix_text(cfg.params))
    ns = _int_range(cfg.params, "n")
    verify = _param(cfg.params, "vandermonde", bool, False)
    expect = cfg.params.get("expect_dim")
    t0 = time.perf_counter()
    scan = assumption1_scan(m, ns)
    rep.timings["scan"] = time.perf_counter() - t0
    rep.rows = scan["rows"]
    rep.csv_rows = scan["rows"]
    rep.result = {k: v for k, v in scan.items() if k != "rows"}
    rep.check("bound_met_on_window", all(r["bound_met"] for r in scan["rows"]),
              [r for r in scan["rows"] if not r["bound_met"]])
    if expect is not None:
        bad = [r for r in scan["rows"] if r["dim"] != expect]
        rep.check(f"dim_equals_{expect}", not bad, bad)
    if verify:
        t0 = time.perf_counter()
        power, last, bad = None, 0, []
        for n in sorted(set(ns)):
            while last < n:
                power = m if power is None else power * m
                last += 1
            comps = extract_components(power, ctx)
            interp = Span.of(ctx, [e for c in comps for e in c.entries()])
            if interp != platinum_closure(power.entry_span(), check=False):
                bad.append(n)
        rep.timings["vandermonde"] = time.perf_counter() - t0
        rep.check("interpolated_span_equals_closure", not bad, bad)


def _cmd_assumption3_witness(cfg: ExperimentConfig, ctx: FieldCtx, rep: Report, rng: random.Random) -> None:
    n = _parse_matrix(ctx, _matrix_text(cfg.params))
    ceiling = _param(cfg.params, "ceiling", int)
    t0 = time.perf_counter()
    w = rep.guarded("pipeline_internal_checks", lambda: power_to_assumption3(n, ceiling))
    rep.timings["pipeline"] = time.perf_counter() - t0
    if w is None:
        return
    if isinstance(w, ZeroPower):
        rep.result = {"kind": "zero", "exponent": w.exponent}
        rep.check("power_vanishes", not n**w.exponent)
        return
    rep.result = {"kind": "witness", **w.to_json()}
    items = assumption3_check(w)
    rep.rows = [{"item": k, "passed": v} for k, v in items.items()]
    for name, ok in items.items():
        rep.check(name, ok)


def _cmd_radical(cfg: ExperimentConfig, ctx: FieldCtx, rep: Report, rng: random.Random) -> None:
    gens = _const_matrices(ctx, cfg.params, "generators")
    t0 = time.perf_counter()
    h = algebra_closure(gens, ctx, gens[0].d)
    rad = radical(h, check=False)
    rep.timings["radical"] = time.perf_counter() - t0
    rep.result = {"algebra_basis": [b.to_json() for b in h.basis], "dim": h.dim,
                  "radical_basis": [w.to_json() for w in rad.basis], "radical_dim": rad.dim, "s": rad.s}
    rep.guarded("radical_postconditions", lambda: check_radical(rad))
    expect_s = _param(cfg.params, "expect_s", int)
    if expect_s is not None:
        rep.check("s_matches", rad.s == expect_s, rad.s)


def _cmd_pseudo_idempotent(cfg: ExperimentConfig, ctx: FieldCtx, rep: Report, rng: random.Random) -> None:
    gens = _const_matrices(ctx, cfg.params, "generators")
    ceiling = _param(cfg.params, "ceiling", int)
    h = algebra_closure(gens, ctx, gens[0].d)
    t0 = time.perf_counter()
    res = pseudo_idempotent(h, ceiling=ceiling)
    rep.timings["search"] = time.perf_counter() - t0
    rep.result = {"beta": res.beta, "e": res.e.to_json(), "f": res.f.to_json(), "n": res.n,
                  "f_weight": res.f_weight, "s": res.radical.s}
    rep.check("f_idempotent", res.f * res.f == res.f)
    rep.guarded("pseudo_idempotent_postconditions", lambda: check_pseudo_idempotent(h, res))


def _witness(cfg: ExperimentConfig, ctx: FieldCtx, rep: Report):
    n = _parse_matrix(ctx, _matrix_text(cfg.params))
    w = power_to_assumption3(n, _param(cfg.params, "ceiling", int))
    if isinstance(w, ZeroPower):
        raise ConfigError(f"coefficient algebra is nilpotent (N^{w.exponent} = 0); no witness to sweep")
    rep.result["witness"] = w.to_json()
    return w


def _cmd_bz_sweep(cfg: ExperimentConfig, ctx: FieldCtx, rep: Report, rng: random.Random) -> None:
    ms = _int_range(cfg.params, "m")
    n_cap = _param(cfg.params, "n_cap", int)
    keep = _param(cfg.params, "records", bool, False)
    w = _witness(cfg, ctx, rep)
    good, calc = GoodSet(w), StarCalculus(gamma_y_expand(w.m))
    rep.result["good_set"] = [list(u.symbols) for u in good]
    for m in ms:
        t0 = time.perf_counter()
        res = rep.guarded(f"sweep_m{m}", lambda: compute_BZ(w, m, n_cap, good, calc))
        rep.timings[f"m{m}"] = time.perf_counter() - t0
        if res is None:
            continue
        row = res.summary()
        rep.check(f"cardinality_m{m}", row["Z"] == row["R_dim"], row)
        rep.check(f"disjoint_m{m}", not (res.B & res.Z))
        if keep:
            row = dict(row, records=res.records)
        rep.rows.append(row)
    rep.csv_rows = [{k: v for k, v in r.items() if k != "records"} for r in rep.rows]


def _cmd_naj_check(cfg: ExperimentConfig, ctx: FieldCtx, rep: Report, rng: random.Random) -> None:
    m = _param(cfg.params, "m", int, required=True)
    t = _param(cfg.params, "t", int, required=True)
    w = _witness(cfg, ctx, rep)
    t0 = time.perf_counter()
    out = naj_spot_check(w, m, t)
    rep.timings["check"] = time.perf_counter() - t0
    rep.rows = [out]
    rep.check("no_violations", not out["violations"], out["violations"])


def _random_poly(ctx: FieldCtx, rng: random.Random, terms: int = 3, length: int = 3) -> FreePoly:
    out = {}
    for _ in range(rng.randint(1, terms)):
        word = "".join(rng.choice("abx") for _ in range(rng.randint(0, length)))
        out[word] = ctx.add(out.get(word, 0), rng.randrange(1, ctx.order))
    return FreePoly(ctx, out)


def _cmd_ore_identities(cfg: ExperimentConfig, ctx: FieldCtx, rep: Report, rng: random.Random) -> None:
    samples = _param(cfg.params, "samples", int, 100)
    degree = _param(cfg.params, "degree", int, 3)
    ms = _int_range(cfg.params, "frobenius_m", [1, 2])
    der = free_derivation(ctx)

    def ore() -> OrePoly:
        return OrePoly([_random_poly(ctx, rng, 2, 2) for _ in range(rng.randint(1, degree + 1))], der)

    t0 = time.perf_counter()
    bad = []
    for _ in range(samples):
        u, v = _random_poly(ctx, rng), _random_poly(ctx, rng)
        if der(u * v) != der(u) * v + u * der(v):
            bad.append([str(u), str(v)])
    rep.check("leibniz", not bad, bad[:3])
    rep.timings["leibniz"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    bad_assoc, bad_eval = [], []
    for _ in range(samples):
        u, v, w = ore(), ore(), ore()
        if ore_mul(ore_mul(u, v), w) != ore_mul(u, ore_mul(v, w)):
            bad_assoc.append([str(u), str(v), str(w)])
        if ore_to_free(ore_mul(u, v)) != ore_to_free(u) * ore_to_free(v):
            bad_eval.append([str(u), str(v)])
    rep.check("associativity", not bad_assoc, bad_assoc[:3])
    rep.check("multiplicative_evaluation", not bad_eval, bad_eval[:3])
    rep.timings["associativity"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    for m in ms:
        bad = []
        for _ in range(max(1, samples // 10)):
            c = _random_poly(ctx, rng)
            if iterated_d(c, ctx.p**m) != frobenius_d_rhs(c, m):
                bad.append(str(c))
        rep.check(f"frobenius_m{m}", not bad, bad[:3])
    rep.timings["frobenius"] = time.perf_counter() - t0
    rep.rows = [{"check": a["name"], "passed": a["passed"]} for a in rep.assertions]


def _cmd_quasi_inverse(cfg: ExperimentConfig, ctx: FieldCtx, rep: Report, rng: random.Random) -> None:
    if "r" not in cfg.params:
        raise ConfigError("missing parameter 'r'")
    r = _const_matrices(ctx, {"r": [cfg.params["r"]]}, "r")[0]
    bound = _param(cfg.params, "bound", int, r.d + 1)
    s = rep.guarded("series_consistency", lambda: quasi_inverse_nilpotent(r, bound))
    if s is None:
        return
    rep.result = {"r": r.to_json(), "s": s.to_json()}
    rep.check("r+s+rs=0", not (r + s + r * s))
    rep.check("r+s+sr=0", not (r + s + s * r))
    rep.check("is_quasi_inverse", is_quasi_inverse(r, s))


HANDLERS: dict[str, tuple[Callable, Callable | None]] = {
    "assumption1-scan": (_cmd_assumption1_scan,
                         _x_degree_nodes(lambda params: max(_int_range(params, "n")) if params.get("vandermonde") else 0)),
    "assumption3-witness": (_cmd_assumption3_witness, None),
    "radical": (_cmd_radical, None),
    "pseudo-idempotent": (_cmd_pseudo_idempotent, None),
    "bz-sweep": (_cmd_bz_sweep, None),
    "naj-check": (_cmd_naj_check, None),
    "ore-identities": (_cmd_ore_identities, None),
    "quasi-inverse": (_cmd_quasi_inverse, None),
}


def run(cfg: ExperimentConfig) -> Report:
    """Execute one experiment. Configuration problems raise OrelabError."""
    handler, nodes = HANDLERS[cfg.command]
    ctx = _resolve_field(cfg, nodes(cfg) if nodes else None)
    rep = Report(cfg)
    rep.field = ctx.describe()
    rng = random.Random(cfg.seed)
    t0 = time.perf_counter()
    handler(cfg, ctx, rep, rng)
    rep.timings["total"] = time.perf_counter() - t0
    return rep


def write_report(rep: Report, out_dir: Path, stable: bool = False) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "report.json"
    path.write_text(json.dumps(rep.to_json(stable), indent=2, sort_keys=True) + "\n")
    if rep.csv_rows:
        cols: list[str] = []
        for row in rep.csv_rows:
            cols += [c for c in row if c not in cols]
        with open(out_dir / "rows.csv", "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=cols)
            writer.writeheader()
            for row in rep.csv_rows:
                writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in row.items()})
    return path


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orelab", description="Exact experiments over GF(p^k) for differential polynomial rings.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", required=True, help="JSON experiment config")
    ap.add_argument("--out", help=f"output directory (default ${OUT_ENV} or ./orelab-out)")
    ap.add_argument("--seed", type=int, help="override the config seed (unsigned 64-bit)")
    ap.add_argument("--stable-output", action="store_true", help="omit timings so reruns are byte-identical")
    return ap


def _config_error(msg: str) -> int:
    print(f"orelab: configuration error: {msg}", file=sys.stderr)
    return 2


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = ExperimentConfig.load(args.config)
        if cfg.command != args.command:
            raise ConfigError(f"config is for {cfg.command!r} but command {args.command!r} was given")
        if args.seed is not None:
            if not 0 <= args.seed < 2**64:
                raise ConfigError("--seed must be an unsigned 64-bit integer")
            cfg.seed = args.seed
        rep = run(cfg)
    except ParseError as exc:
        where = f" in {exc.source}" if exc.source else ""
        return _config_error(f"parse error{where} at line {exc.line}, column {exc.column}: {exc.bare}")
    except FieldTooSmallError as exc:
        return _config_error(f"{exc} (set field.k to {exc.min_k} or \"auto\")")
    except (ConfigError, HypothesisError, PreconditionError) as exc:
        return _config_error(str(exc))
    except OrelabError as exc:
        return _config_error(f"{type(exc).__name__}: {exc}")
    out_dir = Path(args.out or os.environ.get(OUT_ENV) or "orelab-out")
    path = write_report(rep, out_dir, args.stable_output)
    for a in rep.assertions:
        print(f"[{'PASS' if a['passed'] else 'FAIL'}] {a['name']}")
    print(f"report: {path}")
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())

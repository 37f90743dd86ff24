"""Seeded run matrix over instances x engines x seeds, with CSV and JSON reports."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from .baselines import BaselineConfig, run_hill_climb, run_sa
from .cnf import CnfFormula, generate_random_ksat, read_dimacs
from .eda import EdaConfig, RunResult, run_eda, schedule_from_dict

ENGINES = ("eda", "sa", "hc")
COLUMNS = (
    "instance_id", "engine", "seed", "solved", "iterations",
    "best_energy", "accepts", "rejects", "wall_ms",
)


class BenchPlanError(ValueError):
    def __init__(self, problems: list[str]):
        super().__init__("invalid bench plan:\n  " + "\n  ".join(problems))
        self.problems = problems


def cell_seed(plan_seed: int, instance_id: str, engine: str, index: int) -> int:
    """Stable per-cell seed; adding instances or engines never shifts existing cells."""
    key = f"{plan_seed}\x1f{instance_id}\x1f{engine}\x1f{index}".encode()
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "big")


@dataclass
class BenchPlan:
    """What to run.

    ``instances`` is either ``{"files": [...]}`` or
    ``{"generate": {"n", "m", "k", "count", "seed"}}``. ``engines`` maps
    engine name to config overrides (schedule dict, tabu_size, ...).
    """

    instances: dict
    engines: dict[str, dict] = field(default_factory=lambda: {e: {} for e in ENGINES})
    seeds_per_instance: int = 5
    max_iterations: int = 10_000
    seed: int = 0
    csv_path: str | None = None
    json_path: str | None = None
    workers: int = 1
    timing: bool = False
    base_dir: str = "."

    def validate(self) -> None:
        problems = []
        if not isinstance(self.instances, dict) or not (
            ("files" in self.instances) ^ ("generate" in self.instances)
        ):
            problems.append("instances: need exactly one of 'files' or 'generate'")
        elif "generate" in self.instances:
            g = self.instances["generate"]
            missing = [k for k in ("n", "m", "k", "count") if k not in g]
            if missing:
                problems.append(f"instances.generate: missing {', '.join(missing)}")
            elif not 1 <= g["k"] <= g["n"]:
                problems.append("instances.generate: need 1 <= k <= n")
            elif g["count"] < 0 or g["m"] < 0:
                problems.append("instances.generate: count and m must be nonnegative")
        elif not isinstance(self.instances["files"], list):
            problems.append("instances.files: must be a list of paths")
        for name in self.engines:
            if name not in ENGINES:
                problems.append(f"engines: unknown engine {name!r} (known: {', '.join(ENGINES)})")
        if self.seeds_per_instance < 0:
            problems.append("seeds_per_instance must be nonnegative")
        if self.max_iterations < 1:
            problems.append("max_iterations must be >= 1")
        if self.workers < 1:
            problems.append("workers must be >= 1")
        for name, overrides in self.engines.items():
            if name in ENGINES:
                try:
                    _make_config(name, overrides, self.max_iterations, 0)
                except (ValueError, TypeError, KeyError) as exc:
                    problems.append(f"engines.{name}: {exc}")
        if problems:
            raise BenchPlanError(problems)

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("base_dir")
        return d

    @classmethod
    def from_dict(cls, d: dict, base_dir: str = ".") -> "BenchPlan":
        known = {f for f in cls.__dataclass_fields__ if f != "base_dir"}
        unknown = set(d) - known
        if unknown:
            raise BenchPlanError([f"unknown plan key {k!r}" for k in sorted(unknown)])
        if "instances" not in d:
            raise BenchPlanError(["missing 'instances'"])
        plan = cls(**d, base_dir=base_dir)
        plan.validate()
        return plan

    @classmethod
    def load(cls, path: str | Path) -> "BenchPlan":
        path = Path(path)
        return cls.from_dict(json.loads(path.read_text()), base_dir=str(path.parent))


def _make_config(engine: str, overrides: dict, max_iterations: int, seed: int):
    o = dict(overrides)
    sched = o.pop("schedule", None)
    schedule = schedule_from_dict(sched, max_iterations) if sched is not None else None
    if engine == "eda":
        return EdaConfig(max_iterations=max_iterations, schedule=schedule, seed=seed, **o)
    return BaselineConfig(max_iterations=max_iterations, schedule=schedule, seed=seed, **o)


_RUNNERS = {"eda": run_eda, "sa": run_sa, "hc": run_hill_climb}


def _load_instances(plan: BenchPlan) -> tuple[list[tuple[str, CnfFormula]], list[dict]]:
    if "generate" in plan.instances:
        g = plan.instances["generate"]
        gseed = g.get("seed", plan.seed)
        out = []
        for j in range(g["count"]):
            iid = f"rand-n{g['n']}-m{g['m']}-k{g['k']}-s{gseed}-{j}"
            out.append((iid, generate_random_ksat(g["n"], g["m"], g["k"], cell_seed(gseed, iid, "gen", j))))
        return out, []
    loaded, errors = [], []
    for name in plan.instances["files"]:
        path = Path(plan.base_dir) / name
        try:
            loaded.append((str(name), read_dimacs(path)))
        except (OSError, ValueError) as exc:
            errors.append({"instance_id": str(name), "error": str(exc)})
    return loaded, errors


def _run_cell(args) -> dict:
    iid, formula, engine, overrides, max_iterations, seed, timing = args
    config = _make_config(engine, overrides, max_iterations, seed)
    t0 = time.perf_counter()
    res: RunResult = _RUNNERS[engine](formula, config)
    wall = (time.perf_counter() - t0) * 1000.0
    return {
        "instance_id": iid,
        "engine": engine,
        "seed": seed,
        "solved": res.solved,
        "iterations": res.iterations_used,
        "best_energy": res.best_energy,
        "accepts": res.accept_count,
        "rejects": res.reject_count,
        "wall_ms": round(wall, 3) if timing else None,
    }


def aggregate(rows: list[dict]) -> list[dict]:
    """Per (instance, engine) summary, recomputed from the rows."""
    groups: dict[tuple[str, str], list[dict]] = {}
    for r in rows:
        groups.setdefault((r["instance_id"], r["engine"]), []).append(r)
    out = []
    for (iid, engine), rs in groups.items():
        wins = sorted(r["iterations"] for r in rs if r["solved"])
        losses = [r["best_energy"] for r in rs if not r["solved"]]
        med = iqr = None
        if wins:
            med = float(statistics.median(wins))
            if len(wins) >= 2:
                q = statistics.quantiles(wins, n=4, method="inclusive")
                iqr = float(q[2] - q[0])
            else:
                iqr = 0.0
        out.append({
            "instance_id": iid,
            "engine": engine,
            "runs": len(rs),
            "success_rate": len(wins) / len(rs),
            "median_iterations": med,
            "iqr_iterations": iqr,
            "best_energy_failures": min(losses) if losses else None,
        })
    return out


@dataclass
class BenchReport:
    plan: dict
    rows: list[dict]
    aggregates: list[dict]
    errors: list[dict] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "BenchReport":
        return cls(**json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        for r in self.rows:
            w.writerow(["" if r[c] is None else r[c] for c in COLUMNS])
        return buf.getvalue()


def read_rows_csv(text: str) -> list[dict]:
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        rows.append({
            "instance_id": rec["instance_id"],
            "engine": rec["engine"],
            "seed": int(rec["seed"]),
            "solved": rec["solved"] == "True",
            "iterations": int(rec["iterations"]),
            "best_energy": int(rec["best_energy"]),
            "accepts": int(rec["accepts"]),
            "rejects": int(rec["rejects"]),
            "wall_ms": float(rec["wall_ms"]) if rec["wall_ms"] else None,
        })
    return rows


def run_bench(plan: BenchPlan) -> BenchReport:
    instances, errors = _load_instances(plan)
    cells = [
        (iid, formula, engine, plan.engines[engine], plan.max_iterations,
         cell_seed(plan.seed, iid, engine, s), plan.timing)
        for iid, formula in instances
        for engine in plan.engines
        for s in range(plan.seeds_per_instance)
    ]
    if plan.workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=plan.workers) as pool:
            rows = list(pool.map(_run_cell, cells, chunksize=max(1, len(cells) // (4 * plan.workers))))
    else:
        rows = [_run_cell(c) for c in cells]
    return BenchReport(plan.to_dict(), rows, aggregate(rows), errors)


def write_report(report: BenchReport, path: str | Path, fmt: str = "json") -> Path:
    """Write ``report`` as ``"csv"`` (one row per run) or ``"json"`` (plan, aggregates, rows)."""
    path = Path(path)
    if fmt == "csv":
        text = report.to_csv()
    elif fmt == "json":
        text = report.to_json()
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    path.write_text(text)
    return path

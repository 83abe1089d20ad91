"""Benchmark harness: generated corpora, timed solves, CSV rows and a summary.

A config is a JSON object; every key is optional::

    {"variants": ["rd", "ird"], "n": 200, "k": [4, 8, 12],
     "clique_size": [3, 8], "edge_prob": 0.3, "seeds": [1, 2, 3],
     "repetitions": 1, "threads": 1}

``n`` counts clique vertices; the modulator adds ``k`` more. An empty ``k``
list (or an empty config) yields no rows.
"""

from __future__ import annotations

import csv
import io
import json
import statistics
import time
from dataclasses import dataclass, field

from .generators import gen_cluster_plus_k
from .ird import solve_ird
from .rd import solve_rd

COLUMNS = ("variant", "n", "k", "seed", "rep", "value", "wall_ms", "guesses_enumerated", "scp_cells")
TIMING_NOTE = "# wall_ms is wall-clock time and varies between runs; all other columns are deterministic"
SOLVERS = {"rd": solve_rd, "ird": solve_ird}


class ConfigError(ValueError):
    pass


@dataclass
class BenchConfig:
    variants: list = field(default_factory=lambda: ["rd"])
    n: int = 100
    k: list = field(default_factory=list)
    clique_size: tuple = (3, 8)
    edge_prob: float = 0.3
    seeds: list = field(default_factory=lambda: [1])
    repetitions: int = 1
    threads: int = 1

    @classmethod
    def from_dict(cls, d: dict) -> BenchConfig:
        if not isinstance(d, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(d) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(**d)
        if isinstance(cfg.k, int):
            cfg.k = [cfg.k]
        if isinstance(cfg.seeds, int):
            cfg.seeds = [cfg.seeds]
        bad = [v for v in cfg.variants if v not in SOLVERS]
        if bad:
            raise ConfigError(f"unknown variants {bad}")
        try:
            lo, hi = cfg.clique_size
            cfg.clique_size = (int(lo), int(hi))
        except (TypeError, ValueError):
            raise ConfigError("clique_size must be a pair [lo, hi]") from None
        if cfg.repetitions < 1 or cfg.n < 0 or any(k < 0 for k in cfg.k):
            raise ConfigError("n, k and repetitions must be non-negative (repetitions >= 1)")
        if not 0.0 <= cfg.edge_prob <= 1.0:
            raise ConfigError("edge_prob must lie in [0, 1]")
        return cfg

    @classmethod
    def loads(cls, text: str) -> BenchConfig:
        try:
            d = json.loads(text) if text.strip() else {}
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from None
        try:
            return cls.from_dict(d)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None


def run_bench(cfg: BenchConfig) -> list[dict]:
    rows = []
    for variant in cfg.variants:
        solve = SOLVERS[variant]
        for k in cfg.k:
            for seed in cfg.seeds:
                g, s = gen_cluster_plus_k(0, cfg.clique_size, k, cfg.edge_prob, seed,
                                          total_clique_vertices=cfg.n)
                for rep in range(cfg.repetitions):
                    t0 = time.perf_counter()
                    sol = solve(g, s, threads=cfg.threads)
                    wall = (time.perf_counter() - t0) * 1000.0
                    rows.append({
                        "variant": variant, "n": g.n, "k": k, "seed": seed, "rep": rep,
                        "value": sol.value, "wall_ms": round(wall, 3),
                        "guesses_enumerated": sol.stats.get("guesses_enumerated", 0),
                        "scp_cells": sol.stats.get("scp_cells", 0),
                    })
    return rows


def to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    buf.write(TIMING_NOTE + "\n")
    w = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def read_csv(text: str) -> list[dict]:
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(lines))


def summarize(rows: list[dict]) -> str:
    if not rows:
        return "no benchmark rows"
    groups: dict = {}
    for r in rows:
        groups.setdefault((r["variant"], r["k"]), []).append(r)
    out = ["variant   k  runs  median_ms  guesses"]
    for (variant, k), rs in sorted(groups.items()):
        med = statistics.median(float(r["wall_ms"]) for r in rs)
        guesses = max(int(r["guesses_enumerated"]) for r in rs)
        out.append(f"{variant:<7} {k:>3} {len(rs):>5} {med:>10.1f} {guesses:>8}")
    return "\n".join(out)

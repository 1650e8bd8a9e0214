"""Build dispatch, seeded instance families, and size/stretch sweeps."""
from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional

from .bfs import SpannerResult, build_eabfs, build_vabfs, greedy_spanner
from .easpt import build_easpt, build_swap_3easpt
from .generate import ExperimentSpec, generate
from .graph import Graph, InputError
from .oracle import default_bounds, verify
from .structure import FtStructure, Kind, SelectionTrace
from .vaspt import build_vaspt, build_vertex_base_structure

CSV_HEADER = ["n", "m", "eps", "kind", "base_size", "added", "total", "max_stretch", "seconds"]

EPS_KINDS = {Kind.EASPT, Kind.VASPT}
SPANNER_KINDS = {Kind.EABFS, Kind.VABFS, Kind.SPANNER}


def build_structure(
    kind: Kind | str,
    g: Graph,
    s: int = 0,
    eps: Optional[float] = None,
    k: Optional[int] = None,
    spanner: Optional[SpannerResult] = None,
) -> tuple[FtStructure, list[SelectionTrace]]:
    kind = Kind(kind)
    if kind in EPS_KINDS and eps is None:
        raise InputError(f"{kind.value} needs --eps")
    if kind is Kind.SWAP3:
        return build_swap_3easpt(g, s), []
    if kind is Kind.EASPT:
        return build_easpt(g, s, eps)
    if kind is Kind.VERTEX_BASE:
        return build_vertex_base_structure(g, s), []
    if kind is Kind.VASPT:
        return build_vaspt(g, s, eps)
    if spanner is None:
        if k is None:
            raise InputError(f"{kind.value} needs --k or --spanner")
        spanner = greedy_spanner(g, k)
    if kind is Kind.SPANNER:
        return (
            FtStructure(
                kind=Kind.SPANNER,
                source=s,
                edges=spanner.edges,
                params={"alpha": spanner.alpha, "beta": spanner.beta, "sigma": spanner.sigma},
                base_size=0,
                added=spanner.sigma,
            ),
            [],
        )
    if kind is Kind.EABFS:
        return build_eabfs(g, s, spanner), []
    return build_vabfs(g, s, spanner), []


# ---------------------------------------------------------------- families


def weighted_family(count: int = 30, seed: int = 2014) -> list[ExperimentSpec]:
    """Connected G(n, m) graphs, n cycling over 25/50/100, m over 2n/3n/4n."""
    specs = []
    for i in range(count):
        n = (25, 50, 100)[i % 3]
        m = n * (2 + (i // 3) % 3)
        specs.append(ExperimentSpec(f"gnm({n},{m})", "uniform(1,100)", seed * 1000 + i))
    return specs


def unweighted_family(count: int = 20, seed: int = 2014) -> list[ExperimentSpec]:
    """Connected unit-weight G(n, p) graphs with average degree about 6-9."""
    specs = []
    for i in range(count):
        n = (30, 60, 100, 150)[i % 4]
        deg = (6, 9)[(i // 4) % 2]
        specs.append(ExperimentSpec(f"gnp({n},{deg / (n - 1):.6f})", "unit", seed * 1000 + i))
    return specs


# ---------------------------------------------------------------- sweeps


@dataclass(frozen=True)
class BenchRow:
    n: int
    m: int
    eps: str
    kind: str
    base_size: int
    added: int
    total: int
    max_stretch: float
    seconds: float
    failed: bool

    def cells(self) -> list:
        return [self.n, self.m, self.eps, self.kind, self.base_size, self.added, self.total, repr(self.max_stretch), f"{self.seconds:.4f}"]


def _cell(job) -> BenchRow:
    kind, spec, param = job
    g = generate(spec)
    start = time.perf_counter()
    if kind in EPS_KINDS:
        h, _ = build_structure(kind, g, 0, eps=param)
        label, eps_cell = kind.value, repr(param)
    elif kind in SPANNER_KINDS:
        h, _ = build_structure(kind, g, 0, k=param)
        label, eps_cell = f"{kind.value}(k={param})", ""
    else:
        h, _ = build_structure(kind, g, 0)
        label, eps_cell = kind.value, ""
    if kind is Kind.SPANNER:
        stretch, failed = float(2 * param - 1), False
    else:
        model, alpha, beta = default_bounds(h)
        rep = verify(g, h, 0, model, alpha, beta)
        stretch, failed = rep.global_max_stretch, not rep.ok
    seconds = time.perf_counter() - start
    return BenchRow(g.n, g.m, eps_cell, label, h.base_size, h.added, h.size, stretch, seconds, failed)


def bench(
    kind: Kind | str,
    sizes: Iterable[int],
    params: Iterable[float],
    seed: int = 0,
    repeat: int = 1,
    degree: float = 6.0,
    weights: Optional[str] = None,
    jobs: int = 1,
) -> list[BenchRow]:
    """One row per (n, param, repetition); ``params`` are eps values for the
    weighted kinds, spanner k values for the BFS kinds, and ignored otherwise."""
    kind = Kind(kind)
    if weights is None:
        weights = "uniform(1,100)" if kind not in SPANNER_KINDS else "unit"
    todo = []
    for n in sorted(sizes):
        if n < 3:
            raise InputError("bench sizes must be at least 3")
        for p in sorted(params):
            for r in range(repeat):
                spec = ExperimentSpec(f"gnp({n},{min(1.0, degree / (n - 1)):.6f})", weights, seed * 100003 + n * 101 + r)
                todo.append((kind, spec, int(p) if kind in SPANNER_KINDS else float(p)))
    # rows come back in job order, so the output is independent of scheduling
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_cell, todo))
    else:
        rows = [_cell(j) for j in todo]
    return rows


def rows_to_csv(rows: Iterable[BenchRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow(r.cells())
    return buf.getvalue()


def size_ratio(added: int, n: int, eps: float) -> float:
    """``added / (n ln n / eps^2)``: the constant the size bound hides."""
    return added * eps * eps / (n * math.log(n))

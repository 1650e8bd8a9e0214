"""Exact post-failure distances and stretch verification of structures.

Distances here come from scipy's csgraph routines, never from
:func:`ftspt.graph.dijkstra`, so a verdict does not share code with the
constructions it checks.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra as csgraph_dijkstra

from .graph import INF, NO_FAULT, REL_TOL, Fault, Graph, InputError, dijkstra
from .structure import FtStructure, Kind


class FaultModel(str, Enum):
    TREE_EDGES = "tree-edges"
    ALL_EDGES = "all-edges"
    VERTICES = "vertices"


class _Distances:
    """Distance oracle for one edge set of ``g`` under arbitrary single faults."""

    def __init__(self, g: Graph, eids: Optional[Iterable[int]] = None):
        ids = np.arange(g.m) if eids is None else np.array(sorted(eids), dtype=np.int64)
        self.n = g.n
        self.ids = ids
        if g.m:
            arr = np.array(g.edges, dtype=float).reshape(-1, 3)[ids] if len(ids) else np.zeros((0, 3))
        else:
            arr = np.zeros((0, 3))
        self.u = arr[:, 0].astype(np.int64)
        self.v = arr[:, 1].astype(np.int64)
        self.w = arr[:, 2]

    def from_source(self, s: int, fault: Fault = NO_FAULT) -> np.ndarray:
        keep = np.ones(len(self.ids), dtype=bool)
        if fault.kind == "edge":
            keep &= self.ids != fault.target
        elif fault.kind == "vertex":
            keep &= (self.u != fault.target) & (self.v != fault.target)
        mat = csr_matrix((self.w[keep], (self.u[keep], self.v[keep])), shape=(self.n, self.n))
        out = csgraph_dijkstra(mat, directed=False, indices=s)
        if fault.kind == "vertex":
            out[fault.target] = np.inf
        return out


def exact_failure_distances(g: Graph, s: int, fault: Fault = NO_FAULT) -> list[float]:
    """Distances from ``s`` in ``g - fault`` by full recomputation."""
    if not 0 <= s < g.n:
        raise InputError(f"source {s} not in graph")
    fault.validate(g, s)
    return [float(x) for x in _Distances(g).from_source(s, fault)]


def relaxation_distances(g: Graph, s: int, fault: Fault = NO_FAULT) -> list[float]:
    """Bellman-Ford style relaxation to a fixed point; slow, dependency-free."""
    dist = [INF] * g.n
    dist[s] = 0.0
    bad_v = fault.target if fault.kind == "vertex" else -1
    live = [
        (u, v, w)
        for i, (u, v, w) in enumerate(g.edges)
        if not (fault.kind == "edge" and i == fault.target) and bad_v not in (u, v)
    ]
    for _ in range(g.n):
        changed = False
        for u, v, w in live:
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
                changed = True
            if dist[v] + w < dist[u]:
                dist[u] = dist[v] + w
                changed = True
        if not changed:
            break
    return dist


# ---------------------------------------------------------------- verification


@dataclass(frozen=True)
class FaultStretch:
    fault: str
    max_stretch: float
    witness: Optional[int]
    additive_worst: float


@dataclass(frozen=True)
class Violation:
    fault: str
    vertex: int
    got: float
    bound: float


@dataclass
class StretchReport:
    per_fault: list[FaultStretch]
    global_max_stretch: float
    structure_size: int
    violations: list[Violation] = field(default_factory=list)
    alpha: float = 1.0
    beta: float = 0.0
    model: str = FaultModel.TREE_EDGES.value

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "model": self.model,
            "alpha": self.alpha,
            "beta": self.beta,
            "faults": [
                {
                    "fault": f.fault,
                    "max_stretch": _finite(f.max_stretch),
                    "witness": f.witness,
                    "additive_worst": _finite(f.additive_worst),
                }
                for f in self.per_fault
            ],
            "global_max_stretch": _finite(self.global_max_stretch),
            "size": self.structure_size,
            "violations": [
                {"fault": v.fault, "vertex": v.vertex, "got": _finite(v.got), "bound": v.bound}
                for v in self.violations
            ],
        }

    def dumps_json(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    def dumps_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["fault", "max_stretch", "witness", "additive_worst"])
        for f in self.per_fault:
            writer.writerow([f.fault, repr(f.max_stretch), "" if f.witness is None else f.witness, repr(f.additive_worst)])
        return buf.getvalue()


def _finite(x: float):
    # JSON has no infinity; an unreachable vertex reports null
    return None if math.isinf(x) or math.isnan(x) else x


def faults_for(g: Graph, s: int, model: FaultModel) -> list[Fault]:
    model = FaultModel(model)
    if model is FaultModel.TREE_EDGES:
        return sorted(Fault.edge(e) for e in dijkstra(g, s).edges())
    if model is FaultModel.ALL_EDGES:
        return [Fault.edge(e) for e in range(g.m)]
    return [Fault.vertex(u) for u in range(g.n) if u != s]


def verify(
    g: Graph,
    h: FtStructure | Iterable[int],
    s: int,
    fault_model: FaultModel | str = FaultModel.TREE_EDGES,
    alpha: float = 1.0,
    beta: float = 0.0,
) -> StretchReport:
    """Check ``d_{H-x}(t) <= alpha * d_{G-x}(t) + beta`` for every fault ``x``
    of the model and every ``t`` reachable from ``s`` in ``G - x``."""
    if not 0 <= s < g.n:
        raise InputError(f"source {s} not in graph")
    eids = frozenset(h.edges if isinstance(h, FtStructure) else h)
    if any(not 0 <= e < g.m for e in eids):
        raise InputError("structure is not a subgraph of the graph")
    model = FaultModel(fault_model)
    full = _Distances(g)
    sub = _Distances(g, eids)
    per_fault = []
    violations = []
    for fault in faults_for(g, s, model):
        label = fault.describe(g)
        dg = full.from_source(s, fault)
        dh = sub.from_source(s, fault)
        worst, witness, additive = 1.0, None, 0.0
        for t in range(g.n):
            if not np.isfinite(dg[t]):
                continue
            d_true, d_sub = float(dg[t]), float(dh[t])
            stretch = 1.0 if d_true == 0 else d_sub / d_true
            if witness is None or stretch > worst:
                worst, witness = max(stretch, 1.0), t
            additive = max(additive, d_sub - d_true)
            bound = alpha * d_true + beta
            if d_sub > bound + REL_TOL * bound:
                violations.append(Violation(label, t, d_sub, bound))
        per_fault.append(FaultStretch(label, worst, witness, additive))
    global_max = max((f.max_stretch for f in per_fault), default=1.0)
    return StretchReport(
        per_fault=per_fault,
        global_max_stretch=global_max,
        structure_size=len(eids),
        violations=violations,
        alpha=alpha,
        beta=beta,
        model=model.value,
    )


def default_bounds(h: FtStructure) -> tuple[FaultModel, float, float]:
    """Fault model and (alpha, beta) that a structure of this kind promises."""
    p = h.params
    if h.kind is Kind.SWAP3:
        return FaultModel.TREE_EDGES, 3.0, 0.0
    if h.kind is Kind.EASPT:
        return FaultModel.TREE_EDGES, 1.0 + float(p["eps"]), 0.0
    if h.kind is Kind.VERTEX_BASE:
        return FaultModel.VERTICES, 3.0, 0.0
    if h.kind is Kind.VASPT:
        return FaultModel.VERTICES, 1.0 + float(p["eps"]), 0.0
    if h.kind is Kind.EABFS:
        return FaultModel.TREE_EDGES, float(p["alpha"]), float(p["beta"])
    if h.kind is Kind.VABFS:
        return FaultModel.VERTICES, float(p["alpha"]), float(p["beta"])
    raise InputError(f"no fault-tolerance guarantee defined for {h.kind.value}")

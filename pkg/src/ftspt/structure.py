"""Fault-tolerant structures, selection traces, and their file formats."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional

from .graph import Graph, InputError, format_weight, parse_graph


class Kind(str, Enum):
    SWAP3 = "swap3"
    EASPT = "easpt"
    VERTEX_BASE = "vertex-base"
    VASPT = "vaspt"
    EABFS = "eabfs"
    VABFS = "vabfs"
    SPANNER = "spanner"


@dataclass(frozen=True)
class FtStructure:
    """A subgraph of ``G`` (edge ids) produced by one of the constructions.

    ``base_size`` counts the starting structure (swap structure, H0, BFS tree)
    and ``added`` the edges put on top of it.
    """

    kind: Kind
    source: int
    edges: frozenset[int]
    params: dict = field(default_factory=dict)
    base_size: int = 0
    added: int = 0
    warnings: tuple[str, ...] = ()
    details: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.edges)

    def edge_list(self, g: Graph) -> list[tuple[int, int, float]]:
        return [g.edges[i] for i in sorted(self.edges)]

    def sidecar(self) -> dict:
        return {
            "kind": self.kind.value,
            "source": self.source,
            "params": self.params,
            "base_size": self.base_size,
            "added": self.added,
            "size": self.size,
            "warnings": list(self.warnings),
        }


@dataclass(frozen=True)
class SelectionTrace:
    """One application of the harmonic edge selection to a bad vertex.

    ``z[0]`` is the tail of the crossing edge; ``z[1:]`` are the path
    vertices whose incoming path edge is missing from the base structure.
    The three ``dist_*`` arrays are aligned with ``z``: distance after the
    fault in G, in the structure before selection, and fault-free in G.
    """

    fault: str
    bad_vertex: int
    crossing_edge: tuple[int, int]
    z: tuple[int, ...]
    alpha: tuple[float, ...]
    gamma: tuple[float, ...]
    j: int
    eta: int
    added: tuple[tuple[int, int], ...]
    dist_fault: tuple[float, ...]
    dist_structure: tuple[float, ...]
    dist_base: tuple[float, ...]
    resolved: float = float("nan")
    in_down: bool = True

    @property
    def k(self) -> int:
        return len(self.z) - 1

    def alpha_prime(self) -> tuple[float, ...]:
        """Stretch bound of ``z_i`` (i > j) along the structure path to ``z_j``
        followed by the replacement path; entries ``i <= j`` repeat alpha."""
        dj_h = self.dist_structure[self.j]
        dj_g = self.dist_fault[self.j]
        out = list(self.alpha)
        for i in range(self.j + 1, len(self.z)):
            out[i] = (dj_h + self.dist_fault[i] - dj_g) / self.dist_fault[i]
        return tuple(out)

    def progress(self) -> float:
        ap = self.alpha_prime()
        return sum(self.alpha[i] - ap[i] for i in range(self.j + 1, len(self.z)))

    def to_json(self) -> dict:
        return asdict(self)


# ---------------------------------------------------------------- files


def _sidecar_path(path: Path) -> Path:
    return path.with_name(path.name + ".json")


def write_structure(g: Graph, h: FtStructure, path, traces: Optional[Iterable[SelectionTrace]] = None) -> None:
    """Edge list at ``path``, JSON sidecar at ``path.json``, and optionally the
    trace array at ``path.trace.json``."""
    path = Path(path)
    lines = [f"{u} {v} {format_weight(w)}" for u, v, w in h.edge_list(g)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    _sidecar_path(path).write_text(json.dumps(h.sidecar(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    if traces is not None:
        dump = [t.to_json() for t in traces]
        path.with_name(path.name + ".trace.json").write_text(
            json.dumps(dump, indent=1, sort_keys=True) + "\n", encoding="utf-8"
        )


def edges_in(g: Graph, text: str, name: str = "<string>") -> frozenset[int]:
    """Map an edge-list text onto edge ids of ``g``; every edge must exist there."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    if not any(lines):
        return frozenset()
    sub = parse_graph(text, name)
    if sub.n > g.n:
        raise InputError(f"{name}: vertex {sub.n - 1} does not exist in the graph")
    out = set()
    for u, v, _ in sub.edges:
        if not g.has_edge(u, v):
            raise InputError(f"{name}: ({u},{v}) is not an edge of the graph")
        out.add(g.edge_id(u, v))
    return frozenset(out)


def read_structure(g: Graph, path) -> FtStructure:
    path = Path(path)
    edges = edges_in(g, path.read_text(encoding="utf-8"), str(path))
    side = _sidecar_path(path)
    meta = json.loads(side.read_text(encoding="utf-8")) if side.exists() else {}
    try:
        kind = Kind(meta.get("kind", "spanner"))
    except ValueError:
        raise InputError(f"{side}: unknown structure kind {meta.get('kind')!r}") from None
    return FtStructure(
        kind=kind,
        source=int(meta.get("source", 0)),
        edges=edges,
        params=dict(meta.get("params", {})),
        base_size=int(meta.get("base_size", 0)),
        added=int(meta.get("added", 0)),
        warnings=tuple(meta.get("warnings", ())),
    )

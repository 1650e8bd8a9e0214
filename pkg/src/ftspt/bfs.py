"""Unweighted graphs: greedy spanners and spanner-augmented fault-tolerant BFS.

Both augmentations add, for each fault, the last edge of every replacement
path whose only down-set vertex is its endpoint, and take the union with a
supplied (alpha, beta)-spanner.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .graph import (
    Fault,
    Graph,
    InputError,
    ShortestPathTree,
    close_le,
    decrease_update,
    dijkstra,
    format_weight,
    require_connected,
    sssp_distances,
    tree_edges_in_preorder,
)
from .structure import FtStructure, Kind, edges_in
from .vaspt import build_vertex_base_structure, heavy_path_decomposition, partition_udo


@dataclass(frozen=True)
class SpannerResult:
    edges: frozenset[int]
    alpha: float
    beta: float

    @property
    def sigma(self) -> int:
        return len(self.edges)


def _require_unweighted(g: Graph) -> None:
    if not g.is_unweighted():
        raise InputError("this construction needs an unweighted graph (all weights 1)")


def _bounded_hops(g: Graph, edges: set[int], a: int, b: int, limit: int) -> bool:
    """Is ``b`` within ``limit`` hops of ``a`` using only ``edges``?"""
    if a == b:
        return True
    seen = {a}
    frontier = [a]
    for _ in range(limit):
        nxt = []
        for x in frontier:
            for y, _, eid in g.adj[x]:
                if eid in edges and y not in seen:
                    if y == b:
                        return True
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
        if not frontier:
            break
    return False


def greedy_spanner(g: Graph, k: int) -> SpannerResult:
    """Greedy (2k-1)-spanner: keep an edge iff its endpoints are farther than
    2k-1 apart in the edges kept so far.  Edges are scanned in id order."""
    _require_unweighted(g)
    if k < 1:
        raise InputError("k must be a positive integer")
    stretch = 2 * k - 1
    kept: set[int] = set()
    for eid, (u, v, _) in enumerate(g.edges):
        if not _bounded_hops(g, kept, u, v, stretch):
            kept.add(eid)
    return SpannerResult(frozenset(kept), float(stretch), 0.0)


def bfs_distances(g: Graph, s: int, edges: Optional[frozenset[int] | set[int]] = None) -> list[float]:
    dist = [float("inf")] * g.n
    dist[s] = 0.0
    queue = deque([s])
    while queue:
        x = queue.popleft()
        for y, _, eid in g.adj[x]:
            if edges is not None and eid not in edges:
                continue
            if dist[y] == float("inf"):
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def girth(g: Graph, edges: Optional[frozenset[int]] = None) -> float:
    """Length of the shortest cycle (inf for a forest), by BFS from every vertex."""
    best = float("inf")
    for r in range(g.n):
        dist = {r: 0}
        via = {r: -1}
        queue = deque([r])
        while queue:
            x = queue.popleft()
            for y, _, eid in g.adj[x]:
                if edges is not None and eid not in edges:
                    continue
                if y not in dist:
                    dist[y] = dist[x] + 1
                    via[y] = eid
                    queue.append(y)
                elif via[x] != eid and via[y] != eid:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


def build_eabfs(g: Graph, s: int, spanner: SpannerResult) -> FtStructure:
    _require_unweighted(g)
    require_connected(g, s)
    _check_spanner(g, spanner)
    tree = dijkstra(g, s)
    t_edges = tree.edges()
    added: set[int] = set()
    for e in tree_edges_in_preorder(tree):
        a, b = g.endpoints(e)
        v = b if tree.parent_edge[b] == e else a
        down = frozenset(tree.subtree(v))
        fault = Fault.edge(e)
        repl = dijkstra(g, s, fault, preferred_edges=t_edges)
        d_tree = sssp_distances(g, s, fault, t_edges)
        for t in repl.preorder:
            if t in down and _enters_at(repl, t, down) and not close_le(d_tree[t], repl.dist[t]):
                added.add(repl.parent_edge[t])
    augmented = t_edges | added
    return FtStructure(
        kind=Kind.EABFS,
        source=s,
        edges=frozenset(augmented | spanner.edges),
        params={"alpha": spanner.alpha, "beta": spanner.beta, "sigma": spanner.sigma},
        base_size=len(t_edges),
        added=len(augmented) - len(t_edges),
    )


def _enters_at(repl: ShortestPathTree, t: int, down: frozenset[int]) -> bool:
    """True when ``t`` is the only vertex of ``down`` on its replacement path."""
    return all(x not in down for x in repl.path_to(t)[:-1])


def augment_vertex_base(g: Graph, s: int, base: Optional[FtStructure] = None) -> FtStructure:
    """H0 plus, for each failed vertex, the last edge of every replacement path
    that meets the down set only at its endpoint and beats the current structure."""
    _require_unweighted(g)
    require_connected(g, s)
    tree = dijkstra(g, s)
    base = base or build_vertex_base_structure(g, s, tree)
    dec = heavy_path_decomposition(tree)
    t_edges = tree.edges()
    h = set(base.edges)
    for u in tree.preorder[1:]:
        if not tree.children(u):
            continue
        part = partition_udo(tree, dec, u)
        fault = Fault.vertex(u)
        repl = dijkstra(g, s, fault, preferred_edges=t_edges)
        dh = sssp_distances(g, s, fault, h)
        for t in repl.preorder:
            if t not in part.down or not _enters_at(repl, t, part.down):
                continue
            if not close_le(dh[t], repl.dist[t]):
                e = repl.parent_edge[t]
                h.add(e)
                decrease_update(g, dh, [e], fault, h)
    return FtStructure(
        kind=Kind.VERTEX_BASE,
        source=s,
        edges=frozenset(h),
        params={"augmented": True},
        base_size=base.size,
        added=len(h) - base.size,
        warnings=base.warnings,
        details=base.details,
    )


def build_vabfs(g: Graph, s: int, spanner: SpannerResult, base: Optional[FtStructure] = None) -> FtStructure:
    _check_spanner(g, spanner)
    aug = augment_vertex_base(g, s, base)
    return FtStructure(
        kind=Kind.VABFS,
        source=s,
        edges=aug.edges | spanner.edges,
        params={"alpha": spanner.alpha, "beta": spanner.beta, "sigma": spanner.sigma},
        base_size=aug.base_size,
        added=aug.added,
        warnings=aug.warnings,
        details={"augmented_base": sorted(aug.edges)},
    )


def check_down_set_exactness(g: Graph, s: int, u: int, augmented: Optional[FtStructure] = None) -> bool:
    """For every ``t`` whose replacement path avoiding ``u`` meets the down set
    of ``u``, the augmented base must be exact up to the first down vertex and
    from the last down vertex on."""
    if u == s:
        raise InputError("the source cannot fail")
    _require_unweighted(g)
    tree = dijkstra(g, s)
    dec = heavy_path_decomposition(tree)
    part = partition_udo(tree, dec, u)
    if not part.down:
        return True
    augmented = augmented or augment_vertex_base(g, s)
    h = augmented.edges
    fault = Fault.vertex(u)
    repl = dijkstra(g, s, fault, preferred_edges=tree.edges())
    dh = sssp_distances(g, s, fault, h)
    from_last: dict[int, list[float]] = {}
    for t in range(g.n):
        if t == u or not repl.reachable(t):
            continue
        path = repl.path_to(t)
        hits = [x for x in path if x in part.down]
        if not hits:
            continue
        x, y = hits[0], hits[-1]
        if not close_le(dh[x], repl.dist[x]):
            return False
        if y not in from_last:
            from_last[y] = sssp_distances(g, y, fault, h)
        if not close_le(from_last[y][t], repl.dist[t] - repl.dist[y]):
            return False
    return True


def _check_spanner(g: Graph, spanner: SpannerResult) -> None:
    if any(not 0 <= e < g.m for e in spanner.edges):
        raise InputError("spanner is not a subgraph of the graph")


# ---------------------------------------------------------------- spanner files


def write_spanner(g: Graph, sp: SpannerResult, path) -> None:
    path = Path(path)
    lines = [f"{u} {v} {format_weight(w)}" for u, v, w in (g.edges[i] for i in sorted(sp.edges))]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    meta = {"alpha": sp.alpha, "beta": sp.beta, "sigma": sp.sigma}
    path.with_name(path.name + ".json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def read_spanner(g: Graph, path, alpha: Optional[float] = None, beta: Optional[float] = None) -> SpannerResult:
    """Load an external spanner; explicit ``alpha``/``beta`` override the sidecar."""
    path = Path(path)
    edges = edges_in(g, path.read_text(encoding="utf-8"), str(path))
    side = path.with_name(path.name + ".json")
    meta = json.loads(side.read_text(encoding="utf-8")) if side.exists() else {}
    a = alpha if alpha is not None else meta.get("alpha")
    b = beta if beta is not None else meta.get("beta", 0.0)
    if a is None:
        raise InputError(f"{path}: spanner stretch unknown; pass --alpha/--beta or add a sidecar")
    return SpannerResult(edges, float(a), float(b))

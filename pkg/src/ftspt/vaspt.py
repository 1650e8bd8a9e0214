"""Vertex-fault-tolerant approximate shortest-path trees.

The base structure H0 is the SPT plus, for every vertex ``u`` of every heavy
path, the replacement-tree edges landing outside the down set of ``u`` and
one edge into the down set.  The (1+eps) structure then repeats the edge
algorithm's repair phases with vertex faults.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .easpt import _check_eps, _first_entry, repair_fault
from .graph import Fault, Graph, InputError, ShortestPathTree, dijkstra, require_connected
from .structure import FtStructure, Kind, SelectionTrace


@dataclass(frozen=True)
class PathDecomposition:
    paths: tuple[tuple[int, ...], ...]
    path_of: tuple[int, ...]  # -1 for vertices outside the tree

    def successor(self, u: int) -> Optional[int]:
        """Next vertex after ``u`` on its own path, or ``None`` at the path end."""
        p = self.paths[self.path_of[u]]
        i = p.index(u)
        return p[i + 1] if i + 1 < len(p) else None


@dataclass(frozen=True)
class VertexCutPartition:
    failed: int
    next_on_path: Optional[int]
    up: frozenset[int]
    down: frozenset[int]
    others: frozenset[int]


def heavy_path_decomposition(t: ShortestPathTree) -> PathDecomposition:
    """Split ``t`` into root-to-leaf paths that always follow the child with
    the largest subtree (smallest id on ties).  Paths are listed in preorder
    of their heads."""
    size = t.subtree_size
    path_of = [-1] * len(t.dist)
    heads = []
    for v in t.preorder:
        if v == t.source or heavy_child(t, t.parent[v]) != v:
            heads.append(v)
    paths = []
    for h in heads:
        path = [h]
        while True:
            c = heavy_child(t, path[-1])
            if c is None:
                break
            path.append(c)
        for x in path:
            path_of[x] = len(paths)
        paths.append(tuple(path))
    return PathDecomposition(tuple(paths), tuple(path_of))


def heavy_child(t: ShortestPathTree, v: int) -> Optional[int]:
    kids = t.children(v)
    if not kids:
        return None
    return min(kids, key=lambda c: (-t.subtree_size[c], c))


def partition_udo(t: ShortestPathTree, d: PathDecomposition, u: int) -> VertexCutPartition:
    """Up / down / others split of ``T - u``; empty down and others at a leaf."""
    if u == t.source:
        raise InputError("the source cannot fail")
    if not t.reachable(u):
        raise InputError(f"vertex {u} is not in the tree")
    below = set(t.subtree(u))
    tree_vertices = set(t.preorder)
    up = frozenset(tree_vertices - below)
    v = d.successor(u)
    if v is None:
        if t.children(u):
            raise AssertionError(f"decomposition path ends at inner vertex {u}")
        return VertexCutPartition(u, None, up, frozenset(), frozenset())
    down = frozenset(t.subtree(v))
    others = frozenset(below - down - {u})
    return VertexCutPartition(u, v, up, down, others)


def build_vertex_base_structure(
    g: Graph,
    s: int,
    tree: Optional[ShortestPathTree] = None,
) -> FtStructure:
    require_connected(g, s)
    tree = tree or dijkstra(g, s)
    dec = heavy_path_decomposition(tree)
    t_edges = tree.edges()
    h0 = set(t_edges)
    warnings = []
    budget = []
    for q in dec.paths:
        selected = set()
        for u in q:
            if u == s or not tree.children(u):
                continue
            part = partition_udo(tree, dec, u)
            repl = dijkstra(g, s, Fault.vertex(u), preferred_edges=t_edges)
            for y in range(g.n):
                e = repl.parent_edge[y]
                if e is not None and e not in t_edges and y not in part.down:
                    selected.add(e)
            v = part.next_on_path
            if repl.reachable(v):
                selected.add(_first_entry(g, repl, v, part.down))
            else:
                warnings.append(f"vertex {u}: successor {v} unreachable after failure")
        budget.append(
            {
                "head": q[0],
                "selected": len(selected),
                "subtree": tree.subtree_size[q[0]],
                "path": len(q),
            }
        )
        h0 |= selected
    return FtStructure(
        kind=Kind.VERTEX_BASE,
        source=s,
        edges=frozenset(h0),
        params={},
        base_size=len(t_edges),
        added=len(h0) - len(t_edges),
        warnings=tuple(warnings),
        details={"path_budget": budget, "paths": [list(q) for q in dec.paths]},
    )


def build_vaspt(
    g: Graph,
    s: int,
    eps: float,
    base: Optional[FtStructure] = None,
) -> tuple[FtStructure, list[SelectionTrace]]:
    """(1+eps)-VASPT on top of H0, processing failed vertices in preorder."""
    _check_eps(eps)
    require_connected(g, s)
    tree = dijkstra(g, s)
    base = base or build_vertex_base_structure(g, s, tree)
    dec = heavy_path_decomposition(tree)
    t_edges = tree.edges()
    structure = set(base.edges)
    traces: list[SelectionTrace] = []
    strays: list[tuple[int, int]] = []
    base_dist = list(tree.dist)
    for u in tree.preorder[1:]:
        if not tree.children(u):
            continue
        part = partition_udo(tree, dec, u)
        phase, outside = repair_fault(
            g, s, Fault.vertex(u), t_edges, base.edges, structure, part.down, base_dist, eps
        )
        traces.extend(phase)
        strays.extend((u, t) for t in outside)
        strays.extend((u, tr.bad_vertex) for tr in phase if not tr.in_down)
    warnings = list(base.warnings)
    warnings.extend(f"vertex {u}: bad vertex {t} outside the down set" for u, t in strays)
    h = FtStructure(
        kind=Kind.VASPT,
        source=s,
        edges=frozenset(structure),
        params={"eps": eps},
        base_size=base.size,
        added=len(structure) - base.size,
        warnings=tuple(warnings),
        details={"bad_outside_down": strays},
    )
    return h, traces

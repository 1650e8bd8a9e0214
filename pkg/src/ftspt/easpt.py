"""Edge-fault-tolerant approximate shortest-path trees.

``build_swap_3easpt`` adds to the SPT one swap edge per tree edge (the cut
edge on the replacement path to the lower endpoint), giving stretch 3 with
at most 2n - 2 edges.  ``build_easpt`` then revisits every tree-edge fault
and repairs each vertex stretched beyond ``1 + eps`` with the harmonic
selection in :func:`select_edges`.
"""
from __future__ import annotations

import logging
from dataclasses import replace
from typing import Container, Optional

from .graph import (
    Fault,
    Graph,
    InputError,
    ShortestPathTree,
    close_le,
    decrease_update,
    dijkstra,
    require_connected,
    sssp_distances,
    tree_edges_in_preorder,
)
from .structure import FtStructure, Kind, SelectionTrace

log = logging.getLogger(__name__)


class ContractViolation(RuntimeError):
    """An operation was called on a state its contract excludes."""


def harmonic(k: int) -> float:
    if k < 0:
        raise InputError("harmonic number of a negative index")
    return sum(1.0 / i for i in range(1, k + 1))


def harmonic_thresholds(k: int, eps: float) -> list[float]:
    """``gamma_i = 1 + eps * (H_k - H_{k-i}) / H_k`` for ``i = 0..k``."""
    if k == 0:
        return [1.0]
    hk = harmonic(k)
    h = [0.0]
    for i in range(1, k + 1):
        h.append(h[-1] + 1.0 / i)
    return [1.0 + eps * (hk - h[k - i]) / hk for i in range(k + 1)]


def split_index(alpha: list[float], gamma: list[float]) -> int:
    """Largest ``j < k`` with ``alpha_j <= gamma_j`` (0 if none qualifies)."""
    k = len(alpha) - 1
    for j in range(k - 1, -1, -1):
        if close_le(alpha[j], gamma[j]):
            return j
    return 0


def is_bad(d_structure: float, d_true: float, eps: float) -> bool:
    return not close_le(d_structure, (1.0 + eps) * d_true)


def _check_eps(eps: float) -> None:
    if not eps > 0:
        raise InputError(f"eps must be positive, got {eps}")


def build_swap_3easpt(g: Graph, s: int, tree: Optional[ShortestPathTree] = None) -> FtStructure:
    require_connected(g, s)
    tree = tree or dijkstra(g, s)
    t_edges = tree.edges()
    edges = set(t_edges)
    warnings = []
    for e in tree_edges_in_preorder(tree):
        a, b = g.endpoints(e)
        v = b if tree.parent_edge[b] == e else a
        below = set(tree.subtree(v))
        repl = dijkstra(g, s, Fault.edge(e), preferred_edges=t_edges)
        if not repl.reachable(v):
            warnings.append(f"no swap edge for tree edge ({a},{b}): {v} unreachable")
            continue
        edges.add(_first_entry(g, repl, v, below))
    for w in warnings:
        log.debug(w)
    return FtStructure(
        kind=Kind.SWAP3,
        source=s,
        edges=frozenset(edges),
        params={},
        base_size=len(t_edges),
        added=len(edges) - len(t_edges),
        warnings=tuple(warnings),
    )


def _first_entry(g: Graph, tree: ShortestPathTree, t: int, down: Container[int]) -> Optional[int]:
    """Edge id where the tree path to ``t`` first steps into ``down``."""
    path = tree.path_to(t)
    for i in range(1, len(path)):
        if path[i] in down and path[i - 1] not in down:
            return tree.parent_edge[path[i]]
    return None


def select_edges(
    g: Graph,
    structure: set[int],
    base: Container[int],
    replacement: ShortestPathTree,
    structure_dist: list[float],
    t: int,
    eps: float,
    down: Container[int],
    base_dist: list[float],
) -> Optional[SelectionTrace]:
    """Harmonic selection for the bad vertex ``t`` of ``replacement.fault``.

    ``structure`` is the current structure H' and ``structure_dist`` its
    distances after the fault; ``down`` is the side of the cut holding ``t``.
    Returns ``None`` when the replacement path never enters ``down``.
    Does not modify ``structure``; the edges to add are ``trace.added``.
    """
    d_true = replacement.dist
    if not replacement.reachable(t) or not is_bad(structure_dist[t], d_true[t], eps):
        raise ContractViolation(f"vertex {t} is not bad for {replacement.fault.describe(g)}")
    path = replacement.path_to(t)
    start = None
    for i in range(1, len(path)):
        if path[i] in down and path[i - 1] not in down:
            start = i - 1
            break
    if start is None:
        return None
    x = path[start]
    pe = replacement.parent_edge
    z = [x] + [y for y in path[start + 1:] if pe[y] not in base]
    k = len(z) - 1
    if k == 0 or z[-1] != t:
        raise ContractViolation(f"last edge into bad vertex {t} already in the structure")
    alpha = [structure_dist[y] / d_true[y] if d_true[y] else 1.0 for y in z]
    gamma = harmonic_thresholds(k, eps)
    j = split_index(alpha, gamma)
    added = tuple(pe[y] for y in z[j + 1:] if pe[y] not in structure)
    return SelectionTrace(
        fault=replacement.fault.describe(g),
        bad_vertex=t,
        crossing_edge=(x, path[start + 1]),
        z=tuple(z),
        alpha=tuple(alpha),
        gamma=tuple(gamma),
        j=j,
        eta=k - j,
        added=tuple(g.endpoints(e) for e in added),
        dist_fault=tuple(d_true[y] for y in z),
        dist_structure=tuple(structure_dist[y] for y in z),
        dist_base=tuple(base_dist[y] for y in z),
    )


def repair_fault(
    g: Graph,
    s: int,
    fault: Fault,
    tree_edges: frozenset[int],
    base: frozenset[int],
    structure: set[int],
    down: Container[int],
    base_dist: list[float],
    eps: float,
) -> tuple[list[SelectionTrace], list[int]]:
    """One phase of the incremental algorithm: scan the replacement tree of
    ``fault`` in preorder and fix every bad vertex.  Grows ``structure`` in
    place; returns the traces and the vertices that were bad outside ``down``.
    """
    repl = dijkstra(g, s, fault, preferred_edges=tree_edges)
    dh = sssp_distances(g, s, fault, structure)
    traces = []
    strays = []
    for t in repl.preorder:
        if not is_bad(dh[t], repl.dist[t], eps):
            continue
        trace = select_edges(g, structure, base, repl, dh, t, eps, down, base_dist)
        if trace is None:
            # outside the down set; the last path edge alone restores t
            strays.append(t)
            new = [repl.parent_edge[t]]
        else:
            new = [g.edge_id(a, b) for a, b in trace.added]
        structure.update(new)
        decrease_update(g, dh, new, fault, structure)
        if trace is not None:
            traces.append(_resolved(trace, dh[t], t in down))
    return traces, strays


def _resolved(trace: SelectionTrace, d_after: float, in_down: bool) -> SelectionTrace:
    return replace(trace, resolved=d_after, in_down=in_down)


def build_easpt(g: Graph, s: int, eps: float, swap: Optional[FtStructure] = None) -> tuple[FtStructure, list[SelectionTrace]]:
    """(1+eps)-EASPT: swap structure, then one repair phase per tree edge in preorder."""
    _check_eps(eps)
    require_connected(g, s)
    tree = dijkstra(g, s)
    swap = swap or build_swap_3easpt(g, s, tree)
    base = swap.edges
    t_edges = tree.edges()
    structure = set(base)
    traces: list[SelectionTrace] = []
    base_dist = list(tree.dist)
    for e in tree_edges_in_preorder(tree):
        a, b = g.endpoints(e)
        v = b if tree.parent_edge[b] == e else a
        down = frozenset(tree.subtree(v))
        phase, strays = repair_fault(g, s, Fault.edge(e), t_edges, base, structure, down, base_dist, eps)
        if strays:
            raise ContractViolation(f"bad vertices {strays} above the failed edge ({a},{b})")
        traces.extend(phase)
    h = FtStructure(
        kind=Kind.EASPT,
        source=s,
        edges=frozenset(structure),
        params={"eps": eps},
        base_size=len(base),
        added=len(structure) - len(base),
        warnings=swap.warnings,
    )
    return h, traces


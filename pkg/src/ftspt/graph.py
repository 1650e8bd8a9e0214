"""Weighted undirected graphs, faults, and tie-broken shortest-path trees.

Edges are identified by integer ids: the index of the edge in the graph's
sorted edge tuple.  Every construction in the package stores edge sets as
sets of these ids, so a subgraph ``H`` of ``G`` is just a set of ids of ``G``.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

INF = math.inf

# relative tolerance for distance equality (tie detection, stretch guards)
REL_TOL = 1e-9


class InputError(ValueError):
    """Malformed graph, fault, or parameter supplied by the caller."""


def close_le(a: float, b: float) -> bool:
    """``a <= b`` up to relative tolerance ``REL_TOL``."""
    return a <= b + REL_TOL * abs(b)


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    ``edges[i] == (u, v, w)`` with ``u < v`` and ``w > 0``; ``i`` is the edge id.
    """

    __slots__ = ("n", "edges", "adj", "_index", "meta")

    def __init__(self, n: int, edges: Iterable[tuple[int, int, float]], meta: Optional[dict] = None):
        if n < 1:
            raise InputError("graph needs at least one vertex")
        normalized = {}
        for u, v, w in edges:
            u, v, w = int(u), int(v), float(w)
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if not w > 0 or math.isinf(w):
                raise InputError(f"edge ({u},{v}) has non-positive or infinite weight {w}")
            key = (u, v) if u < v else (v, u)
            if key in normalized:
                raise InputError(f"parallel edge {key}")
            normalized[key] = w
        self.n = n
        self.edges = tuple((u, v, normalized[(u, v)]) for u, v in sorted(normalized))
        self._index = {(u, v): i for i, (u, v, _) in enumerate(self.edges)}
        adj: list[list[tuple[int, float, int]]] = [[] for _ in range(n)]
        for i, (u, v, w) in enumerate(self.edges):
            adj[u].append((v, w, i))
            adj[v].append((u, w, i))
        for row in adj:
            row.sort()
        self.adj = tuple(tuple(row) for row in adj)
        self.meta = dict(meta or {})

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertex_count(self) -> int:
        return self.n

    def edge_id(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        try:
            return self._index[key]
        except KeyError:
            raise InputError(f"({u},{v}) is not an edge") from None

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._index

    def endpoints(self, eid: int) -> tuple[int, int]:
        u, v, _ = self.edges[eid]
        return u, v

    def weight(self, eid: int) -> float:
        return self.edges[eid][2]

    def is_unweighted(self) -> bool:
        return all(w == 1.0 for _, _, w in self.edges)

    def subgraph(self, eids: Iterable[int]) -> "Graph":
        return Graph(self.n, (self.edges[i] for i in sorted(set(eids))))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True, order=True)
class Fault:
    """A single failure: nothing, one edge (by id), or one vertex."""

    kind: str = "none"
    target: int = -1

    def __post_init__(self):
        if self.kind not in ("none", "edge", "vertex"):
            raise InputError(f"unknown fault kind {self.kind!r}")

    @classmethod
    def edge(cls, eid: int) -> "Fault":
        return cls("edge", eid)

    @classmethod
    def vertex(cls, u: int) -> "Fault":
        return cls("vertex", u)

    def describe(self, g: Graph) -> str:
        if self.kind == "edge":
            u, v = g.endpoints(self.target)
            return f"edge({u},{v})"
        if self.kind == "vertex":
            return f"vertex({self.target})"
        return "none"

    def validate(self, g: Graph, s: int) -> None:
        if self.kind == "edge" and not 0 <= self.target < g.m:
            raise InputError(f"edge fault refers to missing edge id {self.target}")
        if self.kind == "vertex":
            if not 0 <= self.target < g.n:
                raise InputError(f"vertex fault refers to missing vertex {self.target}")
            if self.target == s:
                raise InputError("the source cannot fail")


NO_FAULT = Fault()


@dataclass(frozen=True)
class ShortestPathTree:
    source: int
    fault: Fault
    dist: tuple[float, ...]
    parent: tuple[Optional[int], ...]
    parent_edge: tuple[Optional[int], ...]
    preorder: tuple[int, ...]
    position: tuple[int, ...] = field(repr=False)
    subtree_size: tuple[int, ...] = field(repr=False)
    child_lists: tuple[tuple[int, ...], ...] = field(repr=False)

    def reachable(self, v: int) -> bool:
        return self.dist[v] < INF

    def edges(self) -> frozenset[int]:
        return frozenset(e for e in self.parent_edge if e is not None)

    def path_to(self, t: int) -> list[int]:
        """Vertices of the tree path ``s .. t``; empty if ``t`` is unreachable."""
        if not self.reachable(t):
            return []
        path = [t]
        while path[-1] != self.source:
            path.append(self.parent[path[-1]])
        path.reverse()
        return path

    def path_edges(self, t: int) -> list[int]:
        return [self.parent_edge[x] for x in self.path_to(t)[1:]]

    def subtree(self, v: int) -> tuple[int, ...]:
        """Vertices below (and including) ``v``, in preorder."""
        if not self.reachable(v):
            return ()
        i = self.position[v]
        return self.preorder[i:i + self.subtree_size[v]]

    def is_ancestor(self, a: int, b: int) -> bool:
        if not (self.reachable(a) and self.reachable(b)):
            return False
        pa, pb = self.position[a], self.position[b]
        return pa <= pb < pa + self.subtree_size[a]

    def children(self, v: int) -> list[int]:
        return list(self.child_lists[v])


def _banned(fault: Fault) -> tuple[int, int]:
    """(banned edge id, banned vertex) with -1 meaning none."""
    if fault.kind == "edge":
        return fault.target, -1
    if fault.kind == "vertex":
        return -1, fault.target
    return -1, -1


def sssp_distances(
    g: Graph,
    s: int,
    fault: Fault = NO_FAULT,
    edge_subset: Optional[set[int] | frozenset[int]] = None,
) -> list[float]:
    """Plain Dijkstra distances from ``s`` in ``g - fault``, optionally
    restricted to the edges in ``edge_subset``."""
    bad_e, bad_v = _banned(fault)
    dist = [INF] * g.n
    dist[s] = 0.0
    heap = [(0.0, s)]
    adj = g.adj
    while heap:
        d, x = heapq.heappop(heap)
        if d > dist[x]:
            continue
        for y, w, eid in adj[x]:
            if eid == bad_e or y == bad_v:
                continue
            if edge_subset is not None and eid not in edge_subset:
                continue
            nd = d + w
            if nd < dist[y]:
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return dist


def decrease_update(
    g: Graph,
    dist: list[float],
    new_edges: Iterable[int],
    fault: Fault,
    edge_subset: set[int] | frozenset[int],
) -> None:
    """Repair ``dist`` in place after ``new_edges`` were added to ``edge_subset``.

    Edge insertions only shorten distances, so a Dijkstra pass seeded with the
    improved endpoints restores exact distances.
    """
    bad_e, bad_v = _banned(fault)
    heap = []
    for eid in new_edges:
        if eid == bad_e:
            continue
        a, b, w = g.edges[eid]
        if a == bad_v or b == bad_v:
            continue
        if dist[a] + w < dist[b]:
            dist[b] = dist[a] + w
            heap.append((dist[b], b))
        elif dist[b] + w < dist[a]:
            dist[a] = dist[b] + w
            heap.append((dist[a], a))
    heapq.heapify(heap)
    adj = g.adj
    while heap:
        d, x = heapq.heappop(heap)
        if d > dist[x]:
            continue
        for y, w, eid in adj[x]:
            if eid == bad_e or y == bad_v or eid not in edge_subset:
                continue
            nd = d + w
            if nd < dist[y]:
                dist[y] = nd
                heapq.heappush(heap, (nd, y))


def _check_source(g: Graph, s: int) -> None:
    if not 0 <= s < g.n:
        raise InputError(f"source {s} not in graph with n={g.n}")


def dijkstra(
    g: Graph,
    s: int,
    fault: Fault = NO_FAULT,
    preferred_edges: Optional[set[int] | frozenset[int]] = None,
    edge_subset: Optional[set[int] | frozenset[int]] = None,
) -> ShortestPathTree:
    """Shortest-path tree of ``g - fault`` rooted at ``s`` with deterministic ties.

    Among the shortest parents of a vertex, one reached through an edge of
    ``preferred_edges`` wins; remaining ties go to the smallest parent id,
    then the smallest edge id.  Unreachable vertices get ``dist == inf``.
    """
    _check_source(g, s)
    fault.validate(g, s)
    preferred = preferred_edges or frozenset()
    dist = sssp_distances(g, s, fault, edge_subset)
    bad_e, bad_v = _banned(fault)

    parent: list[Optional[int]] = [None] * g.n
    parent_edge: list[Optional[int]] = [None] * g.n
    for y in range(g.n):
        dy = dist[y]
        if y == s or dy == INF:
            continue
        best = None
        for x, w, eid in g.adj[y]:
            if eid == bad_e or x == bad_v:
                continue
            if edge_subset is not None and eid not in edge_subset:
                continue
            # strict dist[x] < dy keeps the parent relation acyclic
            if dist[x] < dy and close_le(dist[x] + w, dy):
                key = (eid not in preferred, x, eid)
                if best is None or key < best:
                    best = key
        _, parent[y], parent_edge[y] = best
    order, pos, size, kids = _tree_order(g.n, s, parent)
    return ShortestPathTree(
        source=s,
        fault=fault,
        dist=tuple(dist),
        parent=tuple(parent),
        parent_edge=tuple(parent_edge),
        preorder=order,
        position=pos,
        subtree_size=size,
        child_lists=kids,
    )


def _tree_order(n: int, root: int, parent: list[Optional[int]]):
    children: list[list[int]] = [[] for _ in range(n)]
    for y in range(n):  # ascending, so child lists come out sorted
        if parent[y] is not None:
            children[parent[y]].append(y)
    order = []
    stack = [root]
    while stack:
        x = stack.pop()
        order.append(x)
        stack.extend(reversed(children[x]))
    pos = [-1] * n
    for i, x in enumerate(order):
        pos[x] = i
    size = [0] * n
    for x in reversed(order):
        size[x] = 1 + sum(size[c] for c in children[x])
    return tuple(order), tuple(pos), tuple(size), tuple(tuple(c) for c in children)


def preorder(t: ShortestPathTree) -> tuple[int, ...]:
    """Depth-first preorder of ``t``; children in ascending vertex id."""
    return t.preorder


def tree_edges_in_preorder(t: ShortestPathTree) -> list[int]:
    """Tree edge ids ordered by the preorder of their lower endpoint."""
    return [t.parent_edge[v] for v in t.preorder[1:]]


@dataclass(frozen=True)
class Cut:
    failed_edge: int
    upper: int
    lower: int
    up_set: frozenset[int]
    down_set: frozenset[int]
    cutset: frozenset[int]


def cut_of_edge(g: Graph, t: ShortestPathTree, eid: int) -> Cut:
    """Partition ``(U, D)`` induced by removing tree edge ``eid`` from ``t``,
    plus every graph edge crossing it."""
    if t.fault.kind != "none":
        raise InputError("cut_of_edge needs the fault-free tree")
    if not 0 <= eid < g.m:
        raise InputError(f"no edge with id {eid}")
    a, b = g.endpoints(eid)
    if t.parent_edge[b] == eid:
        upper, lower = a, b
    elif t.parent_edge[a] == eid:
        upper, lower = b, a
    else:
        raise InputError(f"edge ({a},{b}) is not a tree edge")
    down = frozenset(t.subtree(lower))
    up = frozenset(v for v in range(g.n) if v not in down)
    cutset = frozenset(i for i, (x, y, _) in enumerate(g.edges) if (x in down) != (y in down))
    return Cut(eid, upper, lower, up, down, cutset)


def faulted_view(g: Graph, fault: Fault) -> Graph:
    """Copy of ``g`` without the failed edge, or without every edge at the
    failed vertex.  Vertex ids are kept, so edge ids may shift."""
    bad_e, bad_v = _banned(fault)
    if fault.kind == "edge" and not 0 <= bad_e < g.m:
        raise InputError(f"no edge with id {bad_e}")
    kept = [
        (u, v, w)
        for i, (u, v, w) in enumerate(g.edges)
        if i != bad_e and u != bad_v and v != bad_v
    ]
    return Graph(g.n, kept, g.meta)


def is_connected(g: Graph, s: int = 0) -> bool:
    return all(d < INF for d in sssp_distances(g, s))


def require_connected(g: Graph, s: int) -> None:
    _check_source(g, s)
    if not is_connected(g, s):
        raise InputError("graph is not connected from the source")


# ---------------------------------------------------------------- file format


def format_weight(w: float) -> str:
    return str(int(w)) if float(w).is_integer() else repr(float(w))


def parse_graph(text: str, name: str = "<string>") -> Graph:
    """Parse ``u v [w]`` lines; ``#`` starts a comment; n = max id + 1."""
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise InputError(f"{name}:{lineno}: expected 'u v [w]', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
            w = float(parts[2]) if len(parts) == 3 else 1.0
        except ValueError:
            raise InputError(f"{name}:{lineno}: cannot parse {raw!r}") from None
        if u < 0 or v < 0:
            raise InputError(f"{name}:{lineno}: negative vertex id")
        if not w > 0:
            raise InputError(f"{name}:{lineno}: weight must be strictly positive")
        edges.append((u, v, w))
    if not edges:
        raise InputError(f"{name}: no edges")
    n = 1 + max(max(u, v) for u, v, _ in edges)
    try:
        return Graph(n, edges)
    except InputError as exc:
        raise InputError(f"{name}: {exc}") from None


def format_graph(g: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.extend(f"{u} {v} {format_weight(w)}" for u, v, w in g.edges)
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read(), str(path))


def write_graph(g: Graph, path, comments: Iterable[str] = ()) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph(g, comments))

import math

import pytest
from hypothesis import given, settings, strategies as st

from checks import trace_problems
from conftest import A, B, C, S, connected_graphs, cycle_graph, path_graph
from ftspt.easpt import (
    ContractViolation,
    build_easpt,
    build_swap_3easpt,
    harmonic,
    harmonic_thresholds,
    is_bad,
    select_edges,
    split_index,
)
from ftspt.graph import Fault, Graph, InputError, dijkstra, sssp_distances
from ftspt.oracle import FaultModel, verify
from ftspt.structure import Kind


def test_harmonic():
    assert harmonic(0) == 0 and harmonic(1) == 1 and harmonic(2) == 1.5
    with pytest.raises(InputError):
        harmonic(-1)


def test_thresholds():
    assert harmonic_thresholds(2, 0.5) == pytest.approx([1, 7 / 6, 1.5])
    assert harmonic_thresholds(0, 0.5) == [1.0]
    g = harmonic_thresholds(7, 0.3)
    assert g[0] == 1 and g[-1] == pytest.approx(1.3) and g == sorted(g)


def test_split_index():
    gamma = harmonic_thresholds(2, 0.5)
    j = split_index([1, 1.2, 1.6], gamma)
    assert (j, 2 - j) == (0, 2)
    j = split_index([1, 1.1, 1.6], gamma)
    assert (j, 2 - j) == (1, 1)


def test_bad_test_uses_relative_tolerance():
    assert not is_bad(1.1 * (1 + 1e-12), 1.0, 0.1)
    assert is_bad(1.2, 1.0, 0.1)


def test_swap_on_g1(g1):
    h = build_swap_3easpt(g1, S)
    assert h.kind is Kind.SWAP3
    assert h.edges == dijkstra(g1, S).edges() | {g1.edge_id(S, C)}
    assert h.size == 4 and h.base_size == 3 and h.added == 1 and not h.warnings


def test_swap_on_a_tree_warns_per_edge():
    g = path_graph(4)
    h = build_swap_3easpt(g, 0)
    assert h.edges == frozenset(range(g.m)) and len(h.warnings) == 3


def test_swap_on_cycle():
    for n in (3, 4, 7, 10):
        h = build_swap_3easpt(cycle_graph(n), 0)
        assert h.size == n


def test_select_edges_picks_missing_suffix():
    # chain 0-1-2-3 plus 0-4 and a detour 4-3; losing (0,1) routes 3 via 4
    g = Graph(5, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 4, 1), (3, 4, 2.5)])
    tree = dijkstra(g, 0)
    base = tree.edges()
    fault = Fault.edge(g.edge_id(0, 1))
    repl = dijkstra(g, 0, fault, preferred_edges=base)
    assert repl.path_to(1) == [0, 4, 3, 2, 1]
    dh = sssp_distances(g, 0, fault, base)
    down = {1, 2, 3}
    tr = select_edges(g, set(base), base, repl, dh, 3, 0.5, down, list(tree.dist))
    assert tr.z == (4, 3) and tr.crossing_edge == (4, 3)
    assert tr.alpha[0] == 1 and math.isinf(tr.alpha[1])
    assert (tr.j, tr.eta) == (0, 1) and tr.added == ((3, 4),)
    with pytest.raises(ContractViolation):
        select_edges(g, set(base), base, repl, dh, 4, 0.5, down, list(tree.dist))
    with pytest.raises(ContractViolation):
        # last edge into 1 is a base edge, so 1 cannot be bad in a proper run
        select_edges(g, set(base), base, repl, dh, 1, 0.5, down, list(tree.dist))


def test_easpt_on_g1(g1):
    h, traces = build_easpt(g1, S, 0.1)
    assert h.edges == build_swap_3easpt(g1, S).edges and traces == []
    assert verify(g1, h, S, FaultModel.TREE_EDGES, 1.1).global_max_stretch == 1.0


def test_easpt_rejects_bad_eps(g1):
    for eps in (0, -1, float("nan")):
        with pytest.raises(InputError):
            build_easpt(g1, S, eps)


def test_easpt_repairs_a_stretched_fault():
    # T = 0-2, 0-3, 3-1, 1-4, 1-5; losing (0,3) reroutes the subtree of 3
    # through 2.  Swap edges: (2,3) for (0,2) and (0,3), (3,4) for (1,3) and
    # (1,4), (4,5) for (1,5).  After losing (0,3) the swap structure gives
    # d(4) = 18 (via 2-3-1-4) against 13 via (2,4).
    g = Graph(6, [(0, 2, 5), (0, 3, 5), (1, 3, 2), (1, 4, 1), (1, 5, 8), (2, 3, 10), (2, 4, 8), (3, 4, 4), (4, 5, 7)])
    tree = dijkstra(g, 0)
    assert tree.parent == (None, 3, 0, 0, 1, 1)
    swap = build_swap_3easpt(g, 0)
    assert swap.edges == tree.edges() | {g.edge_id(2, 3), g.edge_id(3, 4), g.edge_id(4, 5)}
    h, traces = build_easpt(g, 0, 0.1)
    assert len(traces) == 1
    tr = traces[0]
    assert (tr.fault, tr.bad_vertex, tr.z, tr.j, tr.added) == ("edge(0,3)", 4, (2, 4), 0, ((2, 4),))
    assert tr.alpha == pytest.approx((1.0, 18 / 13))
    assert tr.resolved == 13
    assert h.edges == swap.edges | {g.edge_id(2, 4)} and h.added == 1
    assert verify(g, h, 0, FaultModel.TREE_EDGES, 1.1).ok
    assert trace_problems(tr, 0.1, g.n) == []


def test_easpt_two_step_selection():
    g = Graph(7, [(0, 1, 9), (0, 6, 4), (1, 2, 8), (1, 5, 9), (2, 3, 5), (2, 4, 6), (2, 5, 5), (2, 6, 9),
                  (3, 5, 8), (3, 6, 7), (4, 5, 8), (5, 6, 1)])
    h, traces = build_easpt(g, 0, 0.1)
    assert [(tr.bad_vertex, tr.z, tr.j, tr.added) for tr in traces] == [
        (2, (1, 2), 0, ((1, 2),)),
        (3, (1, 2, 3), 1, ((2, 3),)),
    ]
    assert verify(g, h, 0, FaultModel.TREE_EDGES, 1.1).ok
    for tr in traces:
        assert trace_problems(tr, 0.1, g.n) == []


@settings(max_examples=40, deadline=None)
@given(connected_graphs(min_n=3, max_n=12, integer=False), st.sampled_from([0.05, 0.1, 0.3, 1.0]))
def test_easpt_random(g, eps):
    swap = build_swap_3easpt(g, 0)
    assert swap.size <= 2 * g.n - 2
    assert verify(g, swap, 0, FaultModel.TREE_EDGES, 3.0).ok
    h, traces = build_easpt(g, 0, eps, swap)
    assert verify(g, h, 0, FaultModel.TREE_EDGES, 1 + eps).ok
    assert h.size == h.base_size + h.added and h.edges >= swap.edges
    for tr in traces:
        assert trace_problems(tr, eps, g.n) == []


@settings(max_examples=30, deadline=None)
@given(connected_graphs(min_n=3, max_n=12), st.sampled_from([2.0, 3.0, 10.0]))
def test_large_eps_needs_no_repairs(g, eps):
    h, traces = build_easpt(g, 0, eps)
    assert traces == [] and h.edges == build_swap_3easpt(g, 0).edges

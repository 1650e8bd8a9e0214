"""Invariant checks shared by the unit and acceptance tests.

Each checker returns a list of human-readable problems; empty means pass.
"""
from ftspt.easpt import harmonic, harmonic_thresholds
from ftspt.graph import Fault, dijkstra, sssp_distances
from ftspt.vaspt import heavy_path_decomposition, partition_udo

TOL = 1e-9


def le(a, b):
    return a <= b + TOL * max(1.0, abs(b))


def trace_problems(tr, eps, n, edge_case=True):
    out = []
    k = tr.k
    a, gm = tr.alpha, tr.gamma
    tag = f"{tr.fault} t={tr.bad_vertex}"
    if k < 1 or tr.z[-1] != tr.bad_vertex:
        out.append(f"{tag}: z does not end at the bad vertex")
    if edge_case and abs(a[0] - 1.0) > TOL:
        out.append(f"{tag}: alpha_0={a[0]}")
    for i in range(1, k):
        if not le(a[i], 1 + eps):
            out.append(f"{tag}: alpha_{i}={a[i]} above 1+eps before the bad vertex")
    if le(a[k], 1 + eps):
        out.append(f"{tag}: alpha_k={a[k]} is not bad")
    ref = harmonic_thresholds(k, eps)
    if any(abs(x - y) > TOL for x, y in zip(gm, ref)) or len(gm) != k + 1:
        out.append(f"{tag}: gamma differs from the harmonic formula")
    if abs(gm[0] - 1) > TOL or abs(gm[-1] - (1 + eps)) > TOL:
        out.append(f"{tag}: gamma endpoints {gm[0]}, {gm[-1]}")
    if any(gm[i] > gm[i + 1] + TOL for i in range(k)):
        out.append(f"{tag}: gamma not monotone")
    j = tr.j
    if not (0 <= j < k) or tr.eta != k - j or tr.eta < 1:
        out.append(f"{tag}: j={j} eta={tr.eta} k={k}")
    if not le(a[j], gm[j]) and j > 0:
        out.append(f"{tag}: alpha_j above gamma_j")
    for i in range(j + 1, k):
        if le(a[i], gm[i]):
            out.append(f"{tag}: j={j} is not the largest qualifying index ({i})")
    if len(tr.added) > tr.eta:
        out.append(f"{tag}: {len(tr.added)} new edges for eta={tr.eta}")
    ap = tr.alpha_prime()
    for i in range(j + 1, k + 1):
        if not (le(ap[i], a[j]) and a[j] < a[i]):
            out.append(f"{tag}: ordering fails at i={i}: alpha'={ap[i]} alpha_j={a[j]} alpha_i={a[i]}")
    if not le(eps / harmonic(n) * len(tr.added), tr.progress()):
        out.append(f"{tag}: progress {tr.progress()} below eps/H_n * {len(tr.added)}")
    for i in range(j + 1, k + 1):
        if not tr.dist_fault[i] < (2 / eps) * tr.dist_base[i] * (1 + TOL):
            out.append(f"{tag}: z={tr.z[i]} detour {tr.dist_fault[i]} vs base {tr.dist_base[i]}")
    if not le(tr.resolved, (1 + eps) * tr.dist_fault[-1]):
        out.append(f"{tag}: still bad after selection ({tr.resolved})")
    return out


def decomposition_problems(tree, dec):
    out = []
    seen = [x for p in dec.paths for x in p]
    if sorted(seen) != sorted(tree.preorder):
        out.append("paths do not partition the tree")
    for p in dec.paths:
        for a, b in zip(p, p[1:]):
            if tree.parent[b] != a:
                out.append(f"path {p} is not a tree path")
        if tree.children(p[-1]):
            out.append(f"path {p} stops above a leaf")
        on_path = set(p)
        limit = tree.subtree_size[p[0]] / 2
        for x in p:
            for c in tree.children(x):
                if c not in on_path and tree.subtree_size[c] > limit:
                    out.append(f"subtree of {c} hangs off {p} with size {tree.subtree_size[c]} > {limit}")
    return out


def vertex_base_problems(g, s, h0):
    """Successor of each failed vertex is exact in H0 and its down set is 3-stretched."""
    out = []
    tree = dijkstra(g, s)
    dec = heavy_path_decomposition(tree)
    for u in tree.preorder[1:]:
        part = partition_udo(tree, dec, u)
        if part.next_on_path is None:
            continue
        f = Fault.vertex(u)
        dg = sssp_distances(g, s, f)
        dh = sssp_distances(g, s, f, h0.edges)
        v = part.next_on_path
        if dg[v] < float("inf") and not abs(dh[v] - dg[v]) <= TOL * dg[v]:
            out.append(f"vertex {u}: successor {v} has {dh[v]} vs {dg[v]}")
        for z in part.down:
            if dg[z] < float("inf") and not le(dh[z], 3 * dg[z]):
                out.append(f"vertex {u}: {z} in down set has {dh[z]} > 3 * {dg[z]}")
    return out


def path_budget_problems(h0):
    return [
        f"path headed at {p['head']}: {p['selected']} > {p['subtree']} + {p['path']}"
        for p in h0.details["path_budget"]
        if p["selected"] > p["subtree"] + p["path"]
    ]

"""Seeded graph generators.

Generator and weight models are written the way they appear on the command
line: ``gnp(50,0.2)``, ``gnm(50,150)``, ``grid(4,5)``, ``cycle(8)``,
``file(path)``; ``unit`` or ``uniform(1,100)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, InputError, is_connected, read_graph

MAX_ATTEMPTS = 100
WEIGHT_DECIMALS = 4


class GenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class ExperimentSpec:
    generator: str
    weights: str = "unit"
    seed: int = 0
    structure: str = "easpt"
    params: dict = field(default_factory=dict)
    repeat: int = 1


_CALL = re.compile(r"^\s*([a-z]+)\s*(?:\((.*)\))?\s*$")


def parse_call(text: str) -> tuple[str, list[str]]:
    m = _CALL.match(text)
    if not m:
        raise InputError(f"cannot parse {text!r}; expected name(arg,...)")
    name, args = m.group(1), m.group(2)
    if args is None or not args.strip():
        return name, []
    return name, [a.strip() for a in args.split(",")]


def _weights(model: str):
    name, args = parse_call(model)
    if name == "unit" and not args:
        return None
    if name == "uniform" and len(args) == 2:
        lo, hi = float(args[0]), float(args[1])
        if not 0 < lo <= hi:
            raise InputError(f"uniform weights need 0 < lo <= hi, got {model!r}")
        return lo, hi
    raise InputError(f"unknown weight model {model!r}")


def _apply_weights(pairs, bounds, rng) -> list[tuple[int, int, float]]:
    if bounds is None:
        return [(u, v, 1.0) for u, v in pairs]
    lo, hi = bounds
    ws = np.round(rng.uniform(lo, hi, size=len(pairs)), WEIGHT_DECIMALS)
    ws = np.maximum(ws, lo)
    return [(u, v, float(w)) for (u, v), w in zip(pairs, ws)]


def _gnp(n: int, p: float, rng) -> list[tuple[int, int]]:
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(len(iu)) < p
    return list(zip(iu[keep].tolist(), ju[keep].tolist()))


def _gnm(n: int, m: int, rng) -> list[tuple[int, int]]:
    iu, ju = np.triu_indices(n, k=1)
    if m > len(iu):
        raise InputError(f"gnm: m={m} exceeds n(n-1)/2")
    pick = np.sort(rng.choice(len(iu), size=m, replace=False))
    return list(zip(iu[pick].tolist(), ju[pick].tolist()))


def _grid(rows: int, cols: int) -> list[tuple[int, int]]:
    pairs = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                pairs.append((v, v + 1))
            if i + 1 < rows:
                pairs.append((v, v + cols))
    return pairs


def generate(spec: ExperimentSpec) -> Graph:
    """Build the graph described by ``spec``; random models retry with seeds
    derived from ``spec.seed`` until the graph is connected."""
    name, args = parse_call(spec.generator)
    bounds = _weights(spec.weights)
    meta = {"generator": spec.generator, "weights": spec.weights, "seed": spec.seed}
    try:
        if name == "file":
            if len(args) != 1:
                raise InputError("file(path) takes one argument")
            g = read_graph(args[0])
            return Graph(g.n, g.edges, meta)
        if name in ("gnp", "gnm"):
            n = int(args[0])
            for attempt in range(MAX_ATTEMPTS):
                rng = np.random.default_rng([spec.seed, attempt])
                pairs = _gnp(n, float(args[1]), rng) if name == "gnp" else _gnm(n, int(args[1]), rng)
                if pairs:
                    g = Graph(n, _apply_weights(pairs, bounds, rng))
                    if is_connected(g):
                        return Graph(n, g.edges, {**meta, "attempts": attempt + 1})
            raise GenerationError(f"{spec.generator}: no connected sample in {MAX_ATTEMPTS} attempts")
        rng = np.random.default_rng([spec.seed, 0])
        if name == "grid":
            rows, cols = int(args[0]), int(args[1])
            n, pairs = rows * cols, _grid(rows, cols)
        elif name == "cycle":
            n = int(args[0])
            if n < 3:
                raise InputError("cycle needs n >= 3")
            pairs = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
        else:
            raise InputError(f"unknown generator {name!r}")
        return Graph(n, _apply_weights(pairs, bounds, rng), {**meta, "attempts": 1})
    except (IndexError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"bad generator arguments in {spec.generator!r}: {exc}") from None


def header_lines(g: Graph) -> list[str]:
    return [f"{k}={g.meta[k]}" for k in sorted(g.meta)]

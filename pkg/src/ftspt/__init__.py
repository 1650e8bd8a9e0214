"""Sparse fault-tolerant approximate shortest-path structures with an exact
failure oracle for checking them."""
from .bench import build_structure
from .bfs import SpannerResult, augment_vertex_base, build_eabfs, build_vabfs, check_down_set_exactness, greedy_spanner
from .easpt import ContractViolation, build_easpt, build_swap_3easpt, harmonic_thresholds, select_edges, split_index
from .generate import ExperimentSpec, GenerationError, generate
from .graph import (
    NO_FAULT,
    Fault,
    Graph,
    InputError,
    ShortestPathTree,
    cut_of_edge,
    dijkstra,
    parse_graph,
    preorder,
    read_graph,
    write_graph,
)
from .oracle import FaultModel, StretchReport, exact_failure_distances, relaxation_distances, verify
from .structure import FtStructure, Kind, SelectionTrace, read_structure, write_structure
from .vaspt import build_vaspt, build_vertex_base_structure, heavy_path_decomposition, partition_udo

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

"""Exact and approximate minimum rooted and global cuts in weighted digraphs."""
from .config import DEFAULT_SEED, DriverConfig, SparsifyConstants
from .driver import DriverStats, approx_s_mincut, exact_s_mincut, global_mincut
from .graph import (
    CutResult,
    GraphError,
    VertexCutResult,
    VertexWeightedDigraph,
    WeightedDigraph,
    build_graph,
    build_vertex_graph,
    in_cut_value,
    vertex_in_cut_value,
)
from .io import FormatError, read_graph, write_graph
from .maxflow import max_flow, reference_s_mincut
from .onerespect import min_one_respecting_cut
from .packing import min_cost_arborescence, pack_arborescences, sample_arborescences
from .rng import make_rng
from .sparsify import partial_sparsify
from .vertex import approx_global_vertex_cut, approx_rooted_vertex_cut

__all__ = [
    "DEFAULT_SEED",
    "CutResult",
    "DriverConfig",
    "DriverStats",
    "FormatError",
    "GraphError",
    "SparsifyConstants",
    "VertexCutResult",
    "VertexWeightedDigraph",
    "WeightedDigraph",
    "approx_global_vertex_cut",
    "approx_rooted_vertex_cut",
    "approx_s_mincut",
    "build_graph",
    "build_vertex_graph",
    "exact_s_mincut",
    "global_mincut",
    "in_cut_value",
    "make_rng",
    "max_flow",
    "min_cost_arborescence",
    "min_one_respecting_cut",
    "pack_arborescences",
    "partial_sparsify",
    "read_graph",
    "reference_s_mincut",
    "sample_arborescences",
    "vertex_in_cut_value",
    "write_graph",
]

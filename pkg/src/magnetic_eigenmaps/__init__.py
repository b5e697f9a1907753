"""Magnetic eigenmaps: torus embeddings of directed graphs from magnetic Laplacian phases."""

__version__ = "0.1.0"

from .diagnostics import (
    bound_ledger,
    cut_function,
    diagnostic_report,
    frustration,
    gauge_transform,
    holonomies,
    partition_energy,
    recover_potential,
    synchronize,
)
from .eigensolver import EigenSystem, eig_dense, eig_iterative, rayleigh_quotient
from .embedding import TorusEmbedding, circular_cluster_score, phases, torus_distance
from .estimator import DiffusionMaps, MagneticEigenmaps
from .generators import gen_cluster_hubs, gen_fixture, gen_flow_groups
from .graph import DirectedGraph, SpanningTree, SymmetrizedView, is_connected, spanning_tree, symmetrize, tree_path
from .io import read_edge_list, read_gml, write_edge_list
from .laplacian import CHARGE_PRESETS, MagneticLaplacian, build_magnetic_laplacian, normalize, transporter

__all__ = [
    "CHARGE_PRESETS",
    "DiffusionMaps",
    "DirectedGraph",
    "EigenSystem",
    "MagneticEigenmaps",
    "MagneticLaplacian",
    "SpanningTree",
    "SymmetrizedView",
    "TorusEmbedding",
    "bound_ledger",
    "build_magnetic_laplacian",
    "circular_cluster_score",
    "cut_function",
    "diagnostic_report",
    "eig_dense",
    "eig_iterative",
    "frustration",
    "gauge_transform",
    "gen_cluster_hubs",
    "gen_fixture",
    "gen_flow_groups",
    "holonomies",
    "is_connected",
    "normalize",
    "partition_energy",
    "phases",
    "rayleigh_quotient",
    "read_edge_list",
    "read_gml",
    "recover_potential",
    "spanning_tree",
    "symmetrize",
    "synchronize",
    "torus_distance",
    "transporter",
    "tree_path",
    "write_edge_list",
]

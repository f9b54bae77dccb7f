"""Exact solvers for metric dimension, geodetic set and strong metric
dimension, with tree-decomposition DPs, vertex-cover kernels and
SAT-gadget instance generators."""
from ._accel import BACKEND
from .graph import Graph, all_pairs_distances, is_connected, twin_classes, simplicial_vertices

__all__ = ["BACKEND", "Graph", "all_pairs_distances", "is_connected", "twin_classes",
           "simplicial_vertices"]

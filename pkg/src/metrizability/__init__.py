"""Decide and certify metrizability of small graphs.

A graph is metrizable when every consistent path system in it is realized
by the shortest paths of some positive edge weighting.
"""
from .graph import Graph, parse_graph
from .pathsys import PathSystem, check_consistency, geodesic_system, parse_path_system
from .certificates import check_metric, parse_certificate, verify_certificate
from .structure import classify_reduced, certify_metrizable, decide, screen_nonmetrizable

__version__ = "0.1.0"

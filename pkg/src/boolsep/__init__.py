"""Exact tools for Boolean function complexity measures: degree, sensitivity,
block sensitivity, decision-tree depth, approximate degree, symmetrization
and integer-decided separation bounds between them."""

from .approx import approx_degree, approx_degree_symmetric, nae_approximant, optimal_c
from .bounds import extremal_quartic, sweep, threshold, ThresholdQuery, uniqueness_lp, verify_separations
from .core import TruthTable, compose, family, parse_tt
from .measures import block_sensitivity, decision_tree_depth, measure_set, reduce_fully_sensitive, sensitivity
from .poly import degree, moebius, symmetrize

__version__ = "0.1.0"

__all__ = [
    "TruthTable",
    "ThresholdQuery",
    "approx_degree",
    "approx_degree_symmetric",
    "block_sensitivity",
    "compose",
    "decision_tree_depth",
    "degree",
    "extremal_quartic",
    "family",
    "measure_set",
    "moebius",
    "nae_approximant",
    "optimal_c",
    "parse_tt",
    "reduce_fully_sensitive",
    "sensitivity",
    "sweep",
    "symmetrize",
    "threshold",
    "uniqueness_lp",
    "verify_separations",
]

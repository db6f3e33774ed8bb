"""Regions of deformations of the braid arrangement, encoded as weighted digraphs.

A region is a choice of interval for every difference ``x_i - x_j``; it is
nonempty exactly when its weighted digraph has no cycle of nonnegative weight,
and bounded exactly when that digraph is strongly connected.
"""

from .arrangement import ArrangementSpec, classify, cycle_check_bound, parse_preset, preset
from .catalan import CatalanPath, catalan_decode, catalan_encode
from .diagrams import al_diagram, beta_parking_function, parking_tree, prufer_decode, prufer_encode
from .digraph import CycleWitness, WeightedDigraph, is_m_acyclic, shortest_ascending_cycle, strong_components
from .errors import (
    BudgetExceeded,
    InputError,
    InternalVerificationError,
    MalformedCode,
    NotApplicable,
    NotMAcyclic,
    RegionGraphError,
    SizeLimitError,
)
from .gains import gain_function, gain_tree, order_of_gains, pak_stanley_label
from .geometry import bounded_by_elimination, feasibility, recession_ray
from .regions import RegionConfig, count_regions, count_via_structure, enumerate_regions
from .weights import NEG_INF

__version__ = "0.1.0"

__all__ = [
    "ArrangementSpec",
    "classify",
    "cycle_check_bound",
    "parse_preset",
    "preset",
    "CatalanPath",
    "catalan_decode",
    "catalan_encode",
    "al_diagram",
    "beta_parking_function",
    "parking_tree",
    "prufer_decode",
    "prufer_encode",
    "CycleWitness",
    "WeightedDigraph",
    "is_m_acyclic",
    "shortest_ascending_cycle",
    "strong_components",
    "BudgetExceeded",
    "InputError",
    "InternalVerificationError",
    "MalformedCode",
    "NotApplicable",
    "NotMAcyclic",
    "RegionGraphError",
    "SizeLimitError",
    "gain_function",
    "gain_tree",
    "order_of_gains",
    "pak_stanley_label",
    "bounded_by_elimination",
    "feasibility",
    "recession_ray",
    "RegionConfig",
    "count_regions",
    "count_via_structure",
    "enumerate_regions",
    "NEG_INF",
]

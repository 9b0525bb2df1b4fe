"""Exact crossing numbers of small graphs, with the P4 audit suite."""

from .bounds import euler_bound, euler_skewness_bound, skewness_exact
from .crossing import (
    Constraints,
    DrawingCertificate,
    SearchOptions,
    cr_decide,
    cr_exact,
    enumerate_realizable,
    upper_bound_heuristic,
    verify_certificate,
)
from .graph import Cycle, Graph
from .pancake import decompose, g12_reference, pancake_graph
from .planarity import is_planar, kuratowski_witness, planar_embedding

__version__ = "0.1.0"

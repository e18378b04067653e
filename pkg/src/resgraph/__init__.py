"""Binary codings of perfect matchings of plane bipartite graphs.

The coder builds a reducible face decomposition of a plane elementary
bipartite graph whose infinite face is forcing and generates, digit by
digit, the binary codes of all perfect matchings without enumerating them.
The resonance module is the brute-force oracle the coder is verified
against: it enumerates the matchings, builds the resonance (di)graph, and
realizes the matchings' distributive-lattice order.
"""

from .planegraph import (
    BLACK,
    WHITE,
    DirectedCycle,
    PlaneBipartiteGraph,
    ValidationReport,
    parse_graph,
    from_document,
    validate_document,
)

__all__ = [
    "BLACK",
    "WHITE",
    "DirectedCycle",
    "PlaneBipartiteGraph",
    "ValidationReport",
    "parse_graph",
    "from_document",
    "validate_document",
]

__version__ = "0.1.0"

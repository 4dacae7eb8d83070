"""
Exact combinatorial engine for braid-closure Floer chain complexes.

The engine builds planar arc diagrams for braids (thimble shadows over a
disk), compiles them into exact rational cell complexes, enumerates
weighted domains between generator tuples, and assembles mod-2 chain
complexes with coefficients in F2[A][h,h^-1].  All arithmetic is exact
(fractions and integers); there is no floating point anywhere.
"""

from braidfloer.braid import (
    BraidWord,
    Permutation,
    parse_braid,
    print_braid,
    underlying_permutation,
    closure_component_count,
    markov_stabilize,
)
from braidfloer.diagram import (
    DiagramConfig,
    ArcDiagram,
    build_base_diagram,
    apply_braid,
    minimal_position,
    build_cell_complex,
    build_model_2x2,
    build_handleslide_diagram,
    build_braid_complex,
)

__all__ = [
    "BraidWord",
    "Permutation",
    "parse_braid",
    "print_braid",
    "underlying_permutation",
    "closure_component_count",
    "markov_stabilize",
    "DiagramConfig",
    "ArcDiagram",
    "build_base_diagram",
    "apply_braid",
    "minimal_position",
    "build_cell_complex",
    "build_model_2x2",
    "build_handleslide_diagram",
    "build_braid_complex",
]

__version__ = "0.1.0"

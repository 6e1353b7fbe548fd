"""Sparse 3-uniform hypergraphs: configurations, sparsification and extremal search."""

from .configs import (
    Configuration,
    ConfigurationError,
    FreenessReport,
    find_configuration,
    freeness_report,
    grow_k_maximal,
    is_f_free,
    is_g_free,
    is_k_maximal,
)
from .hypercore import (
    Hypergraph,
    HypergraphError,
    delete_vertices,
    fano_plane,
    read_hypergraph,
    span,
    write_hypergraph,
)
from .shadowbound import (
    build_intersection_graph,
    edge_bound_check,
    two_shadow,
    verify_component_claims,
)
from .sparsifier import (
    dense_extract_with_certificate,
    extract_free_subgraph,
    structural_checks,
)

__version__ = "0.1.0"

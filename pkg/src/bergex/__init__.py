"""Berge hypergraphs: copy detection, counting, structure and exact extremal search."""

__version__ = "0.1.0"

from .bergematch import (
    BergeCertificate,
    NotBergeFreeError,
    RedBlueGraph,
    contains_berge,
    is_berge_free,
    max_bipartite_matching,
    red_blue_decompose,
    verify_certificate,
)
from .canon import canonical_code, canonical_form, canonical_labeling
from .census import (
    EmbeddingCount,
    clique_hypergraph,
    count_copies,
    count_s_cliques,
    gamma,
)
from .hypercore import (
    Hypergraph,
    ParameterError,
    ParseError,
    clique_expansion,
    complete,
    expansion,
    is_connected,
    named_graph,
    named_hypergraph,
    read_hypergraph,
    shadow,
    star_path_construction,
    turan_graph,
    turan_hypergraph,
    write_hypergraph,
)
from .pathstruct import (
    BergePathCertificate,
    PeelingReport,
    classify_component,
    find_berge_star,
    hanging_blocks,
    longest_berge_path,
)
from .xsearch import ExtremalResult, ForbiddenSpec, Objective, ResourceError, extremal

__all__ = [
    "__version__",
    "BergeCertificate",
    "NotBergeFreeError",
    "RedBlueGraph",
    "contains_berge",
    "is_berge_free",
    "max_bipartite_matching",
    "red_blue_decompose",
    "verify_certificate",
    "canonical_code",
    "canonical_form",
    "canonical_labeling",
    "EmbeddingCount",
    "clique_hypergraph",
    "count_copies",
    "count_s_cliques",
    "gamma",
    "Hypergraph",
    "ParameterError",
    "ParseError",
    "clique_expansion",
    "complete",
    "expansion",
    "is_connected",
    "named_graph",
    "named_hypergraph",
    "read_hypergraph",
    "shadow",
    "star_path_construction",
    "turan_graph",
    "turan_hypergraph",
    "write_hypergraph",
    "BergePathCertificate",
    "PeelingReport",
    "classify_component",
    "find_berge_star",
    "hanging_blocks",
    "longest_berge_path",
    "ExtremalResult",
    "ForbiddenSpec",
    "Objective",
    "ResourceError",
    "extremal",
]

"""Subhypergraph matching with a candidate hyperedge space and match-and-filter search."""

from hypermatch.chs import CandidateSpace, build_chs
from hypermatch.engine import (
    MODES,
    ORDERS,
    Matcher,
    QueryResult,
    SearchConfig,
    SearchStats,
    check_intersection,
    choose_next_edge,
    connectivity_prune,
    intersection_prune,
    match_all,
    run_query,
)
from hypermatch.errors import (
    ContractViolation,
    DisconnectedQueryError,
    GenerationError,
    HypergraphParseError,
    HypermatchError,
    IndexCacheError,
    NormalizationError,
    QueryCapacityError,
    QueryValidationError,
    ScaleGuardError,
    VertexReferenceError,
)
from hypermatch.filtering import FilterStats, initial_filter
from hypermatch.hypergraph import (
    Hypergraph,
    LabelTable,
    intersection_signature,
    load_hypergraph,
    parse_hypergraph,
    serialize_hypergraph,
    signature_of,
    validate_query,
)
from hypermatch.oracle import gen_query, gen_random_hypergraph, oracle_subsets, oracle_vertexiso
from hypermatch.sigindex import SignatureIndex, build_index, lookup

__version__ = "0.1.0"

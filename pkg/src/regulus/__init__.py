"""Detection of r-regular subgraphs in k-uniform hypergraphs, generators for
the extremal constructions that avoid them, structural pattern finders, and
desk-scale exhaustive extremal search."""

from .errors import GuardError, ParseError
from .extremal import (
    SearchReport,
    ThreeSetPartition,
    WedgeCount,
    classify_3sets,
    count_wedges,
    extremal_search,
    is_linear,
    min_set_cover,
)
from .gadgets import (
    VARIANT_R_EQ_K,
    VARIANT_R_EQ_K_PLUS_1,
    BesFreeWitness,
    GadgetDescriptor,
    GadgetKind,
    bes_free,
    bes_layer_star,
    example_a,
    example_b,
    example_b_free_threshold,
    full_star,
    gadget_h,
    gadget_h_prime,
    star_plus,
    star_plus_certificate,
    verify_bes_free,
    verify_bes_layer_star,
)
from .hypercore import (
    Hypergraph,
    LinkGraph,
    complete_uniform,
    degree_vector,
    greedy_matching,
    link,
    link_intersection,
    mask_of,
    parse,
    read_hypergraph,
    serialize,
    vertices_of,
    write_hypergraph,
)
from .patterns import (
    EmbeddedCopy,
    SameUnionQuad,
    Sunflower,
    check_equipartition_hitting,
    equipartitions,
    find_gadget_copy,
    find_same_union,
    find_sunflower,
    greedy_sunflower,
    min_equipartition_hitting_size,
    sunflower_free_family,
    verify_embedded_copy,
    verify_same_union,
    verify_sunflower,
)
from .regdetect import (
    Certificate,
    SolveResult,
    SolverBudget,
    SolveStatus,
    brute_force_regular,
    find_regular,
    parse_certificate,
    serialize_certificate,
    verify_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "BesFreeWitness",
    "Certificate",
    "EmbeddedCopy",
    "GadgetDescriptor",
    "GadgetKind",
    "GuardError",
    "Hypergraph",
    "LinkGraph",
    "ParseError",
    "SameUnionQuad",
    "SearchReport",
    "SolveResult",
    "SolverBudget",
    "SolveStatus",
    "Sunflower",
    "ThreeSetPartition",
    "VARIANT_R_EQ_K",
    "VARIANT_R_EQ_K_PLUS_1",
    "WedgeCount",
    "bes_free",
    "bes_layer_star",
    "brute_force_regular",
    "check_equipartition_hitting",
    "classify_3sets",
    "complete_uniform",
    "count_wedges",
    "degree_vector",
    "equipartitions",
    "example_a",
    "example_b",
    "example_b_free_threshold",
    "extremal_search",
    "find_gadget_copy",
    "find_regular",
    "find_same_union",
    "find_sunflower",
    "full_star",
    "gadget_h",
    "gadget_h_prime",
    "greedy_matching",
    "greedy_sunflower",
    "is_linear",
    "link",
    "link_intersection",
    "mask_of",
    "min_equipartition_hitting_size",
    "min_set_cover",
    "parse",
    "parse_certificate",
    "read_hypergraph",
    "serialize",
    "serialize_certificate",
    "star_plus",
    "star_plus_certificate",
    "sunflower_free_family",
    "verify_bes_free",
    "verify_bes_layer_star",
    "verify_certificate",
    "verify_embedded_copy",
    "verify_same_union",
    "verify_sunflower",
    "vertices_of",
    "write_hypergraph",
]

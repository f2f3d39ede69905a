"""Finite-topology amalgams: build them, probe them, verify their theory.

The package glues finite T0 spaces together: pick a generating family of
nonempty open sets of a base space and attach one factor space to each
member; the amalgam's points pair a base point with a choice of factor
point for every member containing it.  Everything the library claims
about a constructed space (continuity, openness, connectedness, fiber
and subspace identifications, dimension, homogeneity, dense
connectification) is machine-checked on the instance at hand.

Layers:

* ``spaces`` / ``maps``: finite spaces as minimal-neighborhood tables
  and verified continuous maps between them.
* ``amalgam``: the construction itself plus its structural facts.
* ``constructions``: named fixtures and verified theorem procedures.
* ``harness``: seeded randomized verification suites.
* ``enumeration``: exhaustive catalogues of small T0 spaces.
* ``specdoc`` / ``render`` / ``cli``: JSON documents, DOT and figure
  output, command line.
"""

from .amalgam import (
    AmalgamPoint,
    AmalgamSpace,
    SubbaseSel,
    added_point_presentation,
    amalgam_of_maps,
    base_projection,
    build_amalgam,
    check_structural_facts,
    embed_base,
    embed_factor,
    fiber,
    partial_projection,
    quotient_presentation,
    reduced_amalgam,
    subspace_amalgam,
)
from .constructions import (
    ConnWitness,
    Connectification,
    HomogeneityTransfer,
    HomogeneityWitness,
    connectedness_chain,
    connectedness_with_witness,
    connectedness_without_full_member,
    connectify,
    connectify_demo,
    discrete,
    finite_circle,
    homogeneity_transfer,
    ind_comparison,
    indiscrete,
    pseudo_cone,
    second_connectedness_applies,
    semicircle_amalgam,
    semicircle_subbase,
    sierpinski,
    witness_condition_holds,
)
from .enumeration import all_t0_spaces, count_t0_topologies, natural_order_rows
from .errors import (
    AmalgamTopError,
    BoundExceeded,
    SizeBound,
    ValidationError,
    VerificationError,
)
from .harness import (
    SUITES,
    Failure,
    GenConfig,
    PropertyReport,
    reports_equal_ignoring_time,
    run_all,
    run_suite,
    search_counterexample,
    verify_amalgamative,
)
from .maps import (
    ContinuousMap,
    are_homeomorphic,
    automorphism_group,
    find_homeomorphism,
    is_continuous,
    is_embedding,
    is_homeomorphism,
    is_homogeneous,
    is_open_map,
    is_quotient_map,
)
from .spaces import (
    PointSet,
    TopSpace,
    components,
    from_opens,
    generate_topology,
    ind,
    is_connected,
    is_hereditarily_disconnected,
    is_t0,
    is_zero_dimensional,
    product_space,
    subspace,
)
from .specdoc import SpecDocument, build_instance, parse, serialize

__version__ = "0.1.0"

__all__ = [
    "AmalgamPoint",
    "AmalgamSpace",
    "SubbaseSel",
    "added_point_presentation",
    "amalgam_of_maps",
    "base_projection",
    "build_amalgam",
    "check_structural_facts",
    "embed_base",
    "embed_factor",
    "fiber",
    "partial_projection",
    "quotient_presentation",
    "reduced_amalgam",
    "subspace_amalgam",
    "ConnWitness",
    "Connectification",
    "HomogeneityTransfer",
    "HomogeneityWitness",
    "connectedness_chain",
    "connectedness_with_witness",
    "connectedness_without_full_member",
    "connectify",
    "connectify_demo",
    "discrete",
    "finite_circle",
    "homogeneity_transfer",
    "ind_comparison",
    "indiscrete",
    "pseudo_cone",
    "second_connectedness_applies",
    "semicircle_amalgam",
    "semicircle_subbase",
    "sierpinski",
    "witness_condition_holds",
    "all_t0_spaces",
    "count_t0_topologies",
    "natural_order_rows",
    "AmalgamTopError",
    "BoundExceeded",
    "SizeBound",
    "ValidationError",
    "VerificationError",
    "SUITES",
    "Failure",
    "GenConfig",
    "PropertyReport",
    "reports_equal_ignoring_time",
    "run_all",
    "run_suite",
    "search_counterexample",
    "verify_amalgamative",
    "ContinuousMap",
    "are_homeomorphic",
    "automorphism_group",
    "find_homeomorphism",
    "is_continuous",
    "is_embedding",
    "is_homeomorphism",
    "is_homogeneous",
    "is_open_map",
    "is_quotient_map",
    "PointSet",
    "TopSpace",
    "components",
    "from_opens",
    "generate_topology",
    "ind",
    "is_connected",
    "is_hereditarily_disconnected",
    "is_t0",
    "is_zero_dimensional",
    "product_space",
    "subspace",
    "SpecDocument",
    "build_instance",
    "parse",
    "serialize",
    "__version__",
]

"""
dposet engine

Construction, validation, enumeration and numerical probing of
r-differential posets, together with the linear spaces that describe their
low ranks.
"""

from .errors import *
from .schemas import *
from .settings import settings, load_settings, get_limit, get_tolerance, get_default_budget
from .poset import (
    LayeredCovers,
    RankedPoset,
    PosetFragment,
    single_point,
    rank_function,
    validate_differential,
    young_partitions,
    young_lattice,
    fibonacci_poset,
    cartesian_product,
    young_power,
    rank_selected,
)
from .canonical import canonical_cert, canonical_form, canonical_labeling, is_isomorphic
from .wagner import wagner_extend, wagner_complete
from .hypergraph import (
    Hypergraph,
    is_admissible,
    dimension_sum,
    p2_value,
    poset_from_hypergraph,
    hypergraph_from_ranks,
    enumerate_linear_spaces,
    p2_spectrum,
    extremal_p2,
    hyperedge_size_feasible,
    is_steiner,
    is_projective_plane,
    desarguesian_plane,
    fano_plane,
    simplex,
    complete_graph,
    near_pencil,
    cone,
    equal_p2_pairs,
)
from .enumerator import (
    SharingGraph,
    ExtensionChoice,
    sharing_graph,
    iter_extension_choices,
    apply_extension,
    enumerate_extensions,
    replay_lineage,
    enumerate_posets,
    search_rank_function,
)
from .walks import (
    CHECK_NAMES,
    walk_stats,
    maximal_chain_counts,
    chain_count_closed,
    check_eq2,
    check_eq3,
    check_lemma31,
    check_lemma32,
    check_chain_universality,
    check_sum_e_squared,
    check_finite_lower_bound,
    identity_checks,
)
from .numerics import (
    partition_numbers,
    yr_rank_function,
    zr_rank_function,
    convolve_series,
    hr_log_estimate,
    hr_ratio,
    meinardus_exponent_check,
    lemma33_ratio,
    thm35_exponent_compare,
    delta,
    rank_function_probes,
    interval_demo,
)
from . import formats

__version__ = "0.1.0"

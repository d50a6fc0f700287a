"""Finite-level computations for subodometers: eigenvalues, settled subgroups,
quasifactors, measure quasifactors and disjointness, each checked against a
brute-force oracle."""

from .actions import (
    EigenSet,
    FiniteAction,
    coset_action,
    conjugacy_exists,
    eigenset_of,
    factor_map_exists,
    g_tiles_at,
    is_settled,
    orbits,
    product_action,
    settle,
    stabilizer_of,
)
from .disjointness import (
    common_factor_search,
    disjoint_action,
    disjoint_finite,
    no_common_factor_finite,
    universally_disjoint_probe,
)
from .groups import (
    PermGroup,
    Subgroup,
    all_subgroups,
    closure,
    conjugate,
    index,
    intersect_over,
    join_is_full,
    left_transversal,
    normal_core,
    product_set_is_group_sized,
    subgroup,
)
from .hyperspace import (
    RationalMeasure,
    SubsetState,
    classify_measure_quasifactors,
    embed_quasifactor_in_measures,
    hyperspace_decomposition,
    measure_orbit,
    mu_gamma,
    quasifactor_construct,
)
from .perm import Perm, compose, format_cycles, identity, inverse, parse_cycles
from .scales import (
    Scale,
    build_truncated,
    eigenhull_contains,
    make_scale,
    odometer_criteria,
    universal_odometer_stage,
)

__version__ = "0.1.0"

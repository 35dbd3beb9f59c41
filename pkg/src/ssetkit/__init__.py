"""ssetkit: a computation kernel for finite simplicial sets.

Exact Eilenberg-Zilber normal forms, joins and wide joins, slices and
wide slices, bounded fibration checkers, anodyne-certificate search, and
a verification suite for the decomposition and filtration identities the
constructions satisfy.
"""

from .operators import (
    SimplicialOperator, compose, degeneracy, epi_mono_factor, face, identity,
)
from .core import (
    EZForm, SimplexId, SimplicialMap, SimplicialSet, Subcomplex, act,
    compose_maps, generated_subcomplex, identity_map, image, is_mono,
    isomorphic, nondeg_form, restrict, simplex_count, skeleton, validate,
    validate_map,
)
from .build import (
    boundary, comparison_map, coproduct, fiber_product, horn, join, product,
    pp_map, pushout, spine, standard_simplex, wide_join, wide_join_map,
)
from .cats import CatFunctor, FiniteCategory, nerve, nerve_map
from .homs import (
    BudgetExceeded, FibrationClass, LiftingProblem, check_fibration,
    enumerate_maps, exponential, extensions, is_equivalence_edge, solve_lift,
)
from .slices import (
    cocartesian_edges, slice_comparison, slice_under, wide_cocartesian_edges,
    wide_slice, wide_slice_comparison,
)
from .anodyne import (
    CellPresentation, cancellation_probe, search_presentation,
    verify_presentation,
)

__version__ = "0.1.0"

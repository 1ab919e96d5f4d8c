"""
Services package for balkit.
"""

from balkit.services.complex import (
    Coloring,
    SimplicialComplex,
    from_facets,
    from_file,
    to_file,
    link,
    star,
    delete,
    join,
    rank_selected,
    boundary_complex,
    f_vector,
    flag_vectors,
)
from balkit.services.homology import HomologyEngine, homology_engine, homology
from balkit.services.verify import (
    find_proper_coloring,
    is_balanced,
    is_k_neighborly,
    is_homology_sphere,
    is_homology_ball,
    is_closed_homology_manifold,
    dehn_sommerville_flag,
    link_intersection_profile,
    heegaard_profile,
)
from balkit.services.symmetry import (
    canonical_form,
    automorphism_group,
    are_isomorphic,
    parse_cycles,
    check_generators,
)
from balkit.services.decomposition import (
    validate_ear_decomposition,
    find_ear_decomposition,
    validate_shelling,
    find_shelling,
)
from balkit.services.enumeration import (
    enumerate_balanced_spheres,
    search_symmetric,
    orbit_facets,
    census_frame,
    write_census,
)
from balkit.services.construct import NAMED_BUILDERS, build

__all__ = [
    "Coloring",
    "SimplicialComplex",
    "from_facets",
    "from_file",
    "to_file",
    "link",
    "star",
    "delete",
    "join",
    "rank_selected",
    "boundary_complex",
    "f_vector",
    "flag_vectors",
    "HomologyEngine",
    "homology_engine",
    "homology",
    "find_proper_coloring",
    "is_balanced",
    "is_k_neighborly",
    "is_homology_sphere",
    "is_homology_ball",
    "is_closed_homology_manifold",
    "dehn_sommerville_flag",
    "link_intersection_profile",
    "heegaard_profile",
    "canonical_form",
    "automorphism_group",
    "are_isomorphic",
    "parse_cycles",
    "check_generators",
    "validate_ear_decomposition",
    "find_ear_decomposition",
    "validate_shelling",
    "find_shelling",
    "enumerate_balanced_spheres",
    "search_symmetric",
    "orbit_facets",
    "census_frame",
    "write_census",
    "NAMED_BUILDERS",
    "build",
]

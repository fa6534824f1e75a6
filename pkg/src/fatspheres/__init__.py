"""Fatness of simplicial cell spheres and non-origami certificates for
quasitoric characteristic pairs."""

from .certify import (Certificate, LiftedCertificate, certify_non_origami, lemma_consistency_audit,
                      lift_certificate, validate_certificate)
from .coloring import four_color
from .delzant import (RationalPolytope, build_polytope, coincide_near_facet, dual_weighted_sphere,
                      is_delzant)
from .errors import *  # noqa: F401,F403
from .fatness import FatnessResult, fatness_bruteforce
from .metric import (EquilateralGeometry, PiForm, discrete_area_bound, estimate_lipschitz,
                     isoperimetric_constants, small_side_bound_check, subdivided_tetrahedron)
from .poset import (SimplicialPoset, from_facets, is_admissible, is_cell_sphere, link,
                    simplex_boundary)
from .surgery import (Slicing, check_degree_bound, connected_sum, cut_along_cycles,
                      tree_connected_sum, weighted_connected_sum, width)
from .template import (OrigamiTemplate, orbit_poset_as_connected_sum, orbit_poset_glued,
                       validate_template)
from .weighted import (CharacteristicFunction, Coloring, WeightedSphere, check_star_condition,
                       coloring_to_characteristic, suspend, value_count)

__version__ = "1.0.0"

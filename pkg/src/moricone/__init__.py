"""Exact tools for finite polyhedral Mori cones: intersection lattices, curve
configurations, nef cones and their face lattices, diagram-method bounds on the
Picard number, and oriented diagrams of extremal rays on 3-folds.
"""

from .bounds import BoundReport, bound_report, compute_counting_constants, compute_d, lemma2_bound, lemma3_bound
from .catalog import REFERENCE, CatalogEntry, ReferenceConstants, catalog_names, load_catalog
from .cone import (
    configuration_cones,
    dual_cone,
    face_averages,
    face_lattice,
    face_polynomial,
    face_polynomial_from_counts,
    simpliciality_report,
    subset_in_proper_face,
    vertex_kinds,
)
from .config import (
    Configuration,
    DistanceMode,
    Kind,
    Verdict,
    build_ample_candidate,
    build_graph,
    classify_subset,
    enumerate_subsets,
    narrow_parts_search,
    surface_invariants,
    verify_narrow_parts,
)
from .errors import MoriConeError, ParseError
from .lattice import GramMatrix, Signature, numerical_signature, signature
from .oriented import (
    OrientedDiagram,
    elliptic_by_face,
    oriented_distance,
    recognize_e_set,
    recognize_elliptic_family,
    step_a_check,
    theorem45_exception_flags,
)
from .serialize import export_dot, export_json, parse_configuration, render_report

__version__ = "0.1.0"

"""Exact landscape analysis for quadratic functions on the 0/1 cube.

Enumerates and certifies strict local maxima of quadratic objectives over
{0,1}^n, builds quasichain partitions of the subset lattice that bound how
many maxima can coexist, and analyzes near-extremal landscapes. All
arithmetic is exact, so strict-versus-tied comparisons are always decided
correctly.
"""

__version__ = "0.1.0"

from .decomposition import (
    BoundCertificate,
    Decomposition,
    VerificationResult,
    base_case,
    build,
    certify_bound,
    extend,
    normalize_step,
    verify,
)
from .errors import InputError, InternalInvariantError, ResourceError
from .extremal import (
    StabilityReport,
    antichain_check,
    evolution_count,
    glued_decomposition,
    stability_analysis,
    stability_threshold,
)
from .forms import (
    QuadraticForm,
    base_change_form,
    build_form,
    count_maxima_float,
    enumerate_maxima,
    form_from_json,
    form_to_json,
    is_strict_local_max,
    margin,
    maxima_count,
    middle_layer_form,
    parallelepiped_form,
    perturb,
    sign_sets,
    value,
)
from .oracle import (
    ConflictGraph,
    check_hypothesis,
    conflict_pairs,
    count_maxima_bruteforce,
    max_family_bruteforce,
)
from .quasichain import (
    Quasichain,
    Transform,
    apply_transform,
    first_edge_violation,
    first_triangle_violation,
    flip_colors,
    is_flip_acyclic_bruteforce,
    is_flip_acyclic_triangles,
    members_in,
    source,
    validate_edges,
)
from .subsets import (
    Family,
    SignSets,
    SubsetMask,
    base_change_family,
    central_binomial,
    lower_level,
    superset_under,
    upper_level,
)

"""sumsetlab: a computational lab for sumset volume inequalities.

Constructs compact sets (rational polytopes, voxel unions, lattice sets),
computes Minkowski sums, difference bodies, slice bodies and volumes exactly
or by seeded Monte Carlo, and verifies a family of sumset inequalities with
empirical implied constants.
"""

from .bodies import (
    GridSet,
    HPolytope,
    LatticeSet,
    VPolytope,
    body_from_json_dict,
    body_to_json_dict,
    load_body,
    make_simplex,
    reflect,
    scale_about,
)
from .errors import (
    DegenerateInputError,
    DimensionCapError,
    InputFormatError,
    PrecisionError,
    PreconditionError,
    ResolutionMismatchError,
    SumsetLabError,
)
from .geometry import (
    FACET_DIM_CAP,
    MembershipOracle,
    convex_hull,
    difference_body,
    facet_enum,
    grid_minkowski,
    membership,
    minkowski_sum,
    polytope_oracle,
    rasterize,
    select_subset_of_measure,
    slice_body,
    vertex_enum,
)
from .inequalities import (
    BoundForm,
    check_brunn_minkowski,
    check_difference_bound,
    check_koester_katz,
    check_ruzsa_triangle,
    check_slice_lower_bound,
    check_slice_sum_bound,
)
from .measure import VolumeEstimate, volume_exact, volume_grid, volume_mc
from .report import CheckReport
from .sigma_analysis import (
    SigmaParams,
    SigmaValue,
    beta_identity_check,
    log_inequality_check,
    sigma,
    sigma_lower_bound,
)
from .simplex import (
    SimplexReport,
    lattice_diff_count,
    simplex_report,
    tightness_sweep,
    trinomial_sum,
)

__version__ = "0.1.0"

__all__ = [
    "BoundForm",
    "CheckReport",
    "DegenerateInputError",
    "DimensionCapError",
    "FACET_DIM_CAP",
    "GridSet",
    "HPolytope",
    "InputFormatError",
    "LatticeSet",
    "MembershipOracle",
    "PrecisionError",
    "PreconditionError",
    "ResolutionMismatchError",
    "SigmaParams",
    "SigmaValue",
    "SimplexReport",
    "SumsetLabError",
    "VPolytope",
    "VolumeEstimate",
    "body_from_json_dict",
    "body_to_json_dict",
    "check_brunn_minkowski",
    "check_difference_bound",
    "check_koester_katz",
    "check_ruzsa_triangle",
    "check_slice_lower_bound",
    "check_slice_sum_bound",
    "convex_hull",
    "difference_body",
    "facet_enum",
    "grid_minkowski",
    "lattice_diff_count",
    "load_body",
    "make_simplex",
    "membership",
    "minkowski_sum",
    "polytope_oracle",
    "rasterize",
    "reflect",
    "scale_about",
    "select_subset_of_measure",
    "sigma",
    "sigma_lower_bound",
    "simplex_report",
    "slice_body",
    "tightness_sweep",
    "trinomial_sum",
    "vertex_enum",
    "volume_exact",
    "volume_grid",
    "volume_mc",
    "beta_identity_check",
    "log_inequality_check",
]

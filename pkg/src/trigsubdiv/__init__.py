"""Binary non-stationary subdivision schemes built from uniform trigonometric B-splines."""

__version__ = "0.1.0"

from .errors import (
    ArityMismatch,
    DegenerateMask,
    InsufficientData,
    InvalidMesh,
    InvalidTension,
    MeshTooLarge,
    NotDivisible,
    OutOfDomain,
    SubdivisionError,
    TooFewPoints,
    Unsupported,
    WindowTooSmall,
)
from .trig_basis import TrigKnotGrid, eval_basis, eval_shifted_basis, eval_trig_spline
from .mask import (
    Mask,
    SchemeFamily,
    closed_form_mask,
    generate_mask,
    normalize,
    stationary_limit_fractions,
    stationary_limit_mask,
)
from .subdivide import ControlPolygon, refine_once, refine_to_level
from .symbol import (
    LaurentPolynomial,
    divide_by_smoothing_factor,
    scheme_norm,
    smoothness_via_contractivity,
    symbol_of_mask,
)
from .analysis import (
    AnalysisReport,
    check_mask_bounds,
    deviation_sequence,
    full_report,
    summability_verdict,
)
from .reproduce import (
    CircleSample,
    basis_limit_symmetry,
    sample_conic,
    verify_circle_reproduction,
    verify_trig_reproduction,
)

"""Exact rational homotopy ranks of open books and the elliptic/hyperbolic dichotomy."""

from .errors import (
    InputError,
    IntegralityError,
    ModelError,
    NotClassifiableError,
    OpenBookError,
    TruncationMismatch,
)
from .lie import GradedRanks, free_lie_ranks, pbw_series, witt_number
from .milnor import (
    BrieskornExponents,
    MonodromyReport,
    VariationMatrix,
    boundary_connected_sum_variation,
    brieskorn_multiplicity,
    milnor_openbook_spec,
    milnor_page,
    monodromy_constraint_report,
    variation_is_iso,
)
from .openbook import (
    Elliptic,
    FiniteHomotopyOrder,
    Hyperbolic,
    HyperbolicReason,
    IdentityOnRationalHomotopy,
    NotClassifiable,
    OpenBookSpec,
    Unverified,
    Violation,
    classify_dichotomy,
    double_loop_ranks,
    grove_halperin_test,
    homotopy_ranks,
    openbook_loop_ranks,
    validate_spec,
)
from .series import (
    DEFAULT_TRUNCATION,
    TruncatedSeries,
    series_add,
    series_from_ranks,
    series_mul,
    series_reciprocal,
)
from .spaces import (
    Contractible,
    EllipticRanks,
    GrowthClass,
    GrowthReport,
    Sphere,
    WedgeOfSpheres,
    growth_estimate,
    is_rationally_elliptic,
    loop_ranks,
    space_ranks,
    suspend,
    wedge,
)

__version__ = "0.1.0"

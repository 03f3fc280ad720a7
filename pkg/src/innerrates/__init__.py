"""Exact metric invariants of decorated dual resolution graphs."""

from .linalg import (
    NotSymmetricError,
    Rational,
    RationalMatrix,
    SingularMatrixError,
    determinant,
    is_negative_definite,
    solve_linear,
)
from .graphs import (
    Divisor,
    DualGraph,
    Edge,
    EdgePoint,
    PLFunction,
    PointOnGraph,
    UnknownEdgeError,
    ValidationReport,
    VertexData,
    degree,
    edge_length,
    edge_lengths,
    edge_point,
    evaluate,
    intersection_matrix,
    pushforward,
    validate,
)
from .solver import (
    AdmissibilityWarning,
    IdentityReport,
    InvariantBundle,
    LeGreuelResult,
    NonIntegralMultiplicityError,
    NonIntegralSlopeError,
    NonPositiveMultiplicityError,
    canonical_divisor,
    euler_char_complement,
    laplacian,
    laplacian_from_decorations,
    le_greuel_balance,
    milnor_fiber_euler,
    rates_function,
    solve_inner_rates,
    solve_multiplicities,
    verify_laplacian_identity,
)
from .blowup import BlowupResult, blowup_edge, blowup_smooth, check_pushforward_invariance
from .contact import (
    INFINITE_EXPONENT,
    ContactResult,
    injective_paths,
    inner_contact,
    rate_off_skeleton,
    ultrametric_exponent,
)
from .polar import (
    AdmissibleConfig,
    NoLNodesError,
    PolarEnumeration,
    enumerate_admissible,
    install_polar,
    is_admissible,
    total_polar_weight,
)
from .fileformat import (
    GraphDocument,
    GraphParseError,
    document_from_json,
    document_to_json,
    format_rational,
    parse,
    parse_rational,
    serialize,
)
from .fixtures import FIXTURE_NAMES, fixture_path, load_fixture

__version__ = "0.1.0"

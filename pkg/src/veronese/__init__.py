"""Exact tools for intersections of Veronese monomial ideals."""
from .betti import BettiTable, coarsen
from .errors import (
    CapacityError,
    DegreeMismatchError,
    DocumentError,
    InvalidCoarseningError,
    InvalidOrderError,
    InvalidSpecError,
    PreconditionError,
    RingMismatchError,
    SquarefreeRequiredError,
    VeroneseError,
)
from .formulas import (
    SplitPair,
    TwoVeroneseCase,
    betti_disjoint_product_formula,
    betti_power_formula,
    betti_two_fat_points,
    betti_two_veronese,
    betti_U_formula,
    betti_V_formula,
    build_UV_split,
    classify_two_veronese,
    ekf_identity_check,
    verify_splitting,
)
from .geometry import (
    FatPointScheme,
    SimplicialComplexSpec,
    fat_points_ideal,
    is_sequentially_cm,
    non_general_fixture,
    stanley_reisner_ideal,
)
from .linearity import (
    ExchangeWitness,
    OrderDirection,
    QuotientCertificate,
    compare,
    is_polymatroidal,
    linear_quotients_in_order,
    linear_quotients_status,
    paper_order_three_veronese,
    paper_order_two_veronese,
    search_linear_quotients,
    sort_monomials,
)
from .oracle import (
    HilbertSummary,
    betti_table,
    has_linear_resolution,
    hilbert_numerator,
    is_componentwise_linear,
    multiplicity,
    multiplicity_upper_bound_check,
    quotient_pdim,
    taylor_betti,
)
from .ring import (
    MonomialIdeal,
    RingCtx,
    VeroneseSpec,
    alexander_dual,
    colon_by_monomial,
    degree_component,
    intersect,
    multiply,
    power,
    support_codim,
    veronese_ideal,
)

__version__ = "0.1.0"

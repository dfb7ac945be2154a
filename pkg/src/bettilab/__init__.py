"""Exact graded Betti numbers over F_p and closed-form Poincare series checks."""

from .algebra import (
    Exact,
    Heuristic,
    HilbertData,
    HomogPoly,
    Probabilistic,
    RingSpec,
    Tagged,
    degree_basis,
    hilbert,
    is_regular_sequence,
    krull_dimension,
    min_multiplicity_check,
    minimal_generator_count,
    quadratic_part,
)
from .constructions import (
    AdequateMatrix,
    OptimalFamily,
    golod_quotient_ideal,
    minors_ideal,
    optimal_family,
    sample_regular_point,
    staircase,
    validate_adequate,
)
from .errors import *  # noqa: F401,F403
from .fplinalg import DEFAULT_PRIME, MatrixFp, kernel_basis, rank, row_space
from .formulas import (
    GringParams,
    adequate_ideal_series,
    componentwise_linear_series,
    det_power_series,
    golod_pk,
    golod_residue_series,
    graded_ci_pk,
    granularity_bound,
    gring_granularity,
    linear_ideal_series,
    tate_series,
)
from .invariants import InvariantReport, componentwise_series, invariants, loewy_bound_check
from .resolution import (
    BettiTable,
    ideal_betti_table,
    is_golod_truncated,
    is_koszul_truncated,
    minimal_betti_table,
    poincare_truncated,
)
from .ringfile import format_ring_spec, parse_ring_spec, parse_ring_specs
from .series import (
    BiPoly,
    QuasiPolynomialPair,
    RationalSeries,
    betti_polynomials,
    expand,
    pole_orders,
    root_multiplicity,
    specialize_y,
)

__version__ = "0.1.0"

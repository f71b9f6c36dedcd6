"""Toric singularity arithmetic: quotient germs, weighted blow-ups,
exceptional-surface log pairs, and contraction chains.

Everything is exact (integers and fractions.Fraction); no numerics.
"""

from .quotient import (
    CyclicQuotientType,
    Verdict,
    canonical_by_criterion,
    has_opposite_weight_pair,
    is_canonical,
    is_terminal,
    minimal_discrepancy,
    normalize,
    quotient_type,
    reid_tai_profile,
)
from .blowup import (
    BaseSingularity,
    ChartReport,
    MonomialDivisor,
    WeightedBlowup,
    charts,
    discrepancy_zero,
    divisor_discrepancy,
    is_canonical_blowup,
    is_terminal_blowup,
    odp_vector_to_weights,
    odp_weights_to_vector,
    subdivided_cones,
    toric_discrepancy,
    weighted_multiplicity,
)
from .surfaces import (
    QuadricPair,
    TripleRecord,
    WPSPair,
    ade_type,
    canonical_triple_table,
    classify_canonical_triple,
    classify_plt_triple,
    exceptional_surface,
    plt_chain_surface_record,
    quadric_surface_pair,
    quadric_triple_condition,
    triple_ample_and_adjunction,
    wps_degree,
)
from .enumerators import (
    SPORADIC_SMOOTH,
    EnumerationReport,
    enumerate_canonical_odp,
    enumerate_canonical_smooth,
    enumerate_plt_triples_case,
    enumerate_terminal_cyclic,
    plt_family_tag,
    smooth_family_tag,
)
from .chain import (
    ChainError,
    ChainState,
    IndexPoint,
    MarkedPoint,
    canonical_chain_step,
    complement_index_for,
    continuation_inequality,
    contraction_triple_check,
    gamma_tilde_sq,
    start_chain,
    step,
)

__version__ = "0.1.0"

__all__ = [
    "BaseSingularity",
    "ChainError",
    "ChainState",
    "ChartReport",
    "CyclicQuotientType",
    "EnumerationReport",
    "IndexPoint",
    "MarkedPoint",
    "MonomialDivisor",
    "QuadricPair",
    "SPORADIC_SMOOTH",
    "TripleRecord",
    "Verdict",
    "WPSPair",
    "WeightedBlowup",
    "ade_type",
    "canonical_by_criterion",
    "canonical_chain_step",
    "canonical_triple_table",
    "charts",
    "classify_canonical_triple",
    "classify_plt_triple",
    "complement_index_for",
    "continuation_inequality",
    "contraction_triple_check",
    "discrepancy_zero",
    "divisor_discrepancy",
    "enumerate_canonical_odp",
    "enumerate_canonical_smooth",
    "enumerate_plt_triples_case",
    "enumerate_terminal_cyclic",
    "exceptional_surface",
    "gamma_tilde_sq",
    "has_opposite_weight_pair",
    "is_canonical",
    "is_canonical_blowup",
    "is_terminal",
    "is_terminal_blowup",
    "minimal_discrepancy",
    "normalize",
    "odp_vector_to_weights",
    "odp_weights_to_vector",
    "plt_chain_surface_record",
    "plt_family_tag",
    "quadric_surface_pair",
    "quadric_triple_condition",
    "quotient_type",
    "reid_tai_profile",
    "smooth_family_tag",
    "start_chain",
    "step",
    "subdivided_cones",
    "toric_discrepancy",
    "triple_ample_and_adjunction",
    "weighted_multiplicity",
    "wps_degree",
    "__version__",
]

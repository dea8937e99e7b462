"""Divisor-sum models of prime distribution with partition norm machinery.

The package splits into prime infrastructure (:mod:`ppm.primes`),
partition arithmetic (:mod:`ppm.partitions`), the model sequences and
their baselines (:mod:`ppm.models`), gap/twin statistics
(:mod:`ppm.stats`), and a CLI (:mod:`ppm.cli`).
"""
from .errors import (
    CacheFormatError,
    DomainError,
    PpmError,
    RangeError,
    ResourceLimitError,
    SequenceTooShortError,
    UndefinedRatioError,
)
from .models import (
    EULER_GAMMA,
    MEISSEL_MERTENS,
    BaselineEstimates,
    ConjectureOrderingReport,
    ModeledSequence,
    ModelKind,
    ModelSpec,
    baseline_estimates,
    ceil_half_divisor_sum,
    conjecture_ordering_check,
    divisor_count,
    divisor_counts_up_to,
    epsilon_model2,
    epsilon_model2star,
    estimate_pi,
    landau_pik_approx,
    model1_value,
    model_sequence,
    modeled_gap,
    relative_error_series,
    tenenbaum_semiprime_gap,
)
from .partitions import (
    GapComposition,
    GapEntry,
    InequalityReport,
    Partition,
    enumerate_by_norm,
    enumerate_by_size,
    gap_composition,
    multiply,
    norm,
    supernorm,
    supernorm_preimage,
    verify_inequalities,
)
from .primes import PrimeTable, build_prime_table, load_prime_table
from .stats import (
    CoOccurrence,
    MeritCensus,
    TwinCensus,
    co_occurrence,
    merit,
    merit_census,
    model1_merit,
    p_ratio_series,
    q_ratio,
    twin_census,
)

__version__ = "0.1.0"

__all__ = [
    "BaselineEstimates",
    "CacheFormatError",
    "CoOccurrence",
    "ConjectureOrderingReport",
    "DomainError",
    "EULER_GAMMA",
    "GapComposition",
    "GapEntry",
    "InequalityReport",
    "MEISSEL_MERTENS",
    "MeritCensus",
    "ModelKind",
    "ModelSpec",
    "ModeledSequence",
    "Partition",
    "PpmError",
    "PrimeTable",
    "RangeError",
    "ResourceLimitError",
    "SequenceTooShortError",
    "TwinCensus",
    "UndefinedRatioError",
    "baseline_estimates",
    "build_prime_table",
    "ceil_half_divisor_sum",
    "co_occurrence",
    "conjecture_ordering_check",
    "divisor_count",
    "divisor_counts_up_to",
    "enumerate_by_norm",
    "enumerate_by_size",
    "epsilon_model2",
    "epsilon_model2star",
    "estimate_pi",
    "gap_composition",
    "landau_pik_approx",
    "load_prime_table",
    "merit",
    "merit_census",
    "model1_merit",
    "model1_value",
    "model_sequence",
    "modeled_gap",
    "multiply",
    "norm",
    "p_ratio_series",
    "q_ratio",
    "relative_error_series",
    "supernorm",
    "supernorm_preimage",
    "tenenbaum_semiprime_gap",
    "twin_census",
    "verify_inequalities",
]

"""Operator geometry in semi-Hilbertian spaces.

A positive semidefinite weight A turns C^n into a seminormed space; this
package computes the induced operator seminorms, numerical and spectral
radii, weighted adjoints, distances to complex lines and centers of mass,
and decides parallelism, Birkhoff-James orthogonality and the weighted
Daugavet equation with certified witnesses.
"""

__version__ = "0.1.0"

from .errors import (
    BadSpec,
    DimensionMismatch,
    MinModulusTooSmall,
    NotABounded,
    NotHermitian,
    NotPSD,
    RankTooLarge,
    SemiHilbertError,
    ZeroRank,
    ZeroWeight,
)
from .geometry import (
    DistancePanel,
    LineDistanceResult,
    ParallelismResult,
    center_of_mass,
    cluster_consensus,
    daugavet_check,
    distance_inequality_panel,
    distance_to_line,
    dw_lower_attainment_check,
    is_bj_orthogonal,
    is_parallel,
    parallel_to_identity_suite,
    rank_one_parallel_identity,
)
from .harness import (
    FAMILIES,
    InstanceSpec,
    OracleValues,
    SuiteReport,
    Tolerances,
    brute_oracle,
    generate,
    instance_stream,
    run_suite,
)
from .operators import (
    Certificate,
    Operator,
    ReducedOperator,
    compose,
    davis_wielandt_radius,
    davis_wielandt_witness,
    identity,
    is_a_bounded,
    min_modulus,
    numerical_radius,
    numerical_radius_witness,
    numerical_range_samples,
    operator_power,
    power_radius_sequence,
    rank_one,
    seminorm,
    sharp_a,
    spectral_radius,
    tilde,
)
from .weightspace import Weight, make_weight

__all__ = [
    "__version__",
    "BadSpec", "DimensionMismatch", "MinModulusTooSmall", "NotABounded",
    "NotHermitian", "NotPSD", "RankTooLarge", "SemiHilbertError", "ZeroRank",
    "ZeroWeight",
    "Weight", "make_weight",
    "Certificate", "Operator", "ReducedOperator", "compose",
    "davis_wielandt_radius", "davis_wielandt_witness", "identity",
    "is_a_bounded", "min_modulus", "numerical_radius",
    "numerical_radius_witness", "numerical_range_samples", "operator_power",
    "power_radius_sequence", "rank_one", "seminorm", "sharp_a",
    "spectral_radius", "tilde",
    "DistancePanel", "LineDistanceResult", "ParallelismResult",
    "center_of_mass", "cluster_consensus", "daugavet_check",
    "distance_inequality_panel", "distance_to_line",
    "dw_lower_attainment_check", "is_bj_orthogonal", "is_parallel",
    "parallel_to_identity_suite", "rank_one_parallel_identity",
    "FAMILIES", "InstanceSpec", "OracleValues", "SuiteReport", "Tolerances",
    "brute_oracle", "generate", "instance_stream", "run_suite",
]

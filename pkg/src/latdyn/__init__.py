"""latdyn: exact analysis of finitely generated unimodular integer matrix groups.

Entropy classification through cyclotomic factorization, Kolchin-style
unipotence certificates, derived length and nilpotency class via logarithms
and Lie closures, polyhedral cone dynamics, and a corpus CLI.  All arithmetic
is arbitrary precision; the only approximate values are rational intervals
with explicit width contracts.
"""

from .cones import (
    ConeMapAnalysis,
    PolyhedralCone,
    cone_from_rays,
    fujiki_lieberman_pipeline,
    group_closure,
    interior_fixed_vector,
    meng_zhang_report,
    power_bounded_exact,
    preserves_cone,
)
from .entropy import (
    EntropyClassification,
    EntropyKind,
    GradedRepresentation,
    check_degree_inequalities,
    classify_entropy,
    cyclotomic_polynomial,
    dynamical_degrees,
    euler_phi,
    strip_cyclotomic_factors,
    uniform_exponent,
)
from .groupspec import MatrixGroupSpec, SpecFormatError, emit_spec, load_spec_file, parse_spec
from .intervals import PrecisionError, RealInterval, max_root_modulus
from .liealg import (
    NilpotentLieAlgebra,
    derived_length,
    lie_closure,
    matrix_log_unipotent,
    nilpotency_class,
)
from .matrix import IntMatrix, RatMatrix
from .polynomial import Polynomial, all_roots_on_unit_circle
from .report import AnalyzeOptions, run_analyze, run_corpus
from .series import (
    SeriesReport,
    corollary_chain_check,
    essential_length,
    group_series_report,
    robinson_check,
)
from .unipotent import (
    TriangularizationCertificate,
    UnipotenceVerdict,
    certify_unipotent_group,
    is_unipotent,
    power_replacement,
    unipotent_pipeline,
)

__version__ = "0.1.0"

__all__ = [
    "AnalyzeOptions",
    "ConeMapAnalysis",
    "EntropyClassification",
    "EntropyKind",
    "GradedRepresentation",
    "IntMatrix",
    "MatrixGroupSpec",
    "NilpotentLieAlgebra",
    "Polynomial",
    "PolyhedralCone",
    "PrecisionError",
    "RatMatrix",
    "RealInterval",
    "SeriesReport",
    "SpecFormatError",
    "TriangularizationCertificate",
    "UnipotenceVerdict",
    "all_roots_on_unit_circle",
    "certify_unipotent_group",
    "check_degree_inequalities",
    "classify_entropy",
    "cone_from_rays",
    "corollary_chain_check",
    "cyclotomic_polynomial",
    "derived_length",
    "dynamical_degrees",
    "emit_spec",
    "essential_length",
    "euler_phi",
    "fujiki_lieberman_pipeline",
    "group_closure",
    "group_series_report",
    "interior_fixed_vector",
    "is_unipotent",
    "lie_closure",
    "load_spec_file",
    "matrix_log_unipotent",
    "max_root_modulus",
    "meng_zhang_report",
    "nilpotency_class",
    "parse_spec",
    "power_bounded_exact",
    "power_replacement",
    "preserves_cone",
    "robinson_check",
    "run_analyze",
    "run_corpus",
    "strip_cyclotomic_factors",
    "unipotent_pipeline",
    "uniform_exponent",
]

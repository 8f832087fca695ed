"""Nega-q-ary numeration, shift operators, and Salem-type functions."""

from .indexseq import IDENTITY, IndexSequence, continuity_condition, parse_index_sequence
from .numeration import (
    DigitSeq,
    DomainError,
    Interval,
    InvalidDigitError,
    LazyDigits,
    NumerationSystem,
    alternate_representation,
    branch_position,
    cylinder,
    digit_stream,
    digits_of,
    format_rational,
    is_nega_q_rational,
    parse_rational,
    value_of,
)
from .operators import ShiftPlan, apply_plan, delete_digit, shift
from .salem import (
    BoundedValue,
    ContinuityReport,
    CylinderScan,
    KIND_CONTINUOUS,
    KIND_IRRATIONAL,
    KIND_JUMP,
    MonotonicityReport,
    NotADistributionError,
    NotApplicableError,
    OneSidedLimits,
    PairWitness,
    SalemParams,
    cdf,
    classify_continuity,
    equation_residual,
    evaluate,
    evaluate_at,
    image_digits,
    increment,
    integral_closed_form,
    integral_riemann,
    monotonicity_report,
    one_sided_limits,
    sample_digit_values,
    sample_values,
    set_bounds,
)

__version__ = "0.1.0"

__all__ = [
    "BoundedValue",
    "ContinuityReport",
    "CylinderScan",
    "DigitSeq",
    "DomainError",
    "IDENTITY",
    "IndexSequence",
    "Interval",
    "InvalidDigitError",
    "KIND_CONTINUOUS",
    "KIND_IRRATIONAL",
    "KIND_JUMP",
    "LazyDigits",
    "MonotonicityReport",
    "NotADistributionError",
    "NotApplicableError",
    "NumerationSystem",
    "OneSidedLimits",
    "PairWitness",
    "SalemParams",
    "ShiftPlan",
    "alternate_representation",
    "apply_plan",
    "branch_position",
    "cdf",
    "classify_continuity",
    "continuity_condition",
    "cylinder",
    "delete_digit",
    "digit_stream",
    "digits_of",
    "equation_residual",
    "evaluate",
    "evaluate_at",
    "format_rational",
    "image_digits",
    "increment",
    "integral_closed_form",
    "integral_riemann",
    "is_nega_q_rational",
    "monotonicity_report",
    "one_sided_limits",
    "parse_index_sequence",
    "parse_rational",
    "sample_digit_values",
    "sample_values",
    "set_bounds",
    "shift",
    "value_of",
]

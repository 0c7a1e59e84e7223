"""Exact shifts of Bernstein-Sato roots for semi-weighted-homogeneous deformations."""

from .engine import (
    build_gm_table,
    coefficient_law_audit,
    g1_at_point,
    g1_by_monomials,
    g1_entry,
    g1_matrix,
    graded_dt_step,
    graded_reduce,
)
from .errors import BsshiftError
from .oracle import g1_oracle, g1_oracle_matrix, path_weight
from .polynomial import ParamPolynomial, parse_polynomial
from .rational import fmt, parse_rational
from .shifts import (
    ShiftReport,
    SubspaceSystem,
    max_root_shift_check,
    root_distribution_text,
    shiftable_roots,
    shifts_at_point,
    solitude,
    unshift_subspace,
)
from .singularity import (
    SingularityClass,
    check_m1,
    make_singularity,
    parse_descriptor,
    regime_check,
    spectrum,
)
from .strata import (
    classify_parameter,
    enumerate_bistable,
    generic_shift_pattern,
    is_bistable,
    minimal_generators,
    sg_membership,
)

__all__ = [
    "BsshiftError",
    "ParamPolynomial",
    "ShiftReport",
    "SingularityClass",
    "SubspaceSystem",
    "build_gm_table",
    "check_m1",
    "classify_parameter",
    "coefficient_law_audit",
    "enumerate_bistable",
    "fmt",
    "g1_at_point",
    "g1_by_monomials",
    "g1_entry",
    "g1_matrix",
    "g1_oracle",
    "g1_oracle_matrix",
    "generic_shift_pattern",
    "graded_dt_step",
    "graded_reduce",
    "is_bistable",
    "make_singularity",
    "max_root_shift_check",
    "minimal_generators",
    "parse_descriptor",
    "parse_polynomial",
    "parse_rational",
    "path_weight",
    "regime_check",
    "root_distribution_text",
    "sg_membership",
    "shiftable_roots",
    "shifts_at_point",
    "solitude",
    "spectrum",
    "unshift_subspace",
]

"""Exact-arithmetic tools for the moonshine coefficient identities.

The package verifies, with integer and rational arithmetic only, the chain
of identities tying the elliptic modular invariant to the monster Lie
algebra: the two-variable denominator product, the twisted Euler-Poincare
identities for the McKay-Thompson series, and the coefficient recursions
they imply.
"""

from __future__ import annotations

from .classes import (
    ClassTable,
    CoefficientFamily,
    EPReport,
    MissingCoefficients,
    euler_poincare_report,
    load_family,
    parse_table_text,
    serialize_table,
)
from .lattice import (
    GradedDims,
    LatticeVector,
    ProductReport,
    cartan_conditions,
    denominator_identity_report,
    dimension_product,
    gram,
    simple_roots,
    witt_dims,
)
from .modular import (
    EtaMonomial,
    EtaRecipe,
    dedekind_eta_power,
    delta,
    eisenstein,
    euler_product,
    expand_recipe,
    j_series,
    normalized_j,
)
from .recursion import (
    AuditReport,
    ContradictionError,
    Relation,
    SolveResult,
    coefficient_recursion,
    coefficient_relation,
    determinacy_audit,
    recursion_cross_check,
    solve_from_seeds,
)
from .series import BiSeries, UniSeries

__all__ = [
    "UniSeries",
    "BiSeries",
    "euler_product",
    "dedekind_eta_power",
    "eisenstein",
    "delta",
    "j_series",
    "normalized_j",
    "EtaMonomial",
    "EtaRecipe",
    "expand_recipe",
    "ClassTable",
    "CoefficientFamily",
    "MissingCoefficients",
    "parse_table_text",
    "serialize_table",
    "load_family",
    "euler_poincare_report",
    "EPReport",
    "LatticeVector",
    "gram",
    "simple_roots",
    "cartan_conditions",
    "witt_dims",
    "dimension_product",
    "GradedDims",
    "ProductReport",
    "denominator_identity_report",
    "Relation",
    "coefficient_relation",
    "coefficient_recursion",
    "recursion_cross_check",
    "ContradictionError",
    "SolveResult",
    "solve_from_seeds",
    "AuditReport",
    "determinacy_audit",
]
__version__ = "0.1.0"

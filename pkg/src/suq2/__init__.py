"""Numerics for the su_q(2) representation realized on the plane."""
from .qcore import (
    HalfInt,
    QParam,
    Regime,
    check_not_root_of_unity,
    inv_q_factorial,
    m_values,
    q_factorial,
    q_number,
    validate_triple,
)
from .qinner import (
    GramReport,
    InnerProductKind,
    adjoint_residual,
    b_one,
    gram,
    hermitian_symmetry_residual,
    inner,
    kind_for,
)
from .qops import (
    IrrepMatrices,
    PlaneFamily,
    RealizationParams,
    apply_casimir,
    apply_h_minus,
    apply_h_plus,
    apply_q2h3,
    apply_q_h3_power,
    casimir_matrix,
    combine,
    constant_family,
    dilate,
    matrix_irrep,
    monomial_family,
    psi_family,
    with_fixed_param,
)
from .qspecial import (
    QFunctionMethod,
    l_function,
    norm_constant,
    psi,
    q_finite_product,
    q_function,
    q_infinite_product,
    q_integral_exp,
    r_polynomial,
    vilenkin,
)
from .quadrature import (
    PlaneIntegral,
    QuadratureConfig,
    RadialMap,
    angular_node_count,
    integrate_plane,
    radial_integral,
    radial_rule,
)
from .report import ReportDocument, build_report
from .suites import SUITE_NAMES, Case, run_suite

__all__ = [
    "HalfInt", "QParam", "Regime", "check_not_root_of_unity",
    "inv_q_factorial", "m_values", "q_factorial", "q_number", "validate_triple",
    "QFunctionMethod", "l_function", "norm_constant", "psi",
    "q_finite_product", "q_function", "q_infinite_product", "q_integral_exp",
    "r_polynomial", "vilenkin",
    "PlaneIntegral", "QuadratureConfig", "RadialMap", "angular_node_count",
    "integrate_plane", "radial_integral", "radial_rule",
    "IrrepMatrices", "PlaneFamily", "RealizationParams", "apply_casimir",
    "apply_h_minus", "apply_h_plus", "apply_q2h3", "apply_q_h3_power",
    "casimir_matrix", "combine", "constant_family", "dilate", "matrix_irrep",
    "monomial_family", "psi_family", "with_fixed_param",
    "GramReport", "InnerProductKind", "adjoint_residual", "b_one", "gram",
    "hermitian_symmetry_residual", "inner", "kind_for",
    "ReportDocument", "build_report",
    "SUITE_NAMES", "Case", "run_suite",
]

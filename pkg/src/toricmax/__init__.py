"""Mod-2 homology of real toric varieties and a maximality certificate.

Typical use::

    from toricmax import projective, check_fan
    report = check_fan(projective(3))
    report.verdict  # "maximal_certified"
"""
from ._backend import BACKEND
from .exterior_complex import ExteriorComplex, build_exterior_complex, e2_dims, exterior_power
from .f2 import F2Matrix, F2Subspace, F2Vector, kernel_basis, rank, rref
from .fan import (
    Cone,
    Fan,
    FanError,
    builtin_fan,
    fan_to_json,
    hirzebruch,
    is_complete,
    load_fan,
    parse_fan,
    product_fan,
    projective,
    star_subdivision,
    validate_fan,
    weighted_p112,
)
from .lattice import saturate_span, smith_normal_form
from .orbit_complex import OrbitChainComplex, betti_real, build_orbit_complex, psi_matrix
from .report import (
    MaximalityReport,
    check_fan,
    emit_report,
    generate_corpus,
    read_report,
    report_to_json,
    run_check,
)
from .spectral import (
    FilteredComplexView,
    PageReport,
    check_s_condition,
    compute_pages,
    degenerates_at_one,
    s_table,
    verify_g0_matches_e1,
    verify_g1_equals_e2,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Cone",
    "ExteriorComplex",
    "F2Matrix",
    "F2Subspace",
    "F2Vector",
    "Fan",
    "FanError",
    "FilteredComplexView",
    "MaximalityReport",
    "OrbitChainComplex",
    "PageReport",
    "betti_real",
    "build_exterior_complex",
    "build_orbit_complex",
    "builtin_fan",
    "check_fan",
    "check_s_condition",
    "compute_pages",
    "degenerates_at_one",
    "e2_dims",
    "emit_report",
    "exterior_power",
    "fan_to_json",
    "generate_corpus",
    "hirzebruch",
    "is_complete",
    "kernel_basis",
    "load_fan",
    "parse_fan",
    "product_fan",
    "projective",
    "psi_matrix",
    "rank",
    "read_report",
    "report_to_json",
    "rref",
    "run_check",
    "s_table",
    "saturate_span",
    "smith_normal_form",
    "star_subdivision",
    "validate_fan",
    "verify_g0_matches_e1",
    "verify_g1_equals_e2",
    "weighted_p112",
]

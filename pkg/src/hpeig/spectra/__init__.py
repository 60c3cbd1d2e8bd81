"""Closed forms, brute-force spectra, eigenfunctions and the three-variable catalog."""
from .brute import (
    BlockReport,
    EigenRecord,
    SpectrumReport,
    spectrum_on_v_lambda,
    symmetric_eigenvalue_brute,
    t_sum_matrix,
    trace_isotypic_brute,
)
from .catalog import CatalogEntry, check_catalog, n3_catalog
from .closed import (
    eig_skew_closed,
    eig_sym_closed,
    eig_sym_profile_matrix,
    eig_sym_series,
    eig_two_block,
    h_complete,
    h_subsets,
    trace_isotypic_closed,
)
from .eigenfunctions import EigenvalueCollisionError, JointEigenfunction, jack_polynomial, joint_eigenbasis
from .factor import Factor, factor_rational

__all__ = [
    "BlockReport",
    "CatalogEntry",
    "EigenRecord",
    "EigenvalueCollisionError",
    "Factor",
    "JointEigenfunction",
    "SpectrumReport",
    "check_catalog",
    "eig_skew_closed",
    "eig_sym_closed",
    "eig_sym_profile_matrix",
    "eig_sym_series",
    "eig_two_block",
    "factor_rational",
    "h_complete",
    "h_subsets",
    "jack_polynomial",
    "joint_eigenbasis",
    "n3_catalog",
    "spectrum_on_v_lambda",
    "symmetric_eigenvalue_brute",
    "t_sum_matrix",
    "trace_isotypic_brute",
    "trace_isotypic_closed",
]

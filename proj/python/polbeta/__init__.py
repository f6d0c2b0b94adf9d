"""Exact threshold computations for polarized abelian varieties."""

from ._core import (
    OracleMismatch,
    certify,
    chi,
    general_beta,
    is_ample,
    k_group,
    max_np_arithmetic,
    np_threshold,
    polarization_type,
    search,
    surface_beta,
    surface_table,
)

__all__ = [
    "OracleMismatch",
    "certify",
    "chi",
    "general_beta",
    "is_ample",
    "k_group",
    "max_np_arithmetic",
    "np_threshold",
    "polarization_type",
    "search",
    "surface_beta",
    "surface_table",
]

"""Clifford algebra engine for Cl(m,m) built on the extended Fock basis."""

from .algebra import (
    EfbElement,
    GammaEigen,
    Multivector,
    PairCounter,
    efb_product,
    factor_product,
    gamma_eigen,
    identity_multivector,
    mv_product,
    reorder_sign,
    signature_from_string,
    signature_to_string,
    volume_element,
)
from .config import AlgebraConfig, ScalarMode
from .gamma import (
    GammaBlade,
    GammaMultivector,
    blade_product,
    efb_to_gamma,
    gamma_product,
    gamma_to_efb,
)
from .matrix_rep import (
    EfbMatrixLayout,
    RepMatrix,
    column_ideal_check,
    from_matrix,
    gamma_matrix,
    layout,
    row_ideal_check,
    to_matrix,
)
from .spinors import (
    NullPlane,
    Spinor,
    SpinorSpace,
    WittVector,
    annihilator,
    family_bound_certificate,
    g_flip,
    is_simple,
    max_family_size,
    mutual_intersection_family_check,
    totally_simple_plane,
    two_term_simplicity,
    vector_action,
    weyl_subspace_basis,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraConfig",
    "EfbElement",
    "EfbMatrixLayout",
    "GammaBlade",
    "GammaEigen",
    "GammaMultivector",
    "Multivector",
    "NullPlane",
    "PairCounter",
    "RepMatrix",
    "ScalarMode",
    "Spinor",
    "SpinorSpace",
    "WittVector",
    "annihilator",
    "blade_product",
    "column_ideal_check",
    "efb_product",
    "efb_to_gamma",
    "factor_product",
    "family_bound_certificate",
    "from_matrix",
    "g_flip",
    "gamma_eigen",
    "gamma_matrix",
    "gamma_product",
    "gamma_to_efb",
    "identity_multivector",
    "is_simple",
    "layout",
    "max_family_size",
    "mutual_intersection_family_check",
    "mv_product",
    "reorder_sign",
    "row_ideal_check",
    "signature_from_string",
    "signature_to_string",
    "to_matrix",
    "totally_simple_plane",
    "two_term_simplicity",
    "vector_action",
    "volume_element",
    "weyl_subspace_basis",
]

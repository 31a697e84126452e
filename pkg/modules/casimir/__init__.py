"""
Lie-algebra computations on homogeneous bundles: Killing form, Cartan split,
Casimir potential and symbol checks.
"""

from .algebra import (
    CartanSplit,
    LieAlgebraData,
    abelian,
    bianchi_defect,
    cartan_split,
    curvature_from_brackets,
    killing_form,
    load_algebra,
    sectional_curvature,
    sl2,
)
from .representation import (
    Representation,
    adjoint_representation,
    exterior_power_action,
    isotropy_matrix,
    isotropy_representation,
    load_representation,
    trivial_representation,
)
from .casimir import (
    CasimirSplit,
    PotentialComparison,
    SymbolReport,
    casimir_split,
    commutator_defect,
    covariant_derivative_rule,
    full_casimir,
    kp_identity_defect,
    potential_via_curvature,
    split_consistency_defect,
    symbol_compat_check,
    transport_oracle,
)

__all__ = [
    'CartanSplit', 'LieAlgebraData', 'abelian', 'bianchi_defect', 'cartan_split',
    'curvature_from_brackets', 'killing_form', 'load_algebra', 'sectional_curvature', 'sl2',
    'Representation', 'adjoint_representation', 'exterior_power_action', 'isotropy_matrix',
    'isotropy_representation', 'load_representation', 'trivial_representation', 'CasimirSplit',
    'PotentialComparison', 'SymbolReport', 'casimir_split', 'commutator_defect',
    'covariant_derivative_rule', 'full_casimir', 'kp_identity_defect', 'potential_via_curvature',
    'split_consistency_defect', 'symbol_compat_check', 'transport_oracle',
]

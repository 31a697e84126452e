"""
Riccati and Jacobi comparison engine.
"""

from .profiles import (
    CurvatureProfile,
    OperatorPath,
    RiccatiInit,
    constant_profile,
    convergence_order,
    make_grid,
    random_profile,
    sinusoidal_profile,
)
from .riccati import (
    ComparisonMargins,
    comparison_margins,
    fund_form_envelope,
    model_shape_matrix,
    model_shape_operator,
    riccati_solve,
    scalar_envelope,
)
from .jacobi import (
    RauchReport,
    SpaceFormModel,
    endpoint_jacobi_defect,
    gronwall_bound,
    jacobi_solve,
    log_derivative,
    model_jacobi_solve,
    perturbed_jacobi_solve,
    rauch_check,
)
from .transverse import (
    CollarModel,
    DecayFit,
    DecaySample,
    LaplacianSplit,
    boundary_curvature,
    collar_pullback_split,
    decay_sample,
    hessian_pullback_defect,
    transverse_decay_experiment,
)

__all__ = [
    'CurvatureProfile', 'OperatorPath', 'RiccatiInit', 'constant_profile', 'convergence_order',
    'make_grid', 'random_profile', 'sinusoidal_profile', 'ComparisonMargins',
    'comparison_margins', 'fund_form_envelope', 'model_shape_matrix', 'model_shape_operator',
    'riccati_solve', 'scalar_envelope', 'RauchReport', 'SpaceFormModel',
    'endpoint_jacobi_defect', 'gronwall_bound', 'jacobi_solve', 'log_derivative',
    'model_jacobi_solve', 'perturbed_jacobi_solve', 'rauch_check', 'CollarModel', 'DecayFit',
    'DecaySample', 'LaplacianSplit', 'boundary_curvature', 'collar_pullback_split', 'decay_sample',
    'hessian_pullback_defect', 'transverse_decay_experiment',
]

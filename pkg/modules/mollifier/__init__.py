"""
Frame-averaged smoothing of distance functions and smooth convex approximation.
"""

from .charts import (
    EuclideanChart,
    FrameField,
    PoincareDiskChart,
    coordinate_frame,
    disk_point,
    origin_distance,
    rotated_frame,
    rotation,
    translation,
)
from .smoothing import (
    MollifierConfig,
    ScalarField,
    SmoothingBounds,
    affine_field,
    bump_density,
    constant_field,
    equivariance_check,
    euclidean_disk_distance,
    field_gradient,
    frame_independence,
    hyperbolic_disk_distance,
    monotonicity_defect,
    plateau_profile,
    smooth,
    smooth_gradient,
    smooth_hessian,
    smoothing_bounds,
)
from .papa import PapaParameters, PapaReport, geodesic_curvature, papa_parameters, papa_pipeline

__all__ = [
    'EuclideanChart', 'FrameField', 'PoincareDiskChart', 'coordinate_frame', 'disk_point',
    'origin_distance', 'rotated_frame', 'rotation', 'translation', 'MollifierConfig', 'ScalarField',
    'SmoothingBounds', 'affine_field', 'bump_density', 'constant_field', 'equivariance_check',
    'euclidean_disk_distance', 'field_gradient', 'frame_independence', 'hyperbolic_disk_distance',
    'monotonicity_defect', 'plateau_profile', 'smooth', 'smooth_gradient', 'smooth_hessian',
    'smoothing_bounds', 'PapaParameters', 'PapaReport', 'geodesic_curvature', 'papa_parameters',
    'papa_pipeline',
]

"""
Hyperbolic-plane geometry: isometries, convex bodies and group presentations.
"""

from .isometry import (
    IdealPoint,
    Isometry,
    IsometryClass,
    classify,
    distance,
    displacement,
    point,
    rotation_about,
    translation_along,
    geodesic_midpoint,
    unit_tangent_away,
)
from .convex import (
    ConvexBody,
    DiskBody,
    GeodesicBody,
    GeodesicSegment,
    IdealPolygon,
    Projection,
    body_from_json,
    convex_hull_ideal,
    imaginary_axis,
    midpoint_convexity_defect,
    project_convex,
)
from .groups import (
    GroupPresentation,
    OrbitDirection,
    ThinPartResult,
    cyclic,
    limit_set_sample,
    orbit,
    orbit_directions,
    same_ideal_sets,
    thin_part_margin,
    visual_angle,
    word_ball,
    word_shells,
)

__all__ = [
    'IdealPoint', 'Isometry', 'IsometryClass', 'classify', 'distance', 'displacement',
    'point', 'rotation_about', 'translation_along', 'geodesic_midpoint', 'unit_tangent_away',
    'ConvexBody', 'DiskBody', 'GeodesicBody', 'GeodesicSegment', 'IdealPolygon', 'Projection',
    'body_from_json', 'convex_hull_ideal', 'imaginary_axis', 'midpoint_convexity_defect',
    'project_convex', 'GroupPresentation', 'OrbitDirection', 'ThinPartResult', 'cyclic',
    'limit_set_sample', 'orbit_directions', 'visual_angle', 'word_shells',
    'orbit', 'same_ideal_sets', 'thin_part_margin', 'word_ball',
]

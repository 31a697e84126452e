"""
Finite-difference spectrum bottoms on model hyperbolic ends.
"""

from .schrodinger import Schrodinger1D, eigen_bottom, from_potential
from .ends import (
    WarpedEnd,
    cusp_end,
    cylinder_end,
    funnel_end,
    make_end,
    radial_reduce,
    warp_consistency,
)
from .essential import (
    RefinementStudy,
    SpectrumReport,
    SurfaceDescriptor,
    SurfaceReport,
    channel_bottoms,
    cross_check,
    ess_bottom,
    extrapolate,
    persson_bound,
    refinement_study,
    surface_experiment,
)
from .weyl import WeylReport, weyl_sequence, weyl_sequences

__all__ = [
    'Schrodinger1D', 'eigen_bottom', 'from_potential', 'WarpedEnd', 'cusp_end', 'cylinder_end',
    'funnel_end', 'make_end', 'radial_reduce', 'warp_consistency', 'RefinementStudy',
    'SpectrumReport', 'SurfaceDescriptor', 'SurfaceReport', 'channel_bottoms', 'cross_check',
    'ess_bottom', 'extrapolate', 'persson_bound', 'refinement_study', 'surface_experiment',
    'WeylReport', 'weyl_sequence', 'weyl_sequences',
]

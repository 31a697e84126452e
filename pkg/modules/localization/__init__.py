"""
Partitions of unity, IMS localization and cutoff decay on model domains.
"""

from .grids import Grid1D, Grid2D, as_section, pointwise_norm2
from .partition import (
    Bump,
    PartitionOfUnity,
    make_partition,
    random_cover,
    smoothstep,
    tensor_partition,
)
from .operators import LocalizedOperator, from_functions
from .ims import (
    BestPiece,
    DefectReport,
    PointwiseCheck,
    best_piece,
    first_order_defect,
    form_minimum,
    ims_identity_defect,
    ims_refinement,
    operator_lower_bound,
    rayleigh,
    second_order_defect,
)
from .sequences import (
    QuasiMode,
    WindowSequence,
    moving_window_sequence,
    plateau,
    quasi_mode,
    quasi_mode_sequence,
)
from .cutoff import CutoffProfile, boundary_bump, constant_bump, cutoff_decay_profile

__all__ = [
    'Grid1D', 'Grid2D', 'as_section', 'pointwise_norm2', 'Bump', 'PartitionOfUnity',
    'make_partition', 'random_cover', 'smoothstep', 'tensor_partition', 'LocalizedOperator',
    'from_functions', 'BestPiece', 'DefectReport', 'PointwiseCheck', 'best_piece',
    'first_order_defect', 'form_minimum', 'ims_identity_defect', 'ims_refinement',
    'operator_lower_bound', 'rayleigh', 'second_order_defect', 'QuasiMode', 'WindowSequence',
    'moving_window_sequence', 'plateau', 'quasi_mode', 'quasi_mode_sequence', 'CutoffProfile',
    'boundary_bump', 'constant_bump', 'cutoff_decay_profile',
]

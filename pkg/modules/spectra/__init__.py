"""
Closed-form essential-spectrum tables for hyperbolic spaces.
"""

from .descriptors import SpectrumDescriptor
from .tables import (
    DiracContext,
    HyperbolicSpaceSpec,
    MCKEAN_NOTE,
    delta0,
    delta_k,
    delta_k_exact,
    dirac_table,
    dolbeault_spectrum,
    dolbeault_table,
    hodge_spectrum,
    hodge_table,
    mckean_bound,
    mckean_printed_form,
)

__all__ = [
    'SpectrumDescriptor', 'DiracContext', 'HyperbolicSpaceSpec', 'MCKEAN_NOTE', 'delta0',
    'delta_k', 'delta_k_exact', 'dirac_table', 'dolbeault_spectrum', 'dolbeault_table',
    'hodge_spectrum', 'hodge_table', 'mckean_bound', 'mckean_printed_form',
]

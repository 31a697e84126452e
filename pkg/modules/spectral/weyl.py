"""
Weyl Sequences

Plateau quasi-modes pushed out along a channel certify λ ∈ spec_ess(-d² + W)
without the eigensolver: the normalized residuals tend to 0.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence

from ..localization.sequences import quasi_mode_sequence
from .ends import make_end

logger = logging.getLogger(__name__)

DEFAULT_LAMBDAS = (0.25, 0.5, 1.0)


@dataclass
class WeylReport:
    label: str
    lam: float
    lengths: List[float]
    residuals: List[float]

    @property
    def decreasing(self):
        return all(b < a for a, b in zip(self.residuals, self.residuals[1:]))

    @property
    def passed(self):
        return self.decreasing and self.residuals[-1] <= 0.5 * self.residuals[0]

    def to_json(self):
        return {'label': self.label, 'lambda': self.lam, 'lengths': self.lengths,
                'residuals': self.residuals, 'passed': self.passed}


def weyl_sequence(end, lam, lengths: Sequence[float] = (10.0, 20.0, 40.0, 80.0), offset=2.0, h=1e-2):
    """Residuals ‖(-d² + W - λ)u_L‖/‖u_L‖ on windows [offset, offset + 2L]"""
    if isinstance(end, str):
        end = make_end(end)
    modes = quasi_mode_sequence(end.potential, lam, end.asymptotic_threshold(), lengths, offset, h)
    report = WeylReport(end.label(), float(lam), [float(L) for L in lengths], [m.residual for m in modes])
    logger.debug(f"Weyl sequence {end.label()} at λ={lam}: {['%.2e' % r for r in report.residuals]}")
    return report


def weyl_sequences(kinds=("cusp", "funnel"), lambdas=DEFAULT_LAMBDAS, **kwargs):
    return [weyl_sequence(kind, lam, **kwargs) for kind in kinds for lam in lambdas]

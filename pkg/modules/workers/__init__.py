"""
Worker threads for running experiments in pySpecLab.
"""

from .experiment_worker import ExperimentWorker

__all__ = [
    'ExperimentWorker',
]

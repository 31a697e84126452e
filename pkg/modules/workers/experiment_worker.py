"""
Experiment Worker Thread

This module contains the worker thread that runs one configured experiment and
writes its report.
"""

import logging
import time
import traceback

import numpy as np
from PyQt6.QtCore import QThread, pyqtSignal

from ..core import ProgressTracker
from ..experiments import RunContext, experiment_report, get_experiment, write_experiment_report


class ExperimentWorker(QThread):
    """Worker thread for a single experiment"""
    finished = pyqtSignal(dict)
    progress = pyqtSignal(int, int, str)  # completed, total, message
    error = pyqtSignal(str)

    def __init__(self, spec, seed, out_dir, position=0, total=1):
        super().__init__()
        self.spec = spec
        self.seed = seed
        self.out_dir = out_dir
        self.position = position
        self.total = total
        self.logger = logging.getLogger('pySpecLab')

    def run(self):
        started = time.perf_counter()
        ctx = RunContext(self.out_dir, self.spec.id)
        error_message = None
        ProgressTracker.emit_progress(self.progress, self.position, self.total, "Running", self.spec.id)
        try:
            entry = get_experiment(self.spec.name)
            rng = np.random.default_rng([self.seed, self.spec.index])
            result = entry.run(self.spec.params, rng, ctx)
        except Exception as e:
            error_message = f"Experiment {self.spec.id} failed: {e}"
            self.logger.error(error_message)
            self.logger.debug(traceback.format_exc())
            self.error.emit(error_message)
            result = {'passed': False, 'error': str(e), 'error_type': type(e).__name__}

        report = experiment_report(self.spec, self.seed, result, ctx.artifacts)
        try:
            write_experiment_report(self.out_dir, report)
        except Exception as e:
            error_message = f"Could not write report for {self.spec.id}: {e}"
            self.logger.error(error_message)
            self.error.emit(error_message)
            report['passed'] = False

        elapsed = time.perf_counter() - started
        verdict = "pass" if report['passed'] else "fail"
        self.logger.info(f"Experiment {self.spec.id} finished: {verdict}")
        ProgressTracker.emit_progress(self.progress, self.position + 1, self.total, "Finished", self.spec.id)
        self.finished.emit({
            'id': self.spec.id,
            'index': self.spec.index,
            'passed': report['passed'],
            'error': error_message,
            'elapsed': elapsed,
        })

"""
Lab Runner

Logging setup and the batch runner. The runner owns a QCoreApplication event
loop and keeps up to `jobs` ExperimentWorker threads busy until every selected
experiment has reported.
"""

import fnmatch
import logging
import os
from collections import deque
from datetime import datetime, timezone
from logging.handlers import RotatingFileHandler

from PyQt6.QtCore import QCoreApplication, QObject

from ..config import apply_settings
from ..experiments import build_summary, write_metadata, write_summary
from ..workers import ExperimentWorker
from .progress_tracker import ProgressTracker

# library modules log under the package name, the runner under 'pySpecLab'
LOGGER_NAMES = ('pySpecLab', __name__.split('.')[0])


def setup_logging(level='INFO', log_file='~/pyspeclab.log'):
    """Configure application logging"""
    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    handlers = []

    # File handler with rotation
    if log_file:
        path = os.path.expanduser(log_file)
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        file_handler = RotatingFileHandler(path, maxBytes=1024*1024, backupCount=5)
        file_handler.setFormatter(formatter)
        handlers.append(file_handler)

    # Console handler
    console_handler = logging.StreamHandler()
    console_handler.setFormatter(formatter)
    handlers.append(console_handler)

    for name in LOGGER_NAMES:
        logger = logging.getLogger(name)
        for old in list(logger.handlers):
            logger.removeHandler(old)
            old.close()
        logger.setLevel(getattr(logging, str(level).upper(), logging.INFO))
        logger.propagate = False
        for handler in handlers:
            logger.addHandler(handler)
    return logging.getLogger('pySpecLab')


class BatchRunner(QObject):
    """Runs the experiments of a RunConfig concurrently and writes the run reports"""

    def __init__(self, config, version, name_filter=None):
        super().__init__()
        self.config = config
        self.version = version
        self.name_filter = name_filter
        self.logger = logging.getLogger('pySpecLab')
        self.out_dir = os.path.abspath(os.path.expanduser(config.out))
        self.specs = self.select()
        self.pending = deque()
        self.active = {}
        self.results = {}
        self.app = None

    def select(self):
        """Experiments whose name or id matches the filter glob, in config order"""
        if not self.name_filter:
            return list(self.config.experiments)
        return [spec for spec in self.config.experiments
                if fnmatch.fnmatch(spec.name, self.name_filter) or fnmatch.fnmatch(spec.id, self.name_filter)]

    def run(self):
        """
        Run every selected experiment.

        Returns:
            int: 0 if every verdict passed, 1 otherwise
        """
        os.makedirs(self.out_dir, exist_ok=True)
        apply_settings(self.config.settings)
        started = datetime.now(timezone.utc)
        jobs = max(1, int(self.config.jobs))
        self.logger.info(f"Running {len(self.specs)} experiment(s) with {jobs} job(s), "
                         f"seed {self.config.seed}, output {self.out_dir}")

        if self.specs:
            self.app = QCoreApplication.instance() or QCoreApplication([])
            self.pending = deque(enumerate(self.specs))
            for _ in range(min(jobs, len(self.specs))):
                self.start_next()
            self.app.exec()

        finished = datetime.now(timezone.utc)
        records = [(spec, self.results[spec.id]['passed'], self.results[spec.id]['error'])
                   for spec in self.specs]
        config_name = os.path.basename(self.config.source) if self.config.source else None
        summary = build_summary(self.config.seed, records, config_name)
        write_summary(self.out_dir, summary)
        write_metadata(self.out_dir, self.version, started, finished, jobs,
                       {spec.id: self.results[spec.id]['elapsed'] for spec in self.specs})
        self.logger.info(f"Run finished: {summary['total'] - summary['failed']}/{summary['total']} passed")
        return 0 if summary['passed'] else 1

    def start_next(self):
        position, spec = self.pending.popleft()
        worker = ExperimentWorker(spec, self.config.seed, self.out_dir, position, len(self.specs))
        worker.progress.connect(self.on_progress)
        worker.error.connect(self.on_error)
        worker.finished.connect(self.on_finished)
        self.active[spec.id] = worker
        worker.start()

    def on_progress(self, current, total, message):
        self.logger.debug(message)

    def on_error(self, message):
        self.logger.warning(message)

    def on_finished(self, record):
        worker = self.active.pop(record['id'], None)
        if worker is not None:
            worker.wait()
        self.results[record['id']] = record
        self.logger.info(ProgressTracker.format_verdict(record['id'], record['passed'], record['elapsed']))
        if self.pending:
            self.start_next()
        elif not self.active:
            self.app.quit()

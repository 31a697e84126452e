"""
Run Reports

Per-experiment JSON reports, the run summary and the metadata file. Reports
and the summary are byte-identical for the same config and seed; timestamps,
durations and the version go to run_metadata.json only.
"""

import os
import platform

from ..core.utilities import atomic_write_json, format_timestamp

SUMMARY_FILE = 'summary.json'
METADATA_FILE = 'run_metadata.json'


def experiment_report(spec, seed, result, artifacts=()):
    """Document written to <id>.json"""
    return {
        'id': spec.id,
        'name': spec.name,
        'index': spec.index,
        'seed': seed,
        'params': spec.params,
        'passed': bool(result.get('passed', False)),
        'artifacts': list(artifacts),
        'result': result,
    }


def write_experiment_report(out_dir, report):
    path = os.path.join(out_dir, f"{report['id']}.json")
    atomic_write_json(path, report)
    return path


def build_summary(seed, records, config_name=None):
    """records: (spec, passed, error) in config order"""
    experiments = []
    for spec, passed, error in records:
        entry = {'id': spec.id, 'name': spec.name, 'passed': bool(passed), 'report': f"{spec.id}.json"}
        if error:
            entry['error'] = error
        experiments.append(entry)
    return {
        'config': config_name,
        'seed': seed,
        'experiments': experiments,
        'total': len(experiments),
        'failed': sum(not e['passed'] for e in experiments),
        'passed': all(e['passed'] for e in experiments),
    }


def write_summary(out_dir, summary):
    path = os.path.join(out_dir, SUMMARY_FILE)
    atomic_write_json(path, summary)
    return path


def write_metadata(out_dir, version, started, finished, jobs, timings):
    """Timestamps and per-experiment wall times; excluded from the deterministic reports"""
    path = os.path.join(out_dir, METADATA_FILE)
    atomic_write_json(path, {
        'version': version,
        'started': format_timestamp(started),
        'finished': format_timestamp(finished),
        'elapsed': (finished - started).total_seconds(),
        'jobs': jobs,
        'python': platform.python_version(),
        'timings': timings,
    })
    return path

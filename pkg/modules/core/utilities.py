"""
Utility Functions

This module contains utility functions used throughout the lab: timestamps,
atomic report writing and stable hashing of numeric inputs.
"""

import csv
import hashlib
import io
import json
import os
import tempfile
from datetime import datetime, timezone

import numpy as np


def format_timestamp(moment=None):
    """
    Convert a UTC datetime to local timezone and format it as a string.

    Args:
        moment: datetime object (assumed UTC when naive); defaults to now

    Returns:
        str: Formatted datetime string in local timezone ('YYYY-MM-DD HH:MM:SS')
    """
    if moment is None:
        moment = datetime.now(timezone.utc)
    if moment.tzinfo is None:
        # Treat as UTC if no timezone info
        moment = moment.replace(tzinfo=timezone.utc)
    return moment.astimezone().strftime('%Y-%m-%d %H:%M:%S')


def atomic_write_text(path, text):
    """Write text to path through a temporary file and an atomic rename"""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix='.tmp-', suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='') as handle:
            handle.write(text)
        os.replace(tmp_path, path)
    except Exception:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise


def to_jsonable(value):
    """Convert numpy scalars/arrays and complex numbers into JSON-friendly values"""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        value = float(value)
        if np.isnan(value):
            return "nan"
        if np.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": to_jsonable(value.real), "im": to_jsonable(value.imag)}
    return value


def atomic_write_json(path, payload):
    """Write a JSON document with sorted keys so reports are byte-stable"""
    text = json.dumps(to_jsonable(payload), indent=2, sort_keys=True) + "\n"
    atomic_write_text(path, text)


def atomic_write_csv(path, header, rows, comments=None):
    """Write CSV rows, optionally preceded by '# key=value' metadata lines"""
    buffer = io.StringIO()
    for key, value in sorted((comments or {}).items()):
        buffer.write(f"# {key}={value}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([to_jsonable(v) for v in row])
    atomic_write_text(path, buffer.getvalue())


def matrix_hash(*arrays):
    """Short stable hash of numeric arrays (used to tag exported paths)"""
    digest = hashlib.sha256()
    for array in arrays:
        data = np.ascontiguousarray(np.asarray(array, dtype=float))
        digest.update(str(data.shape).encode())
        digest.update(np.round(data, 12).tobytes())
    return digest.hexdigest()[:12]

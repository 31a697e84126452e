import json
import math
import os
import tempfile
import unittest
from datetime import datetime, timezone

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from modules.core.utilities import (
    atomic_write_csv,
    atomic_write_json,
    atomic_write_text,
    format_timestamp,
    matrix_hash,
    to_jsonable,
)


class TestUtilityFunctions(unittest.TestCase):
    def setUp(self):
        """Set up a scratch directory."""
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def test_atomic_write_leaves_no_temporaries(self):
        """Test that the temp file is renamed over the target."""
        path = os.path.join(self.tmp.name, 'nested', 'report.txt')
        atomic_write_text(path, "first")
        atomic_write_text(path, "second")
        with open(path) as f:
            self.assertEqual(f.read(), "second")
        self.assertEqual(os.listdir(os.path.dirname(path)), ['report.txt'])

    def test_json_is_sorted_and_stable(self):
        """Test that reports with the same content are byte-identical."""
        a = os.path.join(self.tmp.name, 'a.json')
        b = os.path.join(self.tmp.name, 'b.json')
        atomic_write_json(a, {'z': 1, 'a': np.float64(0.25), 'm': np.arange(3)})
        atomic_write_json(b, {'m': [0, 1, 2], 'a': 0.25, 'z': 1})
        with open(a) as fa, open(b) as fb:
            self.assertEqual(fa.read(), fb.read())

    def test_csv_with_comments(self):
        """Test metadata comments precede the header."""
        path = os.path.join(self.tmp.name, 'table.csv')
        atomic_write_csv(path, ['k', 'delta_k'], [(0, 1.0), (1, 0.0)], comments={'field': 'R', 'ell': 3})
        with open(path) as f:
            lines = f.read().splitlines()
        self.assertEqual(lines, ['# ell=3', '# field=R', 'k,delta_k', '0,1.0', '1,0.0'])

    def test_to_jsonable_special_values(self):
        """Test numpy types, non-finite floats and complex numbers."""
        value = to_jsonable({'flag': np.bool_(True), 'n': np.int64(4), 'inf': math.inf,
                             'nan': float('nan'), 'z': 1 + 2j})
        self.assertEqual(value, {'flag': True, 'n': 4, 'inf': 'inf', 'nan': 'nan', 'z': {'re': 1.0, 'im': 2.0}})

    @given(st.lists(st.floats(allow_nan=True, allow_infinity=True), max_size=20))
    @settings(max_examples=50, deadline=None)
    def test_to_jsonable_always_serializes(self, values):
        """Test that any float list becomes strict JSON."""
        json.dumps(to_jsonable(np.array(values, dtype=float)), allow_nan=False)

    def test_matrix_hash(self):
        """Test the hash ignores noise below 1e-12 and sees shape changes."""
        a = np.eye(2)
        self.assertEqual(matrix_hash(a), matrix_hash(a + 1e-15))
        self.assertNotEqual(matrix_hash(a), matrix_hash(a.reshape(4)))
        self.assertEqual(len(matrix_hash(a)), 12)

    def test_format_timestamp(self):
        """Test formatting of naive and aware datetimes."""
        naive = datetime(2024, 1, 2, 3, 4, 5)
        aware = naive.replace(tzinfo=timezone.utc)
        self.assertEqual(format_timestamp(naive), format_timestamp(aware))
        self.assertRegex(format_timestamp(), r'^\d{4}-\d{2}-\d{2} \d{2}:\d{2}:\d{2}$')


if __name__ == '__main__':
    unittest.main()

"""
Unit tests for utility functions.
"""

import json
import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase

from apps.utils.serialization import (
    UNDEFINED,
    complex_matrix,
    complex_pair,
    dumps,
    matrix_from_pairs,
    write_csv,
    write_json,
)


class ComplexEncodingTestCase(SimpleTestCase):
    """Tests for the [re, im] encoding."""

    def test_pair(self):
        """Complex numbers become two floats."""
        self.assertEqual(complex_pair(1 - 2j), [1.0, -2.0])
        self.assertEqual(complex_pair(3), [3.0, 0.0])

    def test_matrix_is_row_major(self):
        """Row index comes first."""
        matrix = np.array([[1, 2j], [3, 4]])
        encoded = complex_matrix(matrix)
        self.assertEqual(encoded[0][1], [0.0, 2.0])
        self.assertEqual(encoded[1][0], [3.0, 0.0])
        np.testing.assert_array_equal(matrix_from_pairs(encoded), matrix)


class DumpsTestCase(SimpleTestCase):
    """Tests for deterministic JSON."""

    def test_sorted_keys_and_indent(self):
        """Keys are sorted and indented by two spaces."""
        text = dumps({"b": 1, "a": np.float64(0.5)})
        self.assertEqual(text, '{\n  "a": 0.5,\n  "b": 1\n}\n')

    def test_numpy_values(self):
        """Arrays, numpy scalars and complex values become plain JSON."""
        document = json.loads(dumps({"v": np.arange(3), "z": 1j, "n": np.int64(4)}))
        self.assertEqual(document, {"v": [0, 1, 2], "z": [0.0, 1.0], "n": 4})

    def test_non_finite_becomes_null(self):
        """NaN is written as null."""
        self.assertEqual(json.loads(dumps({"x": float("nan")})), {"x": None})


class WritersTestCase(SimpleTestCase):
    """Tests for the file writers."""

    def test_json_is_byte_identical(self):
        """Writing the same document twice gives the same bytes."""
        with tempfile.TemporaryDirectory() as directory:
            first = write_json(Path(directory) / "a" / "out.json", {"x": [1.5, 2]})
            second = write_json(Path(directory) / "b" / "out.json", {"x": [1.5, 2]})
            self.assertEqual(first.read_bytes(), second.read_bytes())

    def test_csv_marks_undefined(self):
        """None cells are written as the undefined marker."""
        with tempfile.TemporaryDirectory() as directory:
            path = write_csv(Path(directory) / "t.csv", ["input", "p"], [["00", 0.25], ["10", None]])
            lines = path.read_text(encoding="utf-8").splitlines()
        self.assertEqual(lines, ["input,p", "00,0.25", f"10,{UNDEFINED}"])

import math

import numpy as np
import pytest

from gapscope import lp_space, norm, polytope_space
from gapscope.errors import InvalidParameterError
from gapscope.io import (
    format_float,
    read_matrix_csv,
    read_points_csv,
    read_space_json,
    write_matrix_csv,
    write_points_csv,
    write_space_json,
)


def test_format_float_round_trips():
    for x in (0.1, 1.0 / 3.0, 1e-300, 123456.789, math.pi, -0.0):
        assert float(format_float(x)) == x


def test_points_round_trip(tmp_path):
    pts = np.random.default_rng(1).normal(size=(7, 3))
    path = tmp_path / "pts.csv"
    write_points_csv(path, pts)
    back = read_points_csv(path)
    assert np.array_equal(back, pts)  # repr round-trip is exact


def test_points_blank_lines_skipped(tmp_path):
    path = tmp_path / "pts.csv"
    path.write_text("1.0,2.0\n\n3.0,4.0\n\n")
    assert np.array_equal(read_points_csv(path), np.array([[1.0, 2.0], [3.0, 4.0]]))


def test_points_ragged_rejected(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1.0,2.0\n3.0\n")
    with pytest.raises(InvalidParameterError):
        read_points_csv(path)


def test_points_garbage_rejected(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1.0,banana\n")
    with pytest.raises(InvalidParameterError):
        read_points_csv(path)


def test_points_empty_rejected(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("")
    with pytest.raises(InvalidParameterError):
        read_points_csv(path)


def test_matrix_round_trip(tmp_path):
    a = np.random.default_rng(2).normal(size=(5, 5))
    path = tmp_path / "m.csv"
    write_matrix_csv(path, a)
    assert np.array_equal(read_matrix_csv(path), a)


def test_matrix_must_be_square(tmp_path):
    path = tmp_path / "rect.csv"
    path.write_text("1.0,2.0,3.0\n4.0,5.0,6.0\n")
    with pytest.raises(InvalidParameterError):
        read_matrix_csv(path)


def test_space_json_round_trip(tmp_path):
    rng = np.random.default_rng(3)
    square = np.array([[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]])
    for space in (lp_space(3, 1.5), lp_space(2, math.inf), polytope_space(square)):
        path = tmp_path / "space.json"
        write_space_json(path, space)
        back = read_space_json(path)
        assert back.kind == space.kind and back.dim == space.dim
        for _ in range(10):
            x = rng.normal(size=space.dim)
            assert norm(back, x) == norm(space, x)


def test_missing_file_raises():
    with pytest.raises(InvalidParameterError):
        read_points_csv("/nonexistent/nope.csv")

import math

import numpy as np
import pytest

from invgeom import INFINITE, ExtendedMetric, ValidationError, all_pairs_bfs
from invgeom.extmetric import metric_from_int_table


def test_path_graph_distances():
    adj = {0: (1,), 1: (0, 2), 2: (1,)}
    m = all_pairs_bfs(3, lambda u: adj[u])
    assert m.dist(0, 2) == 2
    assert m.dist(0, 0) == 0
    assert m.validate() is m


def test_disconnected_components():
    adj = {0: (1,), 1: (0,), 2: ()}
    m = all_pairs_bfs(3, lambda u: adj[u])
    assert m.dist(0, 2) == INFINITE
    assert math.isinf(m.table[0, 2])
    assert m.components() == ((0, 1), (2,))
    assert m.max_finite() == 1


def test_int_table_wrapper():
    m = metric_from_int_table([[0, 1, -1], [1, 0, -1], [-1, -1, 0]])
    assert m.dist(0, 1) == 1
    assert m.dist(0, 2) == INFINITE
    m.validate()


def test_validate_rejects_asymmetry():
    with pytest.raises(ValidationError, match="symmetric"):
        metric_from_int_table([[0, 1], [2, 0]]).validate()


def test_validate_rejects_nonzero_diagonal():
    with pytest.raises(ValidationError, match="diagonal"):
        metric_from_int_table([[1]]).validate()


def test_validate_rejects_identified_points():
    with pytest.raises(ValidationError, match="distance 0"):
        metric_from_int_table([[0, 0], [0, 0]]).validate()


def test_validate_rejects_triangle_violation():
    bad = [[0, 1, 5], [1, 0, 1], [5, 1, 0]]
    with pytest.raises(ValidationError, match="triangle"):
        metric_from_int_table(bad).validate()


def test_validate_rejects_negative():
    table = np.array([[0.0, -2.0], [-2.0, 0.0]])
    with pytest.raises(ValidationError, match="negative"):
        ExtendedMetric(table).validate()


def test_sampled_triangle_check():
    bad = [[0, 1, 5], [1, 0, 1], [5, 1, 0]]
    with pytest.raises(ValidationError, match="triangle"):
        metric_from_int_table(bad).validate(triangle_cap=2, samples=2000)

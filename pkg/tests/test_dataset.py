"""Database construction, centering, variance weighting, CSV round-trips."""

import numpy as np
import pytest

from ecamine import (
    DataMatrix,
    NoiseModel,
    build_matrix,
    center_and_weigh,
    read_table_csv,
    standardize,
    table_csv_string,
)


def test_build_l5_constant_rules():
    F = build_matrix(5)
    assert F.values[0, 0] == 0  # rule 0 maps everything to 000
    assert F.values[0, 255] == 7  # rule 255 maps everything to 111


def test_build_l5_rule90_hand_checked():
    F = build_matrix(5)
    assert F.values[0b00100, 90] == 5


def test_build_shape_and_labels():
    F = build_matrix(4)
    assert F.values.shape == (16, 256)
    assert F.n == 16 and F.p == 256
    assert list(F.col_labels[:3]) == [0, 1, 2]
    assert list(F.row_labels[:3]) == [0, 1, 2]


def test_build_rule_subset_sorted_and_deduped():
    F = build_matrix(4, rules=(90, 30, 90))
    assert list(F.col_labels) == [30, 90]
    full = build_matrix(4)
    assert np.array_equal(F.values, full.values[:, [30, 90]])


def test_build_validation():
    with pytest.raises(ValueError):
        build_matrix(2)
    with pytest.raises(ValueError):
        build_matrix(21)
    with pytest.raises(ValueError):
        build_matrix(5, rules=())
    with pytest.raises(ValueError):
        build_matrix(5, rules=(300,))


def test_build_is_deterministic():
    noise = NoiseModel(p=0.3, seed=12)
    a = build_matrix(5, noise=noise)
    b = build_matrix(5, noise=noise)
    assert np.array_equal(a.values, b.values)


def test_center_drops_constant_rules():
    X = center_and_weigh(build_matrix(4))
    assert X.dropped_columns == (0, 255)
    assert X.p == 254
    assert np.max(np.abs(X.values.sum(axis=0))) <= 1e-9 * X.n


def test_constant_column_statistics():
    F = build_matrix(5)
    col_0 = F.values[:, 0]
    assert col_0.mean() == 0.0 and col_0.var() == 0.0
    col_255 = F.values[:, 255]  # constant 111 = 7
    assert col_255.mean() == 7.0 and col_255.var() == 0.0


@pytest.mark.parametrize("l", range(4, 13))
def test_dropped_columns_all_lengths(l):
    X = center_and_weigh(build_matrix(l))
    assert X.dropped_columns == (0, 255)


def test_noisy_database_keeps_every_column():
    X = center_and_weigh(build_matrix(5, noise=NoiseModel(p=0.2, seed=3)))
    assert X.dropped_columns == ()
    assert X.p == 256


def test_all_degenerate_columns_error():
    F = build_matrix(4, rules=(0, 255))
    with pytest.raises(ValueError, match="no variance"):
        center_and_weigh(F)


def test_standardize_unit_variance():
    X = standardize(center_and_weigh(build_matrix(4)))
    means = X.values.mean(axis=0)
    variances = np.mean(X.values**2, axis=0)
    assert np.max(np.abs(means)) < 1e-9
    assert np.max(np.abs(variances - 1.0)) < 1e-9


def test_standardize_scales_by_std():
    values = np.array([[-2.0, -1.0], [2.0, 1.0], [-2.0, -1.0], [2.0, 1.0]])
    F = DataMatrix(
        values=values + 5.0,
        row_labels=np.arange(4),
        col_labels=np.array([10, 20]),
        l=2,
    )
    X = standardize(center_and_weigh(F))
    assert X.variances[0] == pytest.approx(4.0)
    assert np.allclose(X.values[:, 0], values[:, 0] / 2.0)
    assert np.allclose(X.values[:, 1], values[:, 1])


def test_standardize_idempotent():
    X = standardize(center_and_weigh(build_matrix(4)))
    again = standardize(X)
    assert np.allclose(X.values, again.values, rtol=1e-12, atol=0.0)


def test_standardize_rejects_zero_variance():
    from ecamine.dataset import CenteredMatrix

    bad = CenteredMatrix(
        values=np.zeros((4, 1)),
        means=np.array([0.0]),
        variances=np.array([0.0]),
        dropped_columns=(),
        row_labels=np.arange(4),
        col_labels=np.array([1]),
        l=2,
    )
    with pytest.raises(RuntimeError):
        standardize(bad)


def test_standardized_covariance_trace_l4():
    X = standardize(center_and_weigh(build_matrix(4)))
    trace = np.sum(np.mean(X.values**2, axis=0))
    assert trace == pytest.approx(254.0, abs=1e-6)


def test_csv_layout_and_round_trip(tmp_path):
    F = build_matrix(5, rules=(0, 90, 255))
    text = table_csv_string(F)
    lines = text.splitlines()
    assert lines[0] == "pattern,0,90,255"
    assert lines[1] == "00000,0,0,7"
    assert len(lines) == 33
    path = tmp_path / "table.csv"
    path.write_text(text)
    patterns, rules, values = read_table_csv(path)
    assert patterns[0] == "00000" and patterns[-1] == "11111"
    assert list(rules) == [0, 90, 255]
    assert np.array_equal(values, F.values)


def test_csv_round_trip_centered(tmp_path):
    X = standardize(center_and_weigh(build_matrix(4)))
    path = tmp_path / "x.csv"
    path.write_text(table_csv_string(X))
    patterns, rules, values = read_table_csv(path)
    assert np.array_equal(values, X.values)  # repr round-trips exactly
    assert list(rules) == list(X.col_labels)
    assert patterns[0] == "0000"

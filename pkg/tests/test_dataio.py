"""Dataset pipeline tests: parsing, scaling, sensor code, splitting."""

import numpy as np
import pytest

from xbarlearn.dataio import (Dataset, DegenerateFeature, FeatureScaler,
                              MissingFile, ParseError, decode_outputs,
                              encode_targets, load_iris, normalize,
                              prepare_dataset, sensor_expand, split,
                              stratified_split)


# -- loading -----------------------------------------------------------------


def test_bundled_iris_shape_and_balance():
    X, labels = load_iris()
    assert X.shape == (150, 4)
    assert labels.shape == (150,)
    assert np.array_equal(np.bincount(labels), [50, 50, 50])
    assert X.min() > 0  # all iris measurements are positive lengths


def test_missing_file_raises():
    with pytest.raises(MissingFile):
        load_iris("/nonexistent/iris.csv")


def test_parse_error_reports_line_number(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b,c,d,species\n"
                    "5.1,3.5,1.4,0.2,setosa\n"
                    "4.9,3.0,1.4,oops,setosa\n")
    with pytest.raises(ParseError, match="line 3"):
        load_iris(path)


def test_parse_error_on_unknown_species(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b,c,d,species\n5.1,3.5,1.4,0.2,tulipa\n")
    with pytest.raises(ParseError, match="tulipa"):
        load_iris(path)


def test_parse_error_on_column_count(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b,c,d,species\n5.1,3.5,1.4,setosa\n")
    with pytest.raises(ParseError, match="line 2"):
        load_iris(path)


def test_parse_error_on_empty_file(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("")
    with pytest.raises(ParseError):
        load_iris(path)


# -- scaling -----------------------------------------------------------------


def test_scaler_maps_train_range_to_unit_interval():
    X = np.array([[1.0, 10.0], [3.0, 30.0], [2.0, 20.0]])
    scaler = FeatureScaler.fit(X)
    out = scaler.transform(X)
    assert np.allclose(out.min(axis=0), 0.0)
    assert np.allclose(out.max(axis=0), 1.0)
    assert np.allclose(normalize(X, scaler), out)


def test_scaler_clamps_out_of_range_values():
    scaler = FeatureScaler.fit(np.array([[0.0], [1.0]]))
    assert np.array_equal(scaler.transform(np.array([[-5.0], [5.0]])),
                          [[0.0], [1.0]])


def test_degenerate_feature_rejected():
    with pytest.raises(DegenerateFeature):
        FeatureScaler.fit(np.array([[1.0, 2.0], [1.0, 3.0]]))


# -- sensor expansion --------------------------------------------------------


def test_sensor_code_values():
    out = sensor_expand(np.array([[0.0, 0.25, 1.0]]))
    assert out.shape == (1, 12)
    # feature-major layout: x, 1-x, tent, 1-tent per feature
    assert np.allclose(out[0, 0:4], [0.0, 1.0, 0.0, 1.0])
    assert np.allclose(out[0, 4:8], [0.25, 0.75, 0.5, 0.5])
    assert np.allclose(out[0, 8:12], [1.0, 0.0, 0.0, 1.0])


def test_sensor_pairs_sum_to_one():
    rng = np.random.default_rng(13)
    X = rng.uniform(0, 1, size=(50, 4))
    out = sensor_expand(X)
    assert out.shape == (50, 16)
    assert np.allclose(out[:, 0::4] + out[:, 1::4], 1.0)
    assert np.allclose(out[:, 2::4] + out[:, 3::4], 1.0)
    # hence every row sums to two channels per pair times four features
    assert np.allclose(out.sum(axis=1), 8.0)
    assert np.all(out >= 0) and np.all(out <= 1)


def test_sensor_expand_rejects_unnormalized_input():
    with pytest.raises(ValueError):
        sensor_expand(np.array([[1.5]]))


# -- targets -----------------------------------------------------------------


def test_targets_one_vs_rest_levels():
    Y = encode_targets(np.array([0, 2]))
    assert np.array_equal(Y, [[1.0, -1.0, -1.0], [-1.0, -1.0, 1.0]])
    with pytest.raises(ValueError):
        encode_targets(np.array([3]))


def test_decode_outputs_argmax():
    y = np.array([[0.2, -0.5, 0.9], [-0.9, -0.1, -0.8]])
    assert np.array_equal(decode_outputs(y), [2, 1])


# -- splitting ---------------------------------------------------------------


def test_stratified_split_largest_remainder_counts():
    _, labels = load_iris()
    train_idx, test_idx = split(labels, seed=7)
    assert train_idx.shape == (100,)
    assert test_idx.shape == (50,)
    # 100 of 150 balanced 3-class samples: 34 + 33 + 33
    counts = sorted(np.bincount(labels[train_idx]), reverse=True)
    assert counts == [34, 33, 33]
    assert np.array_equal(np.bincount(labels[test_idx]), [16, 17, 17])
    # disjoint and complete
    union = np.sort(np.concatenate([train_idx, test_idx]))
    assert np.array_equal(union, np.arange(150))


def test_split_is_seed_deterministic():
    _, labels = load_iris()
    a = split(labels, seed=5)
    b = split(labels, seed=5)
    c = split(labels, seed=6)
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])
    assert not np.array_equal(a[0], c[0])


def test_split_rejects_bad_sizes():
    _, labels = load_iris()
    with pytest.raises(ValueError):
        stratified_split(labels, 0, np.random.default_rng(0))
    with pytest.raises(ValueError):
        stratified_split(labels, 150, np.random.default_rng(0))


# -- end-to-end dataset -------------------------------------------------------


def test_prepare_dataset_shapes_and_ranges(iris_dataset):
    ds = iris_dataset
    assert isinstance(ds, Dataset)
    assert ds.X_train.shape == (100, 16)
    assert ds.Y_train.shape == (100, 3)
    assert ds.X_test.shape == (50, 16)
    assert ds.Y_test.shape == (50, 3)
    assert np.all(ds.X_train >= 0) and np.all(ds.X_train <= 1)
    assert np.all(ds.X_test >= 0) and np.all(ds.X_test <= 1)
    assert set(np.unique(ds.Y_train)) == {-1.0, 1.0}


def test_prepare_dataset_scales_on_train_statistics_only():
    ds = prepare_dataset(seed=0)
    X, labels = load_iris()
    # the train split spans [0, 1] exactly in the linear channels
    assert np.allclose(ds.X_train[:, 0::4].min(axis=0), 0.0)
    assert np.allclose(ds.X_train[:, 0::4].max(axis=0), 1.0)

import numpy as np
import pytest

from kpcaig import (Dataset, InputError, ParseError, load_labels, load_matrix,
                    save_matrix, standardize)


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_load_small_csv(tmp_path):
    p = write(tmp_path / "m.csv", "id,geneA,geneB\ns1,1.0,2.0\ns2,3.5,-1.0\ns3,0.0,0.25\n")
    d = load_matrix(p)
    assert d.p == 2 and d.n == 3
    assert d.feature_names == ("geneA", "geneB")
    assert d.sample_ids == ("s1", "s2", "s3")
    assert d.matrix[1, 0] == 3.5


def test_load_tsv_autodetect(tmp_path):
    p = write(tmp_path / "m.tsv", "id\tf1\tf2\ns1\t1\t2\ns2\t3\t4\n")
    d = load_matrix(p)
    assert d.matrix.tolist() == [[1.0, 2.0], [3.0, 4.0]]


def test_transposed_round_trip(tmp_path):
    p1 = write(tmp_path / "rows.csv", "id,f1,f2\ns1,1,2\ns2,3,4\ns3,5,6\n")
    p2 = write(tmp_path / "cols.csv", "id,s1,s2,s3\nf1,1,3,5\nf2,2,4,6\n")
    a = load_matrix(p1, orientation="rows")
    b = load_matrix(p2, orientation="cols")
    assert np.array_equal(a.matrix, b.matrix)
    assert a.feature_names == b.feature_names
    assert a.sample_ids == b.sample_ids


def test_na_cell_names_coordinates(tmp_path):
    p = write(tmp_path / "m.csv", "id,f1,f2\ns1,1.0,NA\ns2,2.0,3.0\n")
    with pytest.raises(ParseError, match=r"'NA' at row 2, column 3"):
        load_matrix(p)


def test_inf_cell_rejected(tmp_path):
    p = write(tmp_path / "m.csv", "id,f1\ns1,inf\n")
    with pytest.raises(ParseError, match="non-finite"):
        load_matrix(p)


def test_ragged_rows(tmp_path):
    p = write(tmp_path / "m.csv", "id,f1,f2\ns1,1.0\n")
    with pytest.raises(ParseError, match="row 2"):
        load_matrix(p)


def test_duplicate_feature_names(tmp_path):
    p = write(tmp_path / "m.csv", "id,f1,f1\ns1,1.0,2.0\n")
    with pytest.raises(ParseError, match="duplicate"):
        load_matrix(p)


def test_bad_orientation(tmp_path):
    p = write(tmp_path / "m.csv", "id,f1\ns1,1.0\n")
    with pytest.raises(InputError):
        load_matrix(p, orientation="diagonal")


def test_load_labels(tmp_path):
    p = write(tmp_path / "y.txt", "0\n1\n1\n0\n")
    assert load_labels(p).tolist() == [0, 1, 1, 0]
    bad = write(tmp_path / "bad.txt", "0\nx\n")
    with pytest.raises(ParseError):
        load_labels(bad)


def test_dataset_validation():
    with pytest.raises(InputError):
        Dataset.from_matrix([[np.nan, 1.0]])
    with pytest.raises(InputError):
        Dataset(np.zeros((2, 2)), ("a", "a"), ("s1", "s2"))
    with pytest.raises(InputError):
        Dataset(np.zeros((2, 2)), ("a", "b"), ("s1",))


def test_standardize_columns():
    d = standardize(Dataset.from_matrix([[1.0], [2.0], [3.0]]))
    want = np.array([-1.224744871391589, 0.0, 1.224744871391589])
    assert np.abs(d.matrix[:, 0] - want).max() < 1e-12
    assert d.standardized


def test_standardize_idempotent():
    rng = np.random.default_rng(0)
    a = standardize(Dataset.from_matrix(rng.normal(size=(20, 4))))
    b = standardize(a)
    assert np.abs(a.matrix - b.matrix).max() < 1e-10


def test_standardize_constant_column_flagged():
    X = np.array([[1.0, 5.0], [2.0, 5.0], [3.0, 5.0]])
    d = standardize(Dataset.from_matrix(X))
    assert d.constant_features == (1,)
    assert np.array_equal(d.matrix[:, 1], np.zeros(3))


def test_save_load_round_trip(tmp_path):
    rng = np.random.default_rng(1)
    d = standardize(Dataset.from_matrix(rng.normal(size=(7, 3))))
    out = tmp_path / "out.tsv"
    save_matrix(d, out)
    back = load_matrix(str(out))
    assert np.abs(back.matrix - d.matrix).max() < 1e-12
    assert back.feature_names == d.feature_names
    assert back.sample_ids == d.sample_ids


def test_select_and_subset():
    d = Dataset.from_matrix(np.arange(12.0).reshape(3, 4), labels=[0, 1, 0])
    sub = d.select_features([2, 0])
    assert sub.feature_names == ("f2", "f0")
    assert sub.matrix.tolist() == [[2.0, 0.0], [6.0, 4.0], [10.0, 8.0]]
    rows = d.subset_samples([1])
    assert rows.sample_ids == ("s1",)
    assert rows.labels.tolist() == [1]

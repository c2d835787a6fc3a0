import numpy as np
import pytest

from epso import (
    ContractError,
    DataError,
    Dataset,
    cfo_index,
    complexity_index,
    load_csv,
    normalize_minmax,
    save_csv,
    stratified_folds,
    synth_dataset,
)


def write(tmp_path, text, name="data.csv"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


# ---------------------------------------------------------------------------
# load_csv
# ---------------------------------------------------------------------------

def test_labels_mapped_in_first_occurrence_order(tmp_path):
    d = load_csv(write(tmp_path, "1.0,2.0,A\n3.0,4.0,B\n5.0,6.0,A\n"))
    assert d.labels.tolist() == [0, 1, 0]
    assert d.n_features == 2


def test_header_auto_detection(tmp_path):
    d = load_csv(write(tmp_path, "x,y,label\n1,2,A\n3,4,B\n"))
    assert d.feature_names == ("x", "y")
    assert d.n_samples == 2


def test_label_column_by_name_and_first(tmp_path):
    d = load_csv(write(tmp_path, "cls,x,y\nA,1,2\nB,3,4\n"), label_column="cls")
    assert d.feature_names == ("x", "y")
    d2 = load_csv(write(tmp_path, "A,1,2\nB,3,4\n", "f.csv"), label_column="first")
    assert d2.labels.tolist() == [0, 1]


def test_unparseable_cell_names_row_and_column(tmp_path):
    with pytest.raises(DataError, match="row 3") as exc:
        load_csv(write(tmp_path, "x,y,label\n1,2,A\n1,oops,B\n"))
    assert "y" in str(exc.value)


def test_single_class_rejected(tmp_path):
    with pytest.raises(DataError, match="single class"):
        load_csv(write(tmp_path, "1,2,A\n3,4,A\n"))


def test_missing_cells_drop_rows_with_warning(tmp_path):
    p = write(tmp_path, "1,2,A\n3,,B\n5,6,B\n")
    with pytest.warns(UserWarning, match="dropped 1"):
        d = load_csv(p)
    assert d.n_samples == 2


def test_missing_file(tmp_path):
    with pytest.raises(DataError):
        load_csv(tmp_path / "absent.csv")


def test_save_load_roundtrip(tmp_path):
    d = synth_dataset(20, 5, 2, seed=3)
    p = tmp_path / "rt.csv"
    save_csv(d, p)
    d2 = load_csv(p)
    assert np.allclose(d2.features, d.features)
    # labels are re-encoded by first occurrence, so check the partition instead
    remap = {}
    for old, new in zip(d.labels.tolist(), d2.labels.tolist()):
        assert remap.setdefault(old, new) == new


# ---------------------------------------------------------------------------
# normalization
# ---------------------------------------------------------------------------

def make_dataset(cols, labels=(0, 1, 0)):
    x = np.column_stack(cols).astype(float)
    return Dataset(x, np.array(labels), tuple(f"f{i}" for i in range(x.shape[1])), "t")


def test_normalize_minmax_column_mapping():
    d = normalize_minmax(make_dataset([[0.0, 5.0, 10.0]]))
    assert d.features[:, 0].tolist() == [0.0, 0.5, 1.0]


def test_normalize_constant_column_becomes_zero():
    d = normalize_minmax(make_dataset([[7.0, 7.0, 7.0]]))
    assert d.features[:, 0].tolist() == [0.0, 0.0, 0.0]


def test_normalize_idempotent():
    d = normalize_minmax(make_dataset([[1.0, 4.0, 9.0], [2.0, 2.0, 8.0]]))
    d2 = normalize_minmax(d)
    assert np.array_equal(d.features, d2.features)
    assert np.all(d.features >= 0) and np.all(d.features <= 1)


# ---------------------------------------------------------------------------
# stratified folds
# ---------------------------------------------------------------------------

def test_folds_partition_and_balance():
    d = synth_dataset(10, 3, 1, class_count=2, seed=0)
    folds = stratified_folds(d, 2, seed=1)
    assert len(folds) == 2
    union = np.sort(np.concatenate(folds))
    assert union.tolist() == list(range(10))
    for fold in folds:
        assert fold.size == 5
        per_class = np.bincount(d.labels[fold], minlength=2)
        assert np.all(np.abs(per_class - 2.5) <= 0.5)


def test_folds_disjoint_and_per_class_balanced():
    d = synth_dataset(53, 4, 2, class_count=3, seed=5)
    folds = stratified_folds(d, 5, seed=2)
    seen = np.concatenate(folds)
    assert len(seen) == len(set(seen.tolist())) == 53
    for c in range(3):
        counts = [int(np.sum(d.labels[f] == c)) for f in folds]
        assert max(counts) - min(counts) <= 1


def test_folds_deterministic():
    d = synth_dataset(30, 4, 2, seed=8)
    a = stratified_folds(d, 3, seed=4)
    b = stratified_folds(d, 3, seed=4)
    assert all(np.array_equal(x, y) for x, y in zip(a, b))


def test_folds_reduced_to_smallest_class_with_warning():
    labels = np.array([0] * 10 + [1] * 3)
    d = Dataset(np.random.default_rng(0).normal(size=(13, 2)), labels, ("a", "b"), "t")
    with pytest.warns(UserWarning, match="reducing folds"):
        folds = stratified_folds(d, 10, seed=0)
    assert len(folds) == 3


def test_folds_k_too_small():
    d = synth_dataset(10, 2, 1, seed=0)
    with pytest.raises(ContractError):
        stratified_folds(d, 1, seed=0)


# ---------------------------------------------------------------------------
# complexity index
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("c,f,o,expected", [(26, 15010, 308, 1267), (2, 2000, 62, 65), (4, 2308, 82, 113)])
def test_cfo_index_reference_rows(c, f, o, expected):
    assert abs(round(cfo_index(c, f, o)) - expected) <= 1


def test_complexity_index_on_dataset():
    d = synth_dataset(62, 2000, 5, class_count=2, seed=0)
    assert round(complexity_index(d)) == 65


# ---------------------------------------------------------------------------
# synthetic generator
# ---------------------------------------------------------------------------

def test_synth_deterministic():
    a = synth_dataset(40, 12, 3, seed=9)
    b = synth_dataset(40, 12, 3, seed=9)
    assert np.array_equal(a.features, b.features)
    assert np.array_equal(a.labels, b.labels)
    assert a.name == b.name


def test_synth_records_informative_indices_in_name():
    d = synth_dataset(40, 12, 3, seed=9)
    assert "inf[" in d.name
    inside = d.name.split("inf[")[1].rstrip("]")
    idx = [int(i) for i in inside.split(",")]
    assert len(idx) == 3 and all(0 <= i < 12 for i in idx)


def test_synth_all_or_none_informative():
    d = synth_dataset(20, 4, 4, seed=1)
    assert d.n_features == 4
    d0 = synth_dataset(20, 4, 0, seed=1)
    assert "inf[]" in d0.name


def test_synth_parameter_validation():
    with pytest.raises(DataError):
        synth_dataset(20, 4, 5, seed=0)
    with pytest.raises(DataError):
        synth_dataset(20, 4, 1, class_count=1, seed=0)


def test_dataset_rejects_single_class():
    with pytest.raises(DataError):
        Dataset(np.zeros((3, 2)), np.zeros(3, dtype=int), ("a", "b"), "t")

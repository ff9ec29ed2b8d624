"""File parsing, dataset pairing, label mapping, and pooled statistics."""

import numpy as np
import pytest

from fdtsc import (
    DATA_ROOT_ENV,
    DataError,
    compute_stats,
    data_root,
    dataset_manifest,
    load_ucr_file,
    load_ucr_pair,
    manifest_row,
)
from fdtsc.core import LabeledDataset, TimeSeries

from conftest import write_split


class TestFileParsing:
    def test_tab_separated(self, tmp_path):
        p = write_split(tmp_path, "T", "TRAIN", [("1", [0.5, 0.25, -1.0])], sep="\t")
        d = load_ucr_file(p)
        assert d.length == 3
        assert d.series[0].label == 1
        assert d.series[0].values.tolist() == [0.5, 0.25, -1.0]

    def test_comma_separated(self, tmp_path):
        p = write_split(tmp_path, "T", "TRAIN", [("2", [1.0, 2.0])], sep=",")
        d = load_ucr_file(p)
        assert d.series[0].label == 2
        assert d.series[0].values.tolist() == [1.0, 2.0]

    def test_whitespace_separated(self, tmp_path):
        p = tmp_path / "plain.txt"
        p.write_text("1  0.5 0.25\n2  1.5 1.25\n")
        d = load_ucr_file(p)
        assert len(d.series) == 2
        assert d.series[1].values.tolist() == [1.5, 1.25]

    def test_float_formatted_integer_labels(self, tmp_path):
        p = tmp_path / "f.tsv"
        p.write_text("1.0000000e+00\t0.5\t0.6\n2.0\t0.7\t0.8\n")
        d = load_ucr_file(p)
        assert d.labels.tolist() == [1, 2]

    def test_negative_integer_labels_pass_through(self, tmp_path):
        p = tmp_path / "n.tsv"
        p.write_text("-1\t0.1\t0.2\n1\t0.3\t0.4\n")
        d = load_ucr_file(p)
        assert sorted(d.labels.tolist()) == [-1, 1]

    def test_blank_lines_skipped(self, tmp_path):
        p = tmp_path / "b.tsv"
        p.write_text("\n1\t0.1\t0.2\n\n\n2\t0.3\t0.4\n\n")
        assert len(load_ucr_file(p).series) == 2

    def test_nan_error_names_location(self, tmp_path):
        p = tmp_path / "bad.tsv"
        p.write_text("1\t0.1\t0.2\n1\t0.3\tNaN\n")
        with pytest.raises(DataError, match=r"bad\.tsv:2: non-finite value"):
            load_ucr_file(p)

    def test_unparseable_value_names_location(self, tmp_path):
        p = tmp_path / "bad.tsv"
        p.write_text("1\t0.1\t0.2\n1\t0.3\tx\n")
        with pytest.raises(DataError, match=r"bad\.tsv:2: bad value 'x'"):
            load_ucr_file(p)

    def test_ragged_rows_name_location(self, tmp_path):
        p = tmp_path / "r.tsv"
        p.write_text("1\t0.1\t0.2\n1\t0.3\n")
        with pytest.raises(DataError, match=r"r\.tsv:2: length mismatch: expected 2, got 1"):
            load_ucr_file(p)

    def test_label_only_row_rejected(self, tmp_path):
        p = tmp_path / "short.tsv"
        p.write_text("1\n")
        with pytest.raises(DataError, match=r"short\.tsv:1: need a label"):
            load_ucr_file(p)

    def test_empty_file_rejected(self, tmp_path):
        p = tmp_path / "empty.tsv"
        p.write_text("")
        with pytest.raises(DataError, match="no data rows"):
            load_ucr_file(p)

    def test_missing_file_rejected(self, tmp_path):
        with pytest.raises(DataError, match="cannot open"):
            load_ucr_file(tmp_path / "absent.tsv")

    def test_dataset_named_from_stem_by_default(self, tmp_path):
        p = tmp_path / "Widget_TRAIN.tsv"
        p.write_text("1\t0.0\t1.0\n")
        assert load_ucr_file(p).name == "Widget_TRAIN"
        assert load_ucr_file(p, name="Widget").name == "Widget"


class TestLabelMapping:
    def test_string_names_mapped_sorted(self, tmp_path):
        p = tmp_path / "s.tsv"
        p.write_text("dog\t0.1\t0.2\ncat\t0.3\t0.4\ndog\t0.5\t0.6\n")
        d = load_ucr_file(p)
        # cat < dog in sorted order, so cat=1, dog=2
        assert d.labels.tolist() == [2, 1, 2]

    def test_mapping_is_input_order_independent(self, tmp_path):
        a = tmp_path / "a.tsv"
        a.write_text("x\t0.1\t0.2\ny\t0.3\t0.4\n")
        b = tmp_path / "b.tsv"
        b.write_text("y\t0.1\t0.2\nx\t0.3\t0.4\n")
        da, db = load_ucr_file(a), load_ucr_file(b)
        assert da.labels.tolist() == [1, 2]
        assert db.labels.tolist() == [2, 1]

    def test_mixed_text_forces_full_remap(self, tmp_path):
        # one non-integer name means every label goes through the text map
        p = tmp_path / "m.tsv"
        p.write_text("3\t0.1\t0.2\nalpha\t0.3\t0.4\n")
        d = load_ucr_file(p)
        assert sorted(d.labels.tolist()) == [1, 2]

    def test_pair_mapping_spans_both_splits(self, tmp_path):
        # "ant" appears only in TEST; the union mapping still gives it
        # the same id everywhere
        write_split(tmp_path, "P", "TRAIN", [("bee", [0.1, 0.2]), ("cow", [0.3, 0.4])])
        write_split(tmp_path, "P", "TEST", [("ant", [0.5, 0.6]), ("cow", [0.7, 0.8])])
        train, test = load_ucr_pair(tmp_path, "P")
        assert train.labels.tolist() == [2, 3]  # ant=1, bee=2, cow=3
        assert test.labels.tolist() == [1, 3]


class TestPairLoading:
    def test_pair_roundtrip(self, synthetic_root):
        train, test = load_ucr_pair(synthetic_root, "AlphaSet")
        assert train.name == test.name == "AlphaSet"
        assert len(train.series) == len(test.series) == 8
        assert train.length == test.length == 16

    def test_extension_probing(self, tmp_path):
        write_split(tmp_path, "C", "TRAIN", [("1", [0.1, 0.2])], sep=",", ext=".csv")
        write_split(tmp_path, "C", "TEST", [("1", [0.3, 0.4])], sep=",", ext=".csv")
        train, test = load_ucr_pair(tmp_path, "C")
        assert train.length == test.length == 2

    def test_bare_extension_probing(self, tmp_path):
        d = tmp_path / "B"
        d.mkdir()
        (d / "B_TRAIN").write_text("1\t0.1\t0.2\n")
        (d / "B_TEST").write_text("1\t0.3\t0.4\n")
        train, test = load_ucr_pair(tmp_path, "B")
        assert train.length == 2

    def test_missing_split_rejected(self, tmp_path):
        write_split(tmp_path, "HalfSet", "TRAIN", [("1", [0.1, 0.2])])
        with pytest.raises(DataError, match="no TEST file for 'HalfSet'"):
            load_ucr_pair(tmp_path, "HalfSet")

    def test_split_length_mismatch_rejected(self, tmp_path):
        write_split(tmp_path, "L", "TRAIN", [("1", [0.1, 0.2])])
        write_split(tmp_path, "L", "TEST", [("1", [0.1, 0.2, 0.3])])
        with pytest.raises(DataError, match="train length 2 differs from test length 3"):
            load_ucr_pair(tmp_path, "L")


class TestComputeStats:
    def test_two_point_dataset(self):
        d = LabeledDataset("d", (TimeSeries([-1.0, 1.0], label=1),))
        s = compute_stats(d)
        assert s.mu == 0.0
        assert s.sigma == 1.0

    def test_pooled_not_per_series(self):
        # per-series stats would normalize each row; pooling must not
        d = LabeledDataset(
            "d",
            (TimeSeries([0.0, 0.0], label=1), TimeSeries([2.0, 2.0], label=2)),
        )
        s = compute_stats(d)
        assert s.mu == 1.0
        assert s.sigma == 1.0

    def test_value_permutation_invariance(self):
        rng = np.random.default_rng(5)
        values = rng.standard_normal((6, 10))
        d1 = LabeledDataset("a", tuple(TimeSeries(v, label=1) for v in values))
        d2 = LabeledDataset("b", tuple(TimeSeries(v, label=1) for v in values[::-1]))
        s1, s2 = compute_stats(d1), compute_stats(d2)
        assert s1.mu == pytest.approx(s2.mu, abs=1e-12)
        assert s1.sigma == pytest.approx(s2.sigma, abs=1e-12)

    def test_population_sigma(self):
        d = LabeledDataset("d", (TimeSeries([1.0, 2.0, 3.0], label=1),))
        assert compute_stats(d).sigma == pytest.approx(np.sqrt(2.0 / 3.0), abs=1e-12)

    def test_degenerate_dataset_rejected(self):
        d = LabeledDataset(
            "flat",
            (TimeSeries([0.0, 0.0], label=1), TimeSeries([0.0, 0.0], label=2)),
        )
        with pytest.raises(DataError, match="degenerate dataset"):
            compute_stats(d)


class TestManifest:
    def test_row_count(self):
        assert len(dataset_manifest()) == 29

    def test_unique_names(self):
        names = [r.name for r in dataset_manifest()]
        assert len(set(names)) == 29

    @pytest.mark.parametrize(
        "name,type_,size,classes,length",
        [
            ("Crop", "Image", 16800, 24, 46),
            ("CinCECGTorso", "Sensor", 1380, 4, 1639),
            ("ItalyPowerDemand", "Sensor", 1029, 2, 24),
            ("Wafer", "Sensor", 6164, 2, 152),
            ("NonInvasiveFetalECGThorax2", "ECG", 1965, 42, 750),
        ],
    )
    def test_spot_values(self, name, type_, size, classes, length):
        row = manifest_row(name)
        assert row is not None
        assert (row.type, row.size, row.classes, row.length) == (type_, size, classes, length)

    def test_unknown_name_returns_none(self):
        assert manifest_row("NoSuchSet") is None

    def test_all_fields_positive(self):
        for row in dataset_manifest():
            assert row.size > 0 and row.classes >= 2 and row.length > 1


class TestDataRoot:
    def test_explicit_override_wins(self, monkeypatch, tmp_path):
        monkeypatch.setenv(DATA_ROOT_ENV, "/elsewhere")
        assert data_root(str(tmp_path)) == tmp_path

    def test_environment_fallback(self, monkeypatch, tmp_path):
        monkeypatch.setenv(DATA_ROOT_ENV, str(tmp_path))
        assert data_root() == tmp_path

    def test_unset_yields_none(self, monkeypatch):
        monkeypatch.delenv(DATA_ROOT_ENV, raising=False)
        assert data_root() is None

import numpy as np
import pytest

from greyshot.data import (
    DatasetFormatError,
    SplitSpec,
    load_delimited,
    load_movielens,
    split,
    write_delimited,
)
from greyshot.synth import synthetic_ratings, write_movielens_file
from tests.conftest import make_dataset


class TestMovielensLoader:
    def test_single_line(self, tmp_path):
        path = tmp_path / "r.dat"
        path.write_text("1::10::5::978300760\n")
        ds = load_movielens(path)
        assert ds.m == 1 and ds.n == 1 and len(ds) == 1
        assert list(ds.triplets()) == [(0, 0, 5.0)]
        assert ds.rating_min == 1.0 and ds.rating_max == 5.0

    def test_missing_field_names_line(self, tmp_path):
        path = tmp_path / "r.dat"
        path.write_text("1::10::5::978300760\n1::10::5\n")
        with pytest.raises(DatasetFormatError, match="line 2"):
            load_movielens(path)

    def test_non_numeric_rating_names_line(self, tmp_path):
        path = tmp_path / "r.dat"
        path.write_text("1::10::good::978300760\n")
        with pytest.raises(DatasetFormatError, match="line 1"):
            load_movielens(path)

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "r.dat"
        path.write_text("")
        with pytest.raises(DatasetFormatError):
            load_movielens(path)

    def test_compaction_first_appearance_order(self, tmp_path):
        path = tmp_path / "r.dat"
        path.write_text(
            "9::70::5::1\n"
            "2::70::3::2\n"
            "9::11::4::3\n"
        )
        ds = load_movielens(path)
        assert ds.m == 2 and ds.n == 2
        assert ds.user_ids == {"9": 0, "2": 1}
        assert ds.item_ids == {"70": 0, "11": 1}

    def test_synthetic_dimensions_survive_roundtrip(self, tmp_path):
        ds = synthetic_ratings(17, 23, 80, (0.2, 0.2, 0.2, 0.2, 0.2), seed=5)
        path = tmp_path / "synth.dat"
        write_movielens_file(ds, path)
        loaded = load_movielens(path)
        assert loaded.m == 17 and loaded.n == 23 and len(loaded) == 80

    def test_loading_is_deterministic(self, tmp_path):
        ds = synthetic_ratings(6, 9, 40, (0.5, 0.1, 0.1, 0.1, 0.2), seed=1)
        path = tmp_path / "synth.dat"
        write_movielens_file(ds, path)
        assert load_movielens(path).equals(load_movielens(path))


class TestDelimitedLoader:
    def test_basic_csv(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text("u1,i1,4\nu2,i2,2.5\n")
        ds = load_delimited(path)
        assert ds.m == 2 and ds.n == 2
        assert ds.rating_min == 2.5 and ds.rating_max == 4.0

    def test_range_override(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text("u1,i1,4\nu2,i2,2.5\n")
        ds = load_delimited(path, rating_min=1.0, rating_max=5.0)
        assert ds.rating_min == 1.0 and ds.rating_max == 5.0

    def test_duplicates_preserved(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text("a,b,3\na,b,5\n")
        ds = load_delimited(path)
        assert len(ds) == 2
        assert list(ds.triplets()) == [(0, 0, 3.0), (0, 0, 5.0)]

    def test_skip_header(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text("user,item,rating\nu,i,3\n")
        ds = load_delimited(path, skip_header=True)
        assert len(ds) == 1

    def test_missing_column_names_row(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text("a,b,3\na,b\n")
        with pytest.raises(DatasetFormatError, match="line 2"):
            load_delimited(path)

    def test_non_numeric_rating_rejected(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text("a,b,bad\n")
        with pytest.raises(DatasetFormatError, match="line 1"):
            load_delimited(path)

    def test_custom_columns_and_delimiter(self, tmp_path):
        path = tmp_path / "r.tsv"
        path.write_text("4\tu\tx\ti\n2\tw\tx\tj\n")
        ds = load_delimited(path, delimiter="\t", user_col=1, item_col=3,
                            rating_col=0)
        assert ds.m == 2 and ds.n == 2
        assert ds.ratings.tolist() == [4.0, 2.0]

    def test_distinct_columns_required(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text("a,b,3\n")
        with pytest.raises(ValueError):
            load_delimited(path, user_col=0, item_col=0)

    def test_write_reload_roundtrip(self, tmp_path):
        ds = synthetic_ratings(9, 13, 70, (0.1, 0.2, 0.3, 0.2, 0.2), seed=11)
        path = tmp_path / "out.csv"
        write_delimited(ds, path)
        reloaded = load_delimited(path, rating_min=ds.rating_min,
                                  rating_max=ds.rating_max)
        assert reloaded.equals(ds)


class TestSplit:
    def test_fraction_counts(self):
        ds = make_dataset(5, 5, 10, seed=0)
        train, test = split(ds, SplitSpec(test_fraction=0.2, seed=1))
        assert len(test) == 2 and len(train) == 8

    def test_same_seed_same_partition(self):
        ds = make_dataset(6, 7, 50, seed=0)
        t1 = split(ds, SplitSpec(0.3, seed=9))
        t2 = split(ds, SplitSpec(0.3, seed=9))
        for a, b in zip(t1, t2):
            assert np.array_equal(a.users, b.users)
            assert np.array_equal(a.items, b.items)
            assert np.array_equal(a.ratings, b.ratings)

    def test_partition_is_exact(self):
        ds = make_dataset(6, 7, 50, seed=2)
        train, test = split(ds, SplitSpec(0.25, seed=4))
        assert len(train) + len(test) == len(ds)
        whole = sorted(ds.triplets())
        recombined = sorted(list(train.triplets()) + list(test.triplets()))
        assert recombined == whole

    def test_views_share_dimensions_and_maps(self):
        ds = make_dataset(6, 7, 50, seed=2)
        train, test = split(ds, SplitSpec(0.25, seed=4))
        assert train.m == test.m == ds.m
        assert train.n == test.n == ds.n
        assert train.user_ids is ds.user_ids
        assert test.item_ids is ds.item_ids

    def test_degenerate_fraction_rejected(self):
        ds = make_dataset(2, 2, 3, seed=0)
        with pytest.raises(ValueError):
            split(ds, SplitSpec(0.99, seed=0))  # train side would be empty
        with pytest.raises(ValueError):
            SplitSpec(0.0, seed=0)

    def test_different_seeds_differ(self):
        ds = make_dataset(6, 7, 50, seed=2)
        _, test_a = split(ds, SplitSpec(0.3, seed=1))
        _, test_b = split(ds, SplitSpec(0.3, seed=2))
        assert not np.array_equal(test_a.ratings, test_b.ratings) or \
            not np.array_equal(test_a.users, test_b.users)


class TestDatasetValidation:
    def test_out_of_range_indices_rejected(self):
        from greyshot.data import RatingsDataset
        with pytest.raises(ValueError):
            RatingsDataset(users=[5], items=[0], ratings=[3.0], m=2, n=2,
                           rating_min=1.0, rating_max=5.0,
                           user_ids={}, item_ids={})

    def test_rating_outside_range_rejected(self):
        from greyshot.data import RatingsDataset
        with pytest.raises(ValueError):
            RatingsDataset(users=[0], items=[0], ratings=[9.0], m=1, n=1,
                           rating_min=1.0, rating_max=5.0,
                           user_ids={"0": 0}, item_ids={"0": 0})

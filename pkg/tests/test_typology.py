import random
import warnings

import numpy as np
import pytest

from someany.classifier import UsageClass
from someany.data import synthetic_colex_matrix
from someany.typology import (
    ColexMatrix,
    ColexRecord,
    build_matrix,
    load_colex_records,
    load_matrix_csv,
    mds_project,
    overlap_breadth,
    save_matrix_csv,
    to_distance,
)

SP, NS, QU, CD = UsageClass.SP, UsageClass.NS, UsageClass.QU, UsageClass.CD
IN, DN, CP, FC = UsageClass.IN, UsageClass.DN, UsageClass.CP, UsageClass.FC


def pairwise_distances(points: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - points[None, :, :]
    return np.sqrt((diff ** 2).sum(-1))


class TestBuildMatrix:
    def test_shared_term_counts_language_once(self):
        records = [
            ColexRecord("l1", "t", frozenset({SP, NS})),
            ColexRecord("l2", "t", frozenset({SP, NS})),
        ]
        matrix = build_matrix(records)
        i, j = matrix.classes.index(SP), matrix.classes.index(NS)
        assert matrix.counts[i, j] == 2
        assert matrix.total_languages == 2

    def test_disjoint_terms_do_not_colexify(self):
        records = [
            ColexRecord("l1", "a", frozenset({SP})),
            ColexRecord("l1", "b", frozenset({FC})),
        ]
        matrix = build_matrix(records)
        i, j = matrix.classes.index(SP), matrix.classes.index(FC)
        assert matrix.counts[i, j] == 0
        assert matrix.counts[i, i] == 1
        assert matrix.counts[j, j] == 1

    def test_empty_input(self):
        with pytest.raises(ValueError):
            build_matrix([])

    def test_random_records_match_brute_force(self):
        rng = random.Random(13)
        classes = list(UsageClass)
        for trial in range(20):
            records = []
            languages = [f"lang{k}" for k in range(5)]
            for lang in languages:
                for t in range(rng.randint(1, 4)):
                    covers = frozenset(rng.sample(classes, rng.randint(1, 5)))
                    records.append(ColexRecord(lang, f"term{t}", covers))
            matrix = build_matrix(records)
            # independent recount: double loop over class pairs and languages
            for i, ci in enumerate(matrix.classes):
                for j, cj in enumerate(matrix.classes):
                    langs = {
                        r.language for r in records
                        if ci in r.covers and cj in r.covers
                    }
                    assert matrix.counts[i, j] == len(langs), (trial, ci, cj)

    def test_invariants_on_random_input(self):
        rng = random.Random(5)
        classes = list(UsageClass)
        records = []
        for lang in range(8):
            for t in range(rng.randint(1, 3)):
                records.append(ColexRecord(
                    f"l{lang}", f"t{t}",
                    frozenset(rng.sample(classes, rng.randint(1, 6)))))
        matrix = build_matrix(records)
        assert (matrix.counts == matrix.counts.T).all()
        diag = np.diag(matrix.counts)
        for i in range(len(matrix.classes)):
            for j in range(len(matrix.classes)):
                assert matrix.counts[i, j] <= min(diag[i], diag[j])


class TestToDistance:
    def make(self, s, total):
        counts = np.array([[total, s], [s, total]])
        return ColexMatrix(classes=(SP, FC), counts=counts, total_languages=total)

    def test_full_colexification_is_zero_distance(self):
        d = to_distance(self.make(7, 7))
        assert d[0, 1] == 0.0
        assert d[0, 0] == 0.0

    def test_no_colexification_is_unit_distance(self):
        assert to_distance(self.make(0, 5))[0, 1] == 1.0

    def test_arithmetic(self):
        assert to_distance(self.make(10, 40))[0, 1] == 0.75

    def test_sqrt_diff_transform(self):
        d = to_distance(self.make(10, 40), transform="sqrt_diff")
        assert d[0, 1] == pytest.approx(np.sqrt(40 + 40 - 20))
        assert d[0, 0] == 0.0

    def test_unknown_transform(self):
        with pytest.raises(ValueError, match="unknown transform"):
            to_distance(self.make(1, 2), transform="bogus")


class TestMdsProject:
    def test_collinear_points(self):
        d = np.array([[0.0, 1.0, 2.0], [1.0, 0.0, 1.0], [2.0, 1.0, 0.0]])
        emb = mds_project(d, dims=2)
        assert abs(emb.eigenvalues[1]) < 1e-9
        got = pairwise_distances(emb.coords)
        np.testing.assert_allclose(got, d, atol=1e-9)

    def test_equilateral_triangle(self):
        d = np.ones((3, 3)) - np.eye(3)
        emb = mds_project(d, dims=2)
        got = pairwise_distances(emb.coords)
        np.testing.assert_allclose(got, d, atol=1e-9)

    def test_random_planar_point_sets_round_trip(self):
        rng = np.random.default_rng(99)
        for _ in range(100):
            n = rng.integers(3, 9)
            points = rng.uniform(-2, 2, size=(n, 2))
            d = pairwise_distances(points)
            emb = mds_project(d, dims=2)
            got = pairwise_distances(emb.coords)
            np.testing.assert_allclose(got, d, atol=1e-9)

    def test_coords_are_centered(self):
        rng = np.random.default_rng(3)
        points = rng.uniform(0, 5, size=(6, 2))  # not centered
        emb = mds_project(pairwise_distances(points), dims=2)
        np.testing.assert_allclose(emb.coords.mean(axis=0), 0.0, atol=1e-9)

    def test_eigenvalues_sorted_descending(self):
        rng = np.random.default_rng(4)
        points = rng.uniform(-1, 1, size=(7, 3))
        emb = mds_project(pairwise_distances(points), dims=2)
        assert all(a >= b - 1e-12 for a, b in zip(emb.eigenvalues, emb.eigenvalues[1:]))

    def test_non_euclidean_input_warns_and_clamps(self):
        # Center at distance 1 from three points that are mutually 2 apart:
        # impossible in any Euclidean space, so some eigenvalue is negative.
        d = np.array([
            [0.0, 1.0, 1.0, 1.0],
            [1.0, 0.0, 2.0, 2.0],
            [1.0, 2.0, 0.0, 2.0],
            [1.0, 2.0, 2.0, 0.0],
        ])
        with pytest.warns(UserWarning, match="clamping"):
            emb = mds_project(d, dims=2)
        assert emb.eigenvalues.min() < -1e-9
        assert np.isfinite(emb.coords).all()

    def test_recovered_distance_mass_bounded_by_spectrum(self):
        rng = np.random.default_rng(12)
        for _ in range(20):
            n = int(rng.integers(3, 9))
            points = rng.uniform(-1, 1, size=(n, 4))
            d = pairwise_distances(points)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                emb = mds_project(d, dims=2)
            got = pairwise_distances(emb.coords)
            implied = 2 * n * np.clip(emb.eigenvalues, 0.0, None).sum()
            assert (got ** 2).sum() <= implied + 1e-9

    def test_validation_errors(self):
        with pytest.raises(ValueError, match="symmetric"):
            mds_project(np.array([[0.0, 1.0], [2.0, 0.0]]))
        with pytest.raises(ValueError, match="diagonal"):
            mds_project(np.array([[-0.5, 1.0], [1.0, 0.0]]))
        with pytest.raises(ValueError, match="square"):
            mds_project(np.zeros((2, 3)))
        with pytest.raises(ValueError, match="dims"):
            mds_project(np.zeros((2, 2)), dims=5)

    def test_jacobi_matches_numpy_eigh(self):
        from someany.typology import _jacobi_eigh

        rng = np.random.default_rng(21)
        for _ in range(50):
            n = int(rng.integers(2, 9))
            m = rng.normal(size=(n, n))
            sym = (m + m.T) / 2
            vals, vecs = _jacobi_eigh(sym)
            order = np.argsort(vals)[::-1]
            np.testing.assert_allclose(np.sort(vals)[::-1],
                                       np.sort(np.linalg.eigvalsh(sym))[::-1],
                                       atol=1e-9)
            # eigenvectors actually diagonalize
            recon = vecs @ np.diag(vals) @ vecs.T
            np.testing.assert_allclose(recon, sym, atol=1e-9)


class TestSyntheticFixture:
    def test_extreme_classes_are_far_apart(self):
        classes, counts, total = synthetic_colex_matrix()
        matrix = ColexMatrix(classes=tuple(classes), counts=counts,
                             total_languages=total)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            emb = mds_project(to_distance(matrix), dims=2, classes=classes)
        dist = pairwise_distances(emb.coords)
        n = len(classes)
        median = float(np.median(dist[np.triu_indices(n, k=1)]))
        idx = {c: i for i, c in enumerate(classes)}
        extremes = [UsageClass.SP, UsageClass.FC, UsageClass.DN]
        for a in range(3):
            for b in range(a + 1, 3):
                assert dist[idx[extremes[a]], idx[extremes[b]]] > median


ENGLISH_LIKE = [
    ("eng", "some", frozenset({SP, NS, QU, CD, IN, DN, CP})),
    ("eng", "any", frozenset({QU, CD, IN, DN, CP, FC})),
]


class TestOverlapBreadth:
    def test_english_qualifies(self):
        records = [ColexRecord(*row) for row in ENGLISH_LIKE]
        assert overlap_breadth(records) == 1.0

    def test_single_class_terms_do_not_qualify(self):
        records = [ColexRecord("l", f"t{i}", frozenset({c}))
                   for i, c in enumerate(UsageClass)]
        assert overlap_breadth(records) == 0.0

    def test_ten_language_fixture_gives_ten_percent(self):
        rng = random.Random(8)
        records = [ColexRecord(*row) for row in ENGLISH_LIKE]
        classes = list(UsageClass)
        for k in range(9):
            # narrow languages: three disjoint small terms each
            shuffled = rng.sample(classes, len(classes))
            for t, lo in enumerate(range(0, 8, 3)):
                covers = frozenset(shuffled[lo:lo + 3])
                if covers:
                    records.append(ColexRecord(f"narrow{k}", f"t{t}", covers))
        value = overlap_breadth(records)
        assert value == pytest.approx(0.10)
        # brute-force recount of qualifying languages
        by_lang = {}
        for rec in records:
            by_lang.setdefault(rec.language, {}).setdefault(rec.term, set()).update(rec.covers)
        qualifying = 0
        for terms in by_lang.values():
            names = list(terms)
            ok = any(
                len(terms[a]) >= 6 and len(terms[b]) >= 6
                and len(terms[a] & terms[b]) >= 5
                for x, a in enumerate(names) for b in names[x + 1:]
            )
            qualifying += ok
        assert value == qualifying / len(by_lang)

    def test_bundled_records_fixture(self):
        from pathlib import Path

        path = Path(__file__).resolve().parents[1] / "fixtures" / "colex_records.csv"
        records = load_colex_records(path)
        assert overlap_breadth(records) == pytest.approx(0.10)


class TestMatrixIO:
    def test_round_trip(self, tmp_path):
        names = ["SP", "FC"]
        grid = np.array([[40, 10], [10, 40]])
        path = tmp_path / "m.csv"
        save_matrix_csv(path, names, grid)
        got_names, got = load_matrix_csv(path)
        assert got_names == names
        np.testing.assert_array_equal(got, grid)

    def test_non_square_rejected(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("SP,FC\n1,2\n")
        with pytest.raises(ValueError, match="expected 2 data rows"):
            load_matrix_csv(path)

import numpy as np
import pytest

from flowmask.errors import DimensionMismatch
from flowmask.segmentation import artifact_candidates, combine_masks, connected_components
from oracles import flood_fill_components, random_mask


def mask(rows):
    return np.array([[c == "1" for c in row] for row in rows])


class TestCombineMasks:
    def test_or_of_two(self):
        out = combine_masks([mask(["1000"]), mask(["0100"])])
        assert out.tolist() == [[True, True, False, False]]

    def test_single_mask_identity(self, rng):
        m = random_mask(rng, (5, 7))
        assert np.array_equal(combine_masks([m]), m)

    def test_matches_naive_any(self, rng):
        masks = [random_mask(rng, (6, 6), 0.3) for _ in range(5)]
        out = combine_masks(masks)
        for y in range(6):
            for x in range(6):
                assert out[y, x] == any(m[y, x] for m in masks)

    def test_algebraic_laws(self, rng):
        a, b, c = (random_mask(rng, (4, 4)) for _ in range(3))
        empty = np.zeros((4, 4), bool)
        assert np.array_equal(combine_masks([a, b]), combine_masks([b, a]))
        assert np.array_equal(combine_masks([a, combine_masks([b, c])]),
                              combine_masks([combine_masks([a, b]), c]))
        assert np.array_equal(combine_masks([a, a]), a)
        assert np.array_equal(combine_masks([a, empty]), a)

    def test_zero_masks_needs_shape(self):
        out = combine_masks([], shape=(3, 4))
        assert out.shape == (3, 4) and not out.any()
        with pytest.raises(ValueError):
            combine_masks([])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            combine_masks([np.zeros((2, 2), bool), np.zeros((3, 2), bool)])


class TestConnectedComponents:
    def test_diagonal_pixels(self):
        m = mask(["10", "01"])
        assert [r.area for r in connected_components(m, 8)] == [2]
        assert [r.area for r in connected_components(m, 4)] == [1, 1]

    def test_region_geometry(self):
        m = mask(["0110", "0110", "0000"])
        (r,) = connected_components(m, 4)
        assert r.area == 4
        assert r.bounding_box == (1, 0, 2, 1)
        assert r.centroid == (1.5, 0.5)

    def test_ordering(self):
        m = mask(["11100", "00000", "11000", "00011"])
        regions = connected_components(m, 4)
        assert [r.area for r in regions] == [3, 2, 2]
        # area ties broken by (min_y, min_x) of the bounding box
        assert regions[1].bounding_box[:2] == (0, 2)
        assert regions[2].bounding_box[:2] == (3, 3)

    @pytest.mark.parametrize("connectivity", [4, 8])
    def test_matches_flood_fill(self, rng, connectivity):
        for _ in range(30):
            m = random_mask(rng, (32, 32), rng.random() * 0.7 + 0.1)
            regions = connected_components(m, connectivity)
            oracle = flood_fill_components(m, connectivity)
            assert len(regions) == len(oracle)
            oracle_keys = sorted(
                (len(px),
                 (min(x for _, x in px), min(y for y, _ in px),
                  max(x for _, x in px), max(y for y, _ in px)))
                for px in oracle
            )
            assert sorted((r.area, r.bounding_box) for r in regions) == oracle_keys

    def test_partition_and_area_sum(self, rng):
        m = random_mask(rng, (20, 20), 0.4)
        regions = connected_components(m, 8)
        assert sum(r.area for r in regions) == int(m.sum())

    def test_region_invariants(self, rng):
        m = random_mask(rng, (16, 16), 0.5)
        for r in connected_components(m, 8):
            x0, y0, x1, y1 = r.bounding_box
            cx, cy = r.centroid
            assert r.area >= 1
            assert x0 <= cx <= x1 and y0 <= cy <= y1
            assert r.area <= (x1 - x0 + 1) * (y1 - y0 + 1)

    def test_bad_connectivity(self):
        with pytest.raises(ValueError):
            connected_components(np.zeros((2, 2), bool), 6)


class TestArtifactCandidates:
    def test_equal_masks_no_artifacts(self, rng):
        m = random_mask(rng, (8, 8))
        assert artifact_candidates(m, m) == []

    def test_full_vs_empty(self):
        seg = np.ones((4, 5), bool)
        flow = np.zeros((4, 5), bool)
        (r,) = artifact_candidates(seg, flow, min_area=1)
        assert r.area == 20 and r.bounding_box == (0, 0, 4, 3)

    def test_min_area_filters_specks(self):
        seg = mask(["11100000", "00000010", "00000000"])
        flow = np.zeros((3, 8), bool)
        regions = artifact_candidates(seg, flow, min_area=2)
        assert [r.area for r in regions] == [3]
        assert regions[0].bounding_box == (0, 0, 2, 0)

    def test_flow_mask_pixels_excluded(self):
        seg = mask(["111"])
        flow = mask(["010"])
        regions = artifact_candidates(seg, flow, connectivity=4)
        assert [r.area for r in regions] == [1, 1]

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            artifact_candidates(np.zeros((2, 2), bool), np.zeros((2, 3), bool))

    def test_bad_min_area(self):
        with pytest.raises(ValueError):
            artifact_candidates(np.zeros((2, 2), bool), np.zeros((2, 2), bool), min_area=0)

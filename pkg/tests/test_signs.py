import random

import pytest

from roadrules.geometry import Point, Polyline, distance
from roadrules.signs import Sign, SignIndex, SignType
from roadrules.spatial import RectTree


def sign(sign_id, x, y, code="R-101", azimuth=0.0) -> Sign:
    return Sign(sign_id, Point(x, y), SignType.from_code(code), azimuth)


class TestSignType:
    def test_all_eight_codes(self):
        codes = {"R-101", "R-302", "R-303", "R-400a", "R-400b", "R-400c", "R-400d", "R-400e"}
        assert {t.code for t in SignType} == codes

    def test_from_code(self):
        assert SignType.from_code("R-101") is SignType.R101

    def test_unknown_code(self):
        with pytest.raises(ValueError, match="unknown sign type"):
            SignType.from_code("R-500")


class TestSign:
    def test_azimuth_wraps_to_zero(self):
        assert sign("s", 0, 0, azimuth=360.0).azimuth == 0.0

    def test_azimuth_wraps_large_values(self):
        assert sign("s", 0, 0, azimuth=725.0).azimuth == 5.0

    def test_rule_slot_starts_empty(self):
        s = sign("s", 0, 0)
        assert s.rule is None and s.score is None


class TestSignIndex:
    def test_duplicate_ids_rejected(self):
        with pytest.raises(ValueError, match="duplicate sign id"):
            SignIndex([sign("s", 0, 0), sign("s", 1, 1)])

    def test_radius_boundary_inclusive(self):
        index = SignIndex([sign("near", 14.9, 0), sign("far", 15.1, 0)])
        hits = index.signs_within(Point(0, 0), 15.0)
        assert [s.id for s in hits] == ["near"]

    def test_empty_inventory(self, empty_index):
        assert empty_index.signs_within(Point(0, 0), 15.0) == []
        assert empty_index.signs_within_line(Polyline([(0, 0), (1, 0)]), 10.0) == []

    def test_positive_radius_required(self, empty_index):
        with pytest.raises(ValueError):
            empty_index.signs_within(Point(0, 0), 0.0)
        with pytest.raises(ValueError):
            empty_index.signs_within_line(Polyline([(0, 0), (1, 0)]), -1.0)

    def test_line_query_perpendicular_hit(self):
        line = Polyline([(0, 0), (100, 0)])
        index = SignIndex([sign("mid", 50, 3)])
        assert [s.id for s in index.signs_within_line(line, 10.0)] == ["mid"]

    def test_line_query_excludes_beyond_radius(self):
        line = Polyline([(0, 0), (100, 0)])
        index = SignIndex([sign("off", 50, 11)])
        assert index.signs_within_line(line, 10.0) == []

    def test_line_query_vertex_hit(self):
        line = Polyline([(0, 0), (50, 0), (50, 50)])
        index = SignIndex([sign("atv", 50, 0)])
        assert [s.id for s in index.signs_within_line(line, 10.0)] == ["atv"]

    def test_results_sorted_by_id(self):
        index = SignIndex([sign("b", 1, 0), sign("a", 2, 0), sign("c", 0, 1)])
        assert [s.id for s in index.signs_within(Point(0, 0), 10.0)] == ["a", "b", "c"]


class TestIndexScanEquivalence:
    """Rectangle-tree pruning must never change a query result."""

    def _random_inventory(self, rng, count):
        return [
            sign(f"s{i:05d}", rng.uniform(-500, 500), rng.uniform(-500, 500))
            for i in range(count)
        ]

    def test_point_queries_match_linear_scan(self, rng):
        for count in (0, 1, 9, 257, 5000):
            signs = self._random_inventory(rng, count)
            index = SignIndex(signs)
            for _ in range(20):
                p = Point(rng.uniform(-600, 600), rng.uniform(-600, 600))
                r = rng.uniform(1.0, 120.0)
                expected = sorted(
                    (s.id for s in signs if distance(s.position, p) <= r)
                )
                assert [s.id for s in index.signs_within(p, r)] == expected

    def test_line_queries_match_linear_scan(self, rng):
        signs = self._random_inventory(rng, 3000)
        index = SignIndex(signs)
        for _ in range(20):
            pts = [(rng.uniform(-600, 600), rng.uniform(-600, 600)) for _ in range(4)]
            line = Polyline(pts)
            r = rng.uniform(1.0, 80.0)
            expected = sorted(
                (s.id for s in signs if line.distance_to(s.position) <= r)
            )
            assert [s.id for s in index.signs_within_line(line, r)] == expected


class TestRectTree:
    def test_matches_linear_scan(self):
        rng = random.Random(99)
        points = [(rng.uniform(0, 100), rng.uniform(0, 100), i) for i in range(1000)]
        tree = RectTree(points)
        for _ in range(50):
            x0, x1 = sorted((rng.uniform(0, 100), rng.uniform(0, 100)))
            y0, y1 = sorted((rng.uniform(0, 100), rng.uniform(0, 100)))
            expected = sorted(i for x, y, i in points if x0 <= x <= x1 and y0 <= y <= y1)
            assert sorted(tree.search(x0, y0, x1, y1)) == expected

    def test_empty_tree(self):
        assert RectTree([]).search(0, 0, 1, 1) == []

import math
import random

import pytest

from vadkit.errors import EmptyProbeSet, InvalidCount, TargetUnreachable
from vadkit.space import (
    EMOTION_ORDER,
    BasicEmotion,
    EmotionSpace,
    VadPoint,
    calibrate_radius,
    l2_distance,
    load_space,
    mean_neighbor_count,
    nearest,
    neighbors_within,
    save_space,
    space_from_document,
    space_to_document,
)

#: radius larger than the diameter of [-1,1]^3 (2*sqrt(3))
EVERYTHING = 4.0


def dist3(a, b):
    # squares spelled as products: both math.dist and libm pow(x, 2)
    # can round differently from x*x at 1 ulp
    dv, da, dd = a[0] - b[0], a[1] - b[1], a[2] - b[2]
    return math.sqrt(dv * dv + da * da + dd * dd)


def scan_oracle(space, query):
    """Independent exhaustive scan with the documented ordering rule."""
    out = []
    for term, point in space.entries.items():
        out.append((term, dist3(query, point)))
    return sorted(out, key=lambda pair: (pair[1], pair[0]))


def random_point(rng):
    return VadPoint(*(rng.uniform(-1, 1) for _ in range(3)))


def toy_space(points, seeds=None):
    if seeds is None:
        seeds = {
            e: VadPoint(0.1 * (i + 1), -0.1 * i, 0.05 * i)
            for i, e in enumerate(EMOTION_ORDER)
        }
    return EmotionSpace(entries=points, seeds=seeds)


class TestL2Distance:
    def test_identity(self):
        for p in [VadPoint(0, 0, 0), VadPoint(0.3, -0.4, 0.9)]:
            assert l2_distance(p, p) == 0.0

    def test_unit_axis(self):
        assert l2_distance(VadPoint(0, 0, 0), VadPoint(1, 0, 0)) == 1.0

    def test_hand_value(self):
        # sqrt(0.5^2 + 0.3^2 + 0.4^2) = sqrt(0.5), computed by hand
        d = l2_distance(VadPoint(0.2, -0.1, 0.4), VadPoint(-0.3, 0.2, 0.0))
        assert d == pytest.approx(0.7071067811865476, abs=1e-15)

    def test_symmetry(self):
        rng = random.Random(5)
        for _ in range(100):
            a, b = random_point(rng), random_point(rng)
            assert l2_distance(a, b) == l2_distance(b, a)

    def test_triangle_inequality(self):
        rng = random.Random(6)
        for _ in range(200):
            a, b, c = (random_point(rng) for _ in range(3))
            assert l2_distance(a, c) <= l2_distance(a, b) + l2_distance(b, c) + 1e-12


class TestNeighborsWithin:
    def test_radius_zero_at_entry(self, space):
        term = "delighted"
        point = space.entries[term]
        result = neighbors_within(space, point, 0.0)
        assert [t for t, _ in result] == [term]
        assert result[0][1] == 0.0

    def test_saturating_radius(self, space):
        result = neighbors_within(space, VadPoint(0, 0, 0), EVERYTHING)
        assert len(result) == len(space)

    def test_matches_oracle_at_seeds(self, space):
        for emotion in EMOTION_ORDER:
            query = space.seeds[emotion]
            got = neighbors_within(space, query, 0.25)
            want = [p for p in scan_oracle(space, query) if p[1] <= 0.25]
            assert got == want

    def test_subset_monotone_in_radius(self, space):
        rng = random.Random(7)
        for _ in range(50):
            q = random_point(rng)
            r1, r2 = sorted((rng.uniform(0, 1), rng.uniform(0, 1)))
            small = {t for t, _ in neighbors_within(space, q, r1)}
            large = {t for t, _ in neighbors_within(space, q, r2)}
            assert small <= large

    def test_negative_radius_rejected(self, space):
        with pytest.raises(ValueError):
            neighbors_within(space, VadPoint(0, 0, 0), -0.1)

    def test_ties_break_lexicographically(self):
        points = {"b": VadPoint(0.5, 0, 0), "a": VadPoint(-0.5, 0, 0),
                  "c": VadPoint(0, 0.5, 0), "d": VadPoint(0.1, 0, 0),
                  "e": VadPoint(0, 0, 0.9), "f": VadPoint(0, 0, -0.9)}
        space = toy_space(points)
        result = neighbors_within(space, VadPoint(0, 0, 0), 0.5)
        assert [t for t, _ in result] == ["d", "a", "b", "c"]


class TestNearest:
    def test_full_count_returns_all_sorted(self, space):
        q = VadPoint(0.2, 0.2, 0.2)
        got = nearest(space, q, len(space))
        assert got == scan_oracle(space, q)

    def test_own_point_first(self, space):
        term = "serene"
        got = nearest(space, space.entries[term], 1)
        assert got[0][0] == term and got[0][1] == 0.0

    def test_matches_oracle_n5(self, space):
        rng = random.Random(8)
        for _ in range(50):
            q = random_point(rng)
            assert nearest(space, q, 5) == scan_oracle(space, q)[:5]

    def test_prefix_of_neighbors_within(self, space):
        rng = random.Random(9)
        for _ in range(20):
            q = random_point(rng)
            n = rng.randint(1, len(space))
            assert nearest(space, q, n) == neighbors_within(space, q, EVERYTHING)[:n]

    def test_invalid_count(self, space):
        with pytest.raises(InvalidCount):
            nearest(space, VadPoint(0, 0, 0), 0)
        with pytest.raises(InvalidCount):
            nearest(space, VadPoint(0, 0, 0), len(space) + 1)


class TestMeanNeighborCount:
    def test_zero_radius_off_points(self, space):
        probes = [VadPoint(0.987, 0.987, 0.987)]
        assert mean_neighbor_count(space, probes, 0.0) == 0.0

    def test_saturation(self, space):
        probes = [VadPoint(0, 0, 0), VadPoint(0.5, 0.5, 0.5)]
        assert mean_neighbor_count(space, probes, EVERYTHING) == len(space)

    def test_matches_double_loop(self, space):
        probes = list(space.entries.values())
        got = mean_neighbor_count(space, probes, 0.25)
        count = 0
        for p in probes:
            for q in space.entries.values():
                if dist3(p, q) <= 0.25:
                    count += 1
        assert got == count / len(probes)

    def test_monotone_in_radius(self, space):
        rng = random.Random(10)
        probes = [random_point(rng) for _ in range(20)]
        last = -1.0
        for radius in [i * 0.05 for i in range(30)]:
            mean = mean_neighbor_count(space, probes, radius)
            assert mean >= last
            last = mean

    def test_empty_probes(self, space):
        with pytest.raises(EmptyProbeSet):
            mean_neighbor_count(space, [], 0.5)


class TestCalibrateRadius:
    def test_saturation_target(self, space):
        probes = [VadPoint(0, 0, 0), VadPoint(-0.4, 0.4, 0.1)]
        radius = calibrate_radius(space, probes, float(len(space)))
        assert radius == max(
            l2_distance(p, q) for p in probes for q in space.entries.values()
        )

    def test_three_point_toy_by_hand(self):
        # probe at origin; distances 0.0, 0.6, then 1.0 four times over
        # (p2 plus the three distractors), so counts step 1 -> 2 -> 6.
        points = {"p0": VadPoint(0.0, 0, 0), "p1": VadPoint(0.6, 0, 0),
                  "p2": VadPoint(1.0, 0, 0), "q0": VadPoint(0, 1, 0),
                  "q1": VadPoint(0, -1, 0), "q2": VadPoint(0, 0, 1)}
        space = toy_space(points)
        probe = [VadPoint(0.0, 0, 0)]
        assert calibrate_radius(space, probe, 1.0) == 0.0
        assert calibrate_radius(space, probe, 2.0) == 0.6
        assert calibrate_radius(space, probe, 3.0) == 1.0

    def test_generalized_inverse(self, space):
        probes = list(space.entries.values())[::5]
        for target in (2.0, 5.0, 9.5):
            radius = calibrate_radius(space, probes, target)
            assert mean_neighbor_count(space, probes, radius) >= target
            # any strictly smaller candidate distance falls short
            below = [
                l2_distance(p, q)
                for p in probes for q in space.entries.values()
                if l2_distance(p, q) < radius
            ]
            if below:
                assert mean_neighbor_count(space, probes, max(below)) < target

    def test_target_unreachable(self, space):
        with pytest.raises(TargetUnreachable):
            calibrate_radius(space, [VadPoint(0, 0, 0)], len(space) + 1.0)
        with pytest.raises(TargetUnreachable):
            calibrate_radius(space, [VadPoint(0, 0, 0)], 0.0)


class TestSpaceDocument:
    def test_round_trip_exact(self, space, tmp_path):
        path = tmp_path / "space.json"
        save_space(space, path)
        loaded = load_space(path)
        assert loaded == space
        assert loaded.subset_hash == space.subset_hash
        assert loaded.config_hash == space.config_hash

    def test_document_shape(self, space):
        doc = space_to_document(space)
        assert doc["version"] == "vadkit-space/1"
        assert len(doc["entries"]) == len(space)
        assert set(doc["seeds"]) == {e.value for e in BasicEmotion}

    def test_rejects_wrong_version(self, space):
        doc = space_to_document(space)
        doc["version"] = "nope/9"
        from vadkit.errors import InvalidDocument
        with pytest.raises(InvalidDocument):
            space_from_document(doc)

"""Covering homothets: weighted-centroid cover, minimal ratio, hull bounds."""

import math

import numpy as np
import pytest

from helpers import ns_family, random_reference, random_symmetric_polygon
from sepgeom.bodies import ConvexBody, GeometryError, HomothetFamily
from sepgeom.covering import (
    build_triangle_counterexample,
    facet_parallel_cover_check,
    goodman_goodman_cover,
    hadwiger_check,
    min_cover_ratio,
)
from sepgeom.separability import is_non_separable

LAMBDA_TRIANGLE = 2.0 / 3.0 + 2.0 / (3.0 * math.sqrt(3.0))


def unit_disk_family(centers):
    ref = ConvexBody.disk((0.0, 0.0), 1.0)
    return HomothetFamily(ref, centers, np.ones(len(centers)))


def test_gg_two_tangent_disks():
    fam = unit_disk_family([(0.0, 0.0), (2.0, 0.0)])
    cover = goodman_goodman_cover(fam)
    assert cover.contains_all
    assert np.allclose(cover.center, [1.0, 0.0], atol=1e-9)
    assert cover.ratio == pytest.approx(2.0, abs=1e-9)


def test_gg_collinear_chain_tight():
    n = 5
    fam = unit_disk_family([(2.0 * i, 0.0) for i in range(n)])
    cover = goodman_goodman_cover(fam)
    assert cover.contains_all
    assert cover.ratio == pytest.approx(float(n), abs=1e-9)
    best = min_cover_ratio(fam)
    assert best.normalized == pytest.approx(1.0, abs=1e-7)


def test_single_member():
    fam = unit_disk_family([(3.0, -1.0)])
    cover = goodman_goodman_cover(fam)
    assert cover.contains_all and cover.ratio == pytest.approx(1.0, abs=1e-12)
    assert min_cover_ratio(fam).normalized == pytest.approx(1.0, abs=1e-9)


def test_gg_rejects_asymmetric_reference():
    tri = ConvexBody.polygon([(0, 0), (1, 0), (0, 1)])
    fam = HomothetFamily(tri, [(0.0, 0.0)], [1.0])
    with pytest.raises(GeometryError):
        goodman_goodman_cover(fam)


def test_random_ns_families_covered(rng):
    for _ in range(30):
        fam = ns_family(rng, random_reference(rng), int(rng.integers(2, 8)))
        cover = goodman_goodman_cover(fam)
        assert cover.contains_all, "weighted-centroid cover must contain an NS-family"
        best = min_cover_ratio(fam)
        assert best.normalized <= 1.0 + 1e-7
        assert best.contains_all


def test_cover_ratio_similarity_invariant(rng):
    ref = random_symmetric_polygon(rng)
    fam = ns_family(rng, ref, 5)
    lam = min_cover_ratio(fam).normalized
    shifted = HomothetFamily(
        ref, np.asarray(fam.centers) * 3.0 + np.array([10.0, -4.0]), np.asarray(fam.ratios) * 3.0
    )
    assert min_cover_ratio(shifted).normalized == pytest.approx(lam, abs=1e-7)


def test_triangle_counterexample_value():
    fam = build_triangle_counterexample(3)
    assert len(fam) == 3
    assert is_non_separable(fam, samples=1024).non_separable
    best = min_cover_ratio(fam)
    assert best.normalized == pytest.approx(LAMBDA_TRIANGLE, abs=1e-6)
    assert best.normalized > 1.0
    with pytest.raises(GeometryError):
        build_triangle_counterexample(2)


def test_triangle_counterexample_larger_n():
    fam = build_triangle_counterexample(5)
    assert len(fam) == 5
    assert is_non_separable(fam, samples=1024).non_separable
    assert min_cover_ratio(fam).normalized > 1.0


def test_hadwiger_two_disks():
    fam = unit_disk_family([(0.0, 0.0), (2.0, 0.0)])
    rep = hadwiger_check(fam)
    assert rep.perimeter_hull == pytest.approx(2.0 * math.pi + 4.0, rel=1e-5)
    assert rep.perimeter_sum == pytest.approx(4.0 * math.pi, abs=1e-9)
    assert rep.holds()


def test_hadwiger_collinear_circumradius_tight():
    fam = unit_disk_family([(0.0, 0.0), (2.0, 0.0), (4.0, 0.0)])
    rep = hadwiger_check(fam)
    assert rep.circumradius_hull == pytest.approx(3.0, abs=1e-7)
    assert rep.circumradius_sum == pytest.approx(3.0, abs=1e-9)
    assert rep.holds(tol=1e-6)


def test_hadwiger_rejects_separable():
    fam = unit_disk_family([(0.0, 0.0), (10.0, 0.0)])
    with pytest.raises(GeometryError):
        hadwiger_check(fam)


def test_hadwiger_random_ns(rng):
    for _ in range(10):
        fam = ns_family(rng, random_reference(rng), int(rng.integers(2, 6)))
        assert hadwiger_check(fam, samples=512).holds(tol=1e-5)


def test_facet_parallel_triangle_families(rng):
    tri = ConvexBody.polygon([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])
    for _ in range(15):
        fam = ns_family(rng, tri, int(rng.integers(2, 7)))
        rep = facet_parallel_cover_check(fam)
        assert rep.condition_holds, "overlapping chains cannot leave facet gaps"
        assert rep.within_bound
        assert rep.cover.normalized <= 1.5 + 1e-7


def test_facet_parallel_counterexample_within_bound():
    fam = build_triangle_counterexample(3)
    rep = facet_parallel_cover_check(fam)
    assert rep.condition_holds
    assert rep.cover.normalized == pytest.approx(LAMBDA_TRIANGLE, abs=1e-6)
    assert rep.within_bound


def test_facet_parallel_detects_gap():
    tri = ConvexBody.polygon([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])
    fam = HomothetFamily(tri, [(0.0, 0.0), (9.0, 0.0)], [1.0, 1.0])
    rep = facet_parallel_cover_check(fam)
    assert not rep.condition_holds
    assert max(rep.facet_gaps) > 1.0
    with pytest.raises(GeometryError):
        facet_parallel_cover_check(
            HomothetFamily(ConvexBody.disk((0, 0), 1.0), [(0.0, 0.0)], [1.0])
        )

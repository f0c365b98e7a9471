"""NS / SNS decisions, separation certificates, TS / LS / rho packings."""

import math

import numpy as np
import pytest

from helpers import (
    disk_bodies,
    house7_centers,
    ns_family,
    random_reference,
    thirteen_pentagon_centers,
    thirteen_ts_centers,
)
from sepgeom.bodies import ConvexBody, GeometryError, HomothetFamily
from sepgeom.covering import build_triangle_counterexample
from sepgeom.separability import (
    Hyperplane,
    find_separating_hyperplane,
    is_ls_packing,
    is_non_separable,
    is_rho_separable,
    is_sns,
    is_ts_packing,
    kirchberger_reduce,
    pair_separation,
    strictly_separates,
    tangency_pairs,
    validate_packing,
)

# three mutually tangent unit disks, the classic non-TS triple
HEX_TRIPLE = 2.0 * np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3.0) / 2.0]])


def unit_disks(centers):
    return disk_bodies(centers, 1.0)


def test_hyperplane_normalizes():
    h = Hyperplane((3.0, 4.0), 10.0)
    assert np.linalg.norm(h.normal) == pytest.approx(1.0, abs=1e-12)
    assert h.signed((1.2, 0.0)) == pytest.approx(1.2 * 0.6 - 2.0, abs=1e-12)


def test_tangent_chain_is_ns():
    fam = unit_disks([(0.0, 0.0), (2.0, 0.0), (4.0, 0.0)])
    dec = is_non_separable(fam)
    assert dec.non_separable and not dec.approximate
    assert dec.witness is None


def test_split_family_has_certificate():
    fam = unit_disks([(0.0, 0.0), (5.0, 0.0)])
    dec = is_non_separable(fam)
    assert not dec.non_separable
    cert = dec.witness
    assert cert is not None and cert.margin > 0.0
    left = [fam[i] for i in cert.left]
    right = [fam[i] for i in cert.right]
    assert strictly_separates(cert.plane, left, right)


def test_find_separating_hyperplane_margin():
    a = [ConvexBody.disk((0.0, 0.0), 1.0)]
    b = [ConvexBody.disk((4.0, 1.0), 1.0)]
    cert = find_separating_hyperplane(a, b)
    assert cert is not None
    assert cert.margin == pytest.approx((math.sqrt(17.0) - 2.0) / 2.0, abs=1e-6)
    assert find_separating_hyperplane(a, [ConvexBody.disk((1.5, 0.0), 1.0)]) is None


def test_ns_oracle_agreement(rng):
    # brute-force direction sweep as an independent oracle
    for _ in range(60):
        n = int(rng.integers(2, 7))
        centers = rng.uniform(-3.0, 3.0, (n, 2))
        radii = rng.uniform(0.3, 1.2, n)
        fam = [ConvexBody.disk(c, r) for c, r in zip(centers, radii)]
        dec = is_non_separable(fam, samples=2048)

        t = np.linspace(0.0, math.pi, 20000, endpoint=False)
        dirs = np.stack([np.cos(t), np.sin(t)], axis=1)
        los = dirs @ centers.T - radii[None, :]
        his = dirs @ centers.T + radii[None, :]
        gap = 0.0
        for k in range(len(dirs)):
            order = np.argsort(los[k])
            run = his[k][order[0]]
            for idx in order[1:]:
                gap = max(gap, los[k][idx] - run)
                run = max(run, his[k][idx])
        oracle_ns = gap <= 1e-9
        if abs(gap) > 1e-6:
            assert dec.non_separable == oracle_ns


def test_generated_ns_families_verify(rng):
    for _ in range(40):
        fam = ns_family(rng, random_reference(rng), int(rng.integers(2, 9)))
        assert is_non_separable(fam, samples=512).non_separable


def test_sns_chain_and_counterexample():
    chain = unit_disks([(0.0, 0.0), (2.0, 0.0), (4.0, 0.0)])
    res = is_sns(chain)
    assert res.is_sns and res.ordering is not None and len(res.ordering) == 3
    single = is_sns([ConvexBody.disk((0, 0), 1.0)])
    assert single.is_sns and single.ordering == (0,)

    tri = build_triangle_counterexample(3)
    assert is_non_separable(tri, samples=512).non_separable
    assert not is_sns(tri).is_sns


def test_sns_families_are_ns(rng):
    from helpers import sns_disk_centers

    for _ in range(10):
        centers = sns_disk_centers(rng, int(rng.integers(3, 8)))
        fam = unit_disks(centers)
        assert is_sns(fam).is_sns
        assert is_non_separable(fam, samples=512).non_separable


def test_kirchberger_matches_direct(rng):
    agree = 0
    for _ in range(50):
        n1, n2 = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        f1 = [ConvexBody.disk(rng.uniform(-2, 2, 2), rng.uniform(0.2, 0.8)) for _ in range(n1)]
        f2 = [ConvexBody.disk(rng.uniform(-2, 2, 2), rng.uniform(0.2, 0.8)) for _ in range(n2)]
        direct = find_separating_hyperplane(f1, f2) is not None
        red = kirchberger_reduce(f1, f2)
        assert red.separable == direct
        agree += 1
    assert agree == 50


def test_pair_separation_and_validate():
    a = ConvexBody.disk((0.0, 0.0), 1.0)
    b = ConvexBody.disk((3.0, 0.0), 1.0)
    assert pair_separation(a, b) == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(GeometryError):
        validate_packing([a, ConvexBody.disk((0.5, 0.0), 1.0)])


def test_ts_grid_and_hex_triple():
    grid = unit_disks([(x, y) for x in (0.0, 2.0) for y in (0.0, 2.0)])
    res = is_ts_packing(grid)
    assert res.is_ts and not res.unresolved
    for (i, j), cert in res.certificates.items():
        assert cert.plane.signed(grid[i].center) * cert.plane.signed(grid[j].center) < 0

    hexres = is_ts_packing(unit_disks(HEX_TRIPLE))
    assert not hexres.is_ts and hexres.unresolved


def test_ts_overlap_rejected():
    with pytest.raises(GeometryError):
        is_ts_packing(unit_disks([(0.0, 0.0), (1.0, 0.0)]))


def test_ls_square_lattice_and_hex():
    piece = unit_disks([(2 * i, 2 * j) for i in range(3) for j in range(2)])
    assert is_ls_packing(piece).is_ls
    hexres = is_ls_packing(unit_disks(HEX_TRIPLE))
    assert not hexres.is_ls and hexres.failing_members


def test_half_diameter_fixtures():
    house = disk_bodies(house7_centers(), 0.5)
    assert is_ls_packing(house).is_ls
    assert not is_ts_packing(house).is_ts

    ts13 = disk_bodies(thirteen_ts_centers(), 0.5)
    assert is_ts_packing(ts13).is_ts

    pent13 = disk_bodies(thirteen_pentagon_centers(), 0.5)
    assert is_ls_packing(pent13).is_ls
    assert not is_ts_packing(pent13).is_ts


def test_rho_separable_thresholds():
    disk = ConvexBody.disk((0.0, 0.0), 1.0)
    square_lattice = [(2.0 * i, 2.0 * j) for i in range(3) for j in range(3)]
    assert is_rho_separable(disk, square_lattice, 2.0).separable
    assert is_rho_separable(disk, square_lattice, 3.0).separable
    hex_lattice = [
        (2.0 * i + j, math.sqrt(3.0) * j) for i in range(3) for j in range(3)
    ]
    assert is_rho_separable(disk, hex_lattice, 2.0).separable
    res = is_rho_separable(disk, hex_lattice, 3.0)
    assert not res.separable and res.failing_member is not None
    with pytest.raises(GeometryError):
        is_rho_separable(disk, square_lattice, 0.5)
    tri = ConvexBody.polygon([(0, 0), (1, 0), (0, 1)])
    with pytest.raises(GeometryError):
        is_rho_separable(tri, square_lattice, 2.0)


def test_tangency_pairs_grid():
    grid = unit_disks([(0.0, 0.0), (2.0, 0.0), (4.0, 0.0), (0.0, 5.0)])
    pairs = tangency_pairs(grid)
    assert set(pairs) == {(0, 1), (1, 2)}


def test_homothet_family_input():
    ref = ConvexBody.disk((0.0, 0.0), 1.0)
    fam = HomothetFamily(ref, [(0.0, 0.0), (1.5, 0.0)], [1.0, 1.0])
    assert is_non_separable(fam, samples=512).non_separable

"""Shared random generators for the test suite."""

import math

import numpy as np
from scipy.spatial import ConvexHull

from sepgeom.bodies import ConvexBody, GeometryError, HomothetFamily


def random_symmetric_polygon(rng, k: int | None = None, scale: float = 1.0) -> ConvexBody:
    """Random o-symmetric convex polygon with at most 2k vertices."""
    k = int(k if k is not None else rng.integers(3, 7))
    for _ in range(64):
        ang = rng.uniform(0.0, math.pi, k)
        rad = rng.uniform(0.5, 1.5, k) * scale
        pts = np.c_[np.cos(ang), np.sin(ang)] * rad[:, None]
        pts = np.vstack([pts, -pts])
        try:
            hull = ConvexHull(pts)
            return ConvexBody.polygon(pts[hull.vertices])
        except GeometryError:
            continue
    raise RuntimeError("could not draw a symmetric polygon")


def random_convex_polygon(rng, k: int = 8, scale: float = 1.0) -> ConvexBody:
    """Random convex polygon from the hull of k gaussian points."""
    for _ in range(64):
        pts = rng.normal(size=(k, 2)) * scale
        try:
            hull = ConvexHull(pts)
            return ConvexBody.polygon(pts[hull.vertices])
        except GeometryError:
            continue
    raise RuntimeError("could not draw a convex polygon")


def random_reference(rng) -> ConvexBody:
    """Disk or random o-symmetric polygon, half and half."""
    if rng.random() < 0.5:
        return ConvexBody.disk((0.0, 0.0), float(rng.uniform(0.5, 1.5)))
    return random_symmetric_polygon(rng)


def point_inside(rng, body: ConvexBody) -> np.ndarray:
    """Uniform-ish random point in a disk or polygon."""
    if body.kind == "disk":
        ang = float(rng.uniform(0.0, 2.0 * math.pi))
        rad = body.radius * math.sqrt(float(rng.random()))
        return body.center + rad * np.array([math.cos(ang), math.sin(ang)])
    w = rng.dirichlet(np.ones(len(body.vertices)))
    return w @ body.vertices


def ns_family(rng, reference: ConvexBody, n: int) -> HomothetFamily:
    """NS-family of homothets: each new member overlaps an earlier one.

    x_new = x_j + s (p - q) with p in tau_j K, q in tau_new K and s < 1
    keeps the intersection nonempty, so the union stays connected.
    """
    ratios = rng.uniform(0.3, 1.5, n)
    centers = np.zeros((n, 2))
    for i in range(1, n):
        j = int(rng.integers(0, i))
        p = ratios[j] * point_inside(rng, reference)
        q = ratios[i] * point_inside(rng, reference)
        s = float(rng.uniform(0.3, 0.99))
        centers[i] = centers[j] + s * (p - q)
    return HomothetFamily(reference, centers, ratios)


def sns_disk_centers(rng, n: int, radius: float = 1.0) -> np.ndarray:
    """Packing of unit disks built by tangent attachment, SNS by construction."""
    centers = [np.zeros(2)]
    while len(centers) < n:
        j = int(rng.integers(0, len(centers)))
        ang = float(rng.uniform(0.0, 2.0 * math.pi))
        cand = centers[j] + 2.0 * radius * np.array([math.cos(ang), math.sin(ang)])
        d = np.linalg.norm(np.array(centers) - cand, axis=1)
        if d.min() >= 2.0 * radius - 1e-12:
            centers.append(cand)
    return np.array(centers)


def ts_lattice_subset(rng, reference: ConvexBody, rows: int, cols: int) -> np.ndarray:
    """Block of the parallelogram lattice of K, a TS translate packing."""
    from sepgeom.measures import min_area_parallelogram

    fit = min_area_parallelogram(reference)
    corners = fit.corners()
    u = corners[1] - corners[0]
    v = corners[3] - corners[0]
    ii, jj = np.meshgrid(np.arange(cols), np.arange(rows))
    return ii.reshape(-1, 1) * u + jj.reshape(-1, 1) * v


def tangent_cap_chain(rng, k: int, radii=None) -> list:
    """Chain of pairwise tangent caps walked along random tangent turns."""
    from sepgeom.spherical import Cap, _tangent_frame

    if radii is None:
        radii = rng.uniform(0.08, 0.16, k)
    radii = np.asarray(radii, dtype=float)
    centers = [np.array([0.0, 0.0, 1.0])]
    heading = 0.0
    for i in range(1, k):
        heading += float(rng.uniform(-0.6, 0.6))
        e1, e2 = _tangent_frame(centers[-1])
        step = radii[i - 1] + radii[i]
        w = math.cos(heading) * e1 + math.sin(heading) * e2
        c = math.cos(step) * centers[-1] + math.sin(step) * w
        centers.append(c / np.linalg.norm(c))
    return [Cap(c, float(r)) for c, r in zip(centers, radii)]


def random_guillotine(rng, n_cuts: int, min_side: float = 0.12):
    """Axis-cut partition of the unit cube with one inscribed ball per cell."""
    from sepgeom.packing import GuillotinePartition, PlaneCut

    lo = np.zeros(3)
    hi = np.ones(3)
    boxes = [(lo.copy(), hi.copy())]
    cuts = []
    for _ in range(n_cuts):
        wide = [
            (i, k)
            for i, (a, b) in enumerate(boxes)
            for k in range(3)
            if b[k] - a[k] >= 2.0 * min_side
        ]
        if not wide:
            break
        i, k = wide[int(rng.integers(0, len(wide)))]
        a, b = boxes[i]
        c = float(rng.uniform(a[k] + min_side, b[k] - min_side))
        e = np.zeros(3)
        e[k] = 1.0
        cuts.append(PlaneCut(cell=i, normal=e, offset=c))
        below_hi = b.copy()
        below_hi[k] = c
        above_lo = a.copy()
        above_lo[k] = c
        boxes[i] = (a, below_hi)
        boxes.append((above_lo, b))
    r = min(float((b - a).min()) for a, b in boxes) / 2.0
    balls = tuple((0.5 * (a + b), r) for a, b in boxes)
    return GuillotinePartition(lo, hi, tuple(cuts), balls)


def house7_centers() -> np.ndarray:
    """Square plus a regular pentagon of unit edges sharing one side."""
    s, c = math.sin(math.radians(108.0)), math.cos(math.radians(108.0))
    p3 = np.array([1.0 + s, 1.0 - c])
    p5 = np.array([1.0 + s, c])
    p4 = np.array([1.0 + s + math.sin(math.radians(36.0)), 0.5])
    return np.array(
        [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], p3, p4, p5]
    )


def thirteen_ts_centers() -> np.ndarray:
    """3x4 block of the unit lattice plus one pendant disk."""
    pts = [(x, y) for y in range(4) for x in range(3)]
    pts.append((3, 0))
    return np.array(pts, dtype=float)


def thirteen_pentagon_centers() -> np.ndarray:
    """Five-square polyomino with an equilateral-pentagon face attached.

    The pentagon has vertices (0,1),(0,0),(1,0),D,E with unit edges and
    mirror symmetry in y = x; D = (t + 1/sqrt2, t) solves
    (t + 1/sqrt2 - 1)^2 + t^2 = 1.
    """
    b = 1.0 / math.sqrt(2.0) - 1.0
    t = (-b + math.sqrt(2.0 - b * b)) / 2.0
    d = np.array([t + 1.0 / math.sqrt(2.0), t])
    e = d[::-1].copy()
    lattice = [
        (x, y)
        for x in (-2, -1, 0)
        for y in (-1, 0, 1)
    ] + [(1, -1), (1, 0)]
    return np.vstack([np.array(lattice, dtype=float), d[None, :], e[None, :]])


def disk_bodies(centers, radius: float) -> list:
    return [ConvexBody.disk(c, radius) for c in np.asarray(centers, dtype=float)]

"""Packing checks: area bounds, contact counts, density estimates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bodies import (
    EPS,
    ConvexBody,
    GeometryError,
    minkowski_norm,
    unit,
)
from .measures import (
    area,
    disk_box_area,
    hull_of_centers,
    min_area_parallelogram,
    minkowski_sum_polygons,
    mixed_area,
    polygon_area,
    polygon_perimeter,
    sum_area,
)
from .separability import TSResult, is_ts_packing
from ._kernels import simplex_covered

PI = math.pi
TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# translate packings and their gauge
# ---------------------------------------------------------------------------


def difference_body(body: ConvexBody) -> ConvexBody:
    """Central symmetral K + (-K), an o-symmetric body at the origin."""
    body.require_full_dimensional("difference body")
    if body.kind == "disk":
        return ConvexBody.disk((0.0, 0.0), 2.0 * body.radius)
    return ConvexBody.polygon(minkowski_sum_polygons(body.vertices, -body.vertices))


def translate_gauge(reference: ConvexBody, delta) -> float:
    """Normalized distance between two translates of K offset by delta.

    Equals 2 exactly when x + K and x + delta + K touch, > 2 when they are
    disjoint, < 2 when their interiors overlap. For o-symmetric K this is the
    Minkowski norm |delta|_K.
    """
    return 2.0 * minkowski_norm(difference_body(reference), delta)


@dataclass(frozen=True)
class TranslatePacking:
    """Translates reference + c for each row c of centers."""

    reference: ConvexBody
    centers: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.centers, dtype=float)
        if c.ndim != 2 or c.shape[1] != 2:
            raise GeometryError("centers must be an (n, 2) array")
        object.__setattr__(self, "centers", c)

    def __len__(self) -> int:
        return len(self.centers)

    def bodies(self) -> list[ConvexBody]:
        return [self.reference.translate(c) for c in self.centers]

    def validate(self, tol: float = EPS) -> None:
        """Raise if any two translates have overlapping interiors."""
        diff = difference_body(self.reference)
        c = self.centers
        for i in range(len(c)):
            for j in range(i + 1, len(c)):
                if 2.0 * minkowski_norm(diff, c[j] - c[i]) < 2.0 - tol:
                    raise GeometryError(f"not a packing: members {i} and {j} overlap")

    def contact_graph(self, tol: float = EPS) -> "ContactGraph":
        return contact_graph(self.reference, self.centers, tol)


# ---------------------------------------------------------------------------
# density of the densest totally separable arrangement
# ---------------------------------------------------------------------------


def separable_packing_density(body: ConvexBody) -> float:
    """Largest density of a totally separable packing by translates of K.

    Equals area(K) divided by the area of the smallest parallelogram
    circumscribed about K; a disk gives pi/4.
    """
    body.require_full_dimensional("packing density")
    return area(body) / min_area_parallelogram(body).area


def window_density(centers, radius: float, lo, hi) -> float:
    """Covered fraction of the window [lo, hi] for disks clipped to it."""
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    c = np.asarray(centers, dtype=float)
    box = float((hi - lo).prod())
    if box <= 0.0:
        raise GeometryError("window must have positive area")
    near = ((c > lo - radius) & (c < hi + radius)).all(axis=1)
    total = 0.0
    for p in c[near]:
        total += disk_box_area(p, radius, lo, hi)
    return total / box


# ---------------------------------------------------------------------------
# hull area bound for totally separable packings
# ---------------------------------------------------------------------------


def _centrally_symmetric(body: ConvexBody, tol: float = 1e-7) -> bool:
    return body.translate(-body.centroid()).is_origin_symmetric(tol)


@dataclass(frozen=True)
class AreaBoundReport:
    n: int
    lhs: float
    rhs: float
    slack: float
    symmetric: bool
    pgram_area: float
    hull_area: float
    ts: TSResult | None

    def holds(self, tol: float = 1e-9) -> bool:
        return self.slack >= -tol


def area_bound_check(
    reference: ConvexBody, centers, tol: float = EPS, check_ts: bool = True
) -> AreaBoundReport:
    """Lower bound on area(conv(centers) + K) for totally separable packings.

    With n translates and C = conv of the centers, the sum C + K has area at
    least (2/3)(n-1) * pgram + area(K) + area(C)/3 where pgram is the smallest
    circumscribed parallelogram of K; if K or C is centrally symmetric the
    stronger bound (n-1) * pgram + area(K) applies.
    """
    reference.require_full_dimensional("area bound")
    c = np.asarray(centers, dtype=float)
    n = len(c)
    ts = None
    if check_ts:
        ts = is_ts_packing([reference.translate(p) for p in c], tol)
        if not ts.is_ts:
            raise GeometryError("the translates do not form a totally separable packing")

    hv = hull_of_centers(c)
    if len(hv) == 1:
        hull_area = 0.0
        lhs = area(reference)
        csym = True
    elif len(hv) == 2:
        hull_area = 0.0
        lhs = sum_area(ConvexBody.segment(hv[0], hv[1]), reference)
        csym = True
    else:
        cbody = ConvexBody.polygon(hv)
        hull_area = area(cbody)
        lhs = sum_area(cbody, reference)
        csym = _centrally_symmetric(cbody)

    pg = min_area_parallelogram(reference).area
    symmetric = csym or _centrally_symmetric(reference)
    if symmetric:
        rhs = (n - 1) * pg + area(reference)
    else:
        rhs = (2.0 / 3.0) * (n - 1) * pg + area(reference) + hull_area / 3.0
    return AreaBoundReport(n, lhs, rhs, lhs - rhs, symmetric, pg, hull_area, ts)


# ---------------------------------------------------------------------------
# norm length, the Oler inequality and the mixed-area inequality
# ---------------------------------------------------------------------------


def minkowski_length(reference: ConvexBody, points, closed: bool = True) -> float:
    """Length of a polygonal path in the norm whose unit ball is K."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or len(pts) == 0:
        raise GeometryError("path needs an (m, 2) array of vertices")
    steps = np.roll(pts, -1, axis=0) - pts if closed else pts[1:] - pts[:-1]
    total = 0.0
    for s in steps:
        if s @ s > 0.0:
            total += minkowski_norm(reference, s)
    return total


def _seg_dist(p, a, b) -> float:
    """Distance from p to the segment [a, b]."""
    d = b - a
    dd = float(d @ d)
    t = 0.0 if dd == 0.0 else min(1.0, max(0.0, float((p - a) @ d) / dd))
    return float(np.linalg.norm(p - (a + t * d)))


def _segments_cross(a, b, c, d) -> bool:
    """True when [a,b] and [c,d] share a point (endpoints included)."""

    def orient(p, q, r):
        v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
        scale = max(1.0, abs(q[0] - p[0]) + abs(q[1] - p[1]) + abs(r[0] - p[0]) + abs(r[1] - p[1]))
        if abs(v) <= 1e-12 * scale:
            return 0
        return 1 if v > 0 else -1

    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 != o2 and o3 != o4:
        return True

    def on(p, q, r):
        return orient(p, q, r) == 0 and min(p[0], q[0]) - 1e-12 <= r[0] <= max(
            p[0], q[0]
        ) + 1e-12 and min(p[1], q[1]) - 1e-12 <= r[1] <= max(p[1], q[1]) + 1e-12

    return on(a, b, c) or on(a, b, d) or on(c, d, a) or on(c, d, b)


def _loop_is_simple(poly: np.ndarray) -> bool:
    m = len(poly)
    for i in range(m):
        a, b = poly[i], poly[(i + 1) % m]
        for j in range(i + 1, m):
            if j == i or (j + 1) % m == i or (i + 1) % m == j:
                continue
            if _segments_cross(a, b, poly[j], poly[(j + 1) % m]):
                return False
    return True


def _point_in_loop(p, poly: np.ndarray, tol: float) -> bool:
    """Membership in the closed region bounded by a simple loop."""
    m = len(poly)
    for i in range(m):
        if _seg_dist(p, poly[i], poly[(i + 1) % m]) <= tol:
            return True
    # ray crossing to +x
    inside = False
    x, y = p
    for i in range(m):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % m]
        if (y1 > y) != (y2 > y):
            xs = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if xs > x:
                inside = not inside
    return inside


@dataclass(frozen=True)
class OlerReport:
    n: int
    enclosed_area: float
    norm_length: float
    pgram_area: float
    lhs: float
    slack: float
    degenerate: bool

    def holds(self, tol: float = 1e-9) -> bool:
        return self.slack >= -tol


def oler_check(reference: ConvexBody, centers, loop, tol: float = EPS) -> OlerReport:
    """Verify the closed-curve packing inequality for an o-symmetric body.

    centers must be pairwise at norm distance >= 2 and all lie in the region
    bounded by the closed polygonal curve through centers[loop]; then
    area / pgram + length / 4 + 1 >= n.
    """
    reference.require_full_dimensional("norm inequality")
    if not reference.is_origin_symmetric(1e-9):
        raise GeometryError("the norm inequality needs an o-symmetric body")
    c = np.asarray(centers, dtype=float)
    n = len(c)
    idx = np.asarray(loop, dtype=int)
    if idx.ndim != 1 or len(idx) < 1 or idx.min() < 0 or idx.max() >= n:
        raise GeometryError("loop must index rows of centers")
    for i in range(n):
        for j in range(i + 1, n):
            if minkowski_norm(reference, c[j] - c[i]) < 2.0 - tol:
                raise GeometryError(f"not a packing: members {i} and {j} overlap")

    poly = c[idx]
    span = poly - poly[0]
    scale = max(1.0, float(np.abs(span).max()))
    cross = np.abs(span[:, None, 0] * span[None, :, 1] - span[:, None, 1] * span[None, :, 0])
    degenerate = bool(cross.max() <= 1e-9 * scale * scale)

    if degenerate:
        # out-and-back curve along a segment: zero area, membership on the hull
        hv = hull_of_centers(poly)
        a, b = (hv[0], hv[0]) if len(hv) == 1 else (hv[0], hv[-1])
        if any(_seg_dist(p, a, b) > 1e-7 for p in c):
            raise GeometryError("all centers must lie in the region bounded by the curve")
        enclosed = 0.0
    else:
        if not _loop_is_simple(poly):
            raise GeometryError("the curve must be simple")
        enclosed = abs(polygon_area(poly))
        scale = max(1.0, float(np.abs(poly).max()))
        if any(not _point_in_loop(p, poly, 1e-7 * scale) for p in c):
            raise GeometryError("all centers must lie in the region bounded by the curve")

    pg = min_area_parallelogram(reference).area
    length = minkowski_length(reference, poly, closed=True)
    lhs = enclosed / pg + length / 4.0 + 1.0
    return OlerReport(n, enclosed, length, pg, lhs, lhs - n, degenerate)


@dataclass(frozen=True)
class MixedAreaReport:
    mixed: float
    pgram_area: float
    norm_length: float
    lhs: float
    slack: float

    def holds(self, tol: float = 1e-9) -> bool:
        return self.slack >= -tol


def radon_mixed_area_check(reference: ConvexBody, q_vertices, tol: float = EPS) -> MixedAreaReport:
    """Check 8 A(Q, K) / pgram >= length of bd Q in the norm of K."""
    reference.require_full_dimensional("mixed area")
    if not reference.is_origin_symmetric(1e-9):
        raise GeometryError("the mixed-area inequality needs an o-symmetric body")
    q = ConvexBody.polygon(q_vertices)
    pg = min_area_parallelogram(reference).area
    mx = mixed_area(q, reference)
    length = minkowski_length(reference, q.vertices, closed=True)
    lhs = 8.0 * mx / pg
    return MixedAreaReport(mx, pg, length, lhs, lhs - length)


# ---------------------------------------------------------------------------
# perimeter of successively attachable unit-disk families
# ---------------------------------------------------------------------------


def _dist_to_hull(p, pts: np.ndarray) -> float:
    hv = hull_of_centers(pts)
    if len(hv) == 1:
        return float(np.linalg.norm(p - hv[0]))
    if len(hv) == 2:
        return _seg_dist(p, hv[0], hv[1])
    edges = np.roll(hv, -1, axis=0) - hv
    rel = p - hv
    if (edges[:, 0] * rel[:, 1] - edges[:, 1] * rel[:, 0] >= 0.0).all():
        return 0.0
    return min(_seg_dist(p, hv[i], hv[(i + 1) % len(hv)]) for i in range(len(hv)))


def _successive_ordering(c: np.ndarray, tol: float) -> tuple[int, ...] | None:
    """Greedy order where each unit disk reaches the hull of the previous ones.

    A disk misses the hull of a subset only if it misses the hull of every
    sub-subset, so greedy growth from each start is exhaustive.
    """
    n = len(c)
    for start in range(n):
        order = [start]
        rest = [i for i in range(n) if i != start]
        while rest:
            pick = None
            for i in rest:
                if _dist_to_hull(c[i], c[order]) <= 2.0 + tol:
                    pick = i
                    break
            if pick is None:
                break
            order.append(pick)
            rest.remove(pick)
        if not rest:
            return tuple(order)
    return None


def _center_hull_perimeter(c: np.ndarray) -> float:
    hv = hull_of_centers(c)
    if len(hv) == 1:
        return 0.0
    if len(hv) == 2:
        return 2.0 * float(np.linalg.norm(hv[1] - hv[0]))
    return polygon_perimeter(hv)


@dataclass(frozen=True)
class ChainPerimeterReport:
    n: int
    ordering: tuple[int, ...]
    perimeter: float
    bound: float
    slack: float
    mean_width: float
    mean_width_bound: float
    equality: bool


def sns_perimeter_check(centers, ordering=None, tol: float = EPS) -> ChainPerimeterReport:
    """Perimeter bound 2 pi + 4n - 4 for successively attachable unit disks.

    Each disk after the first must intersect the hull of its predecessors;
    equality needs collinear centers spaced exactly 2 apart. The mean width
    bound 2 + (4n - 4) / pi is the same statement via per = pi * mw.
    """
    c = np.asarray(centers, dtype=float)
    n = len(c)
    if n < 1:
        raise GeometryError("need at least one disk")
    if ordering is None:
        found = _successive_ordering(c, tol)
        if found is None:
            raise GeometryError("no ordering attaches every disk to the previous hull")
        ordering = found
    else:
        ordering = tuple(int(i) for i in ordering)
        if sorted(ordering) != list(range(n)):
            raise GeometryError("ordering must be a permutation of the disks")
        for k in range(1, n):
            d = _dist_to_hull(c[ordering[k]], c[list(ordering[:k])])
            if d > 2.0 + tol:
                raise GeometryError(
                    f"ordering is not successive: disk {ordering[k]} misses the previous hull"
                )
    per = TWO_PI + _center_hull_perimeter(c)
    bound = TWO_PI + 4.0 * n - 4.0
    slack = bound - per
    return ChainPerimeterReport(
        n=n,
        ordering=ordering,
        perimeter=per,
        bound=bound,
        slack=slack,
        mean_width=per / PI,
        mean_width_bound=2.0 + (4.0 * n - 4.0) / PI,
        equality=abs(slack) <= 1e-9,
    )


# ---------------------------------------------------------------------------
# extremal hulls of three pairwise non-splittable unit disks
# ---------------------------------------------------------------------------


def three_disk_non_separable(centers, tol: float = EPS) -> bool:
    """No line misses three unit disks and splits them.

    Holds exactly when each center is within 2 of the segment joining the
    other two.
    """
    c = np.asarray(centers, dtype=float)
    if c.shape != (3, 2):
        raise GeometryError("expected three centers")
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        if _seg_dist(c[i], c[j], c[k]) > 2.0 + tol:
            return False
    return True


def three_disk_hull_metrics(centers) -> tuple[float, float, float, float]:
    """Area, perimeter, min width and inradius of the hull of three unit disks.

    The hull is conv(centers) + unit disk, so area, perimeter, width and
    inradius all reduce to triangle quantities.
    """
    c = np.asarray(centers, dtype=float)
    hv = hull_of_centers(c)
    if len(hv) == 1:
        t_area = t_per = t_w = t_r = 0.0
    elif len(hv) == 2:
        t_area = t_w = t_r = 0.0
        t_per = 2.0 * float(np.linalg.norm(hv[1] - hv[0]))
    else:
        t_area = abs(polygon_area(hv))
        t_per = polygon_perimeter(hv)
        sides = np.linalg.norm(np.roll(hv, -1, axis=0) - hv, axis=1)
        t_w = 2.0 * t_area / sides.max()
        t_r = 2.0 * t_area / t_per
    return (PI + t_area + t_per, TWO_PI + t_per, 2.0 + t_w, 1.0 + t_r)


def _obtuse_branch(g: np.ndarray) -> dict[str, np.ndarray]:
    # apex angle g in [pi/2, pi], both enclosing sides of length 2
    per_t = 4.0 + 4.0 * np.sin(g / 2.0)
    area_t = 2.0 * np.sin(g)
    return {
        "area": PI + area_t + per_t,
        "perimeter": TWO_PI + per_t,
        "width": 2.0 + 2.0 * np.cos(g / 2.0),
        "inradius": 1.0 + np.sin(g) / (1.0 + np.sin(g / 2.0)),
    }


def _acute_branch(g: np.ndarray) -> dict[str, np.ndarray]:
    # apex angle g in [pi/3, pi/2], the two heights through the base equal 2
    per_t = 4.0 / np.sin(g) + 2.0 / np.cos(g / 2.0)
    area_t = 2.0 / np.sin(g)
    return {
        "area": PI + area_t + per_t,
        "perimeter": TWO_PI + per_t,
        "width": 2.0 + 1.0 / np.sin(g / 2.0),
        "inradius": 1.0 + 1.0 / (1.0 + np.sin(g / 2.0)),
    }


def _refine_max(f, a: float, b: float) -> tuple[float, float]:
    """Golden-section maximum of a scalar unimodal function on [a, b]."""
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - phi * (b - a)
    x2 = a + phi * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > 1e-13:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + phi * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - phi * (b - a)
            f1 = f(x1)
    x = 0.5 * (a + b)
    return x, f(x)


@dataclass(frozen=True)
class BranchExtremum:
    quantity: str
    value: float
    gamma: float
    branch: str


@dataclass(frozen=True)
class ThreeDiskReport:
    area: BranchExtremum
    perimeter: BranchExtremum
    width: BranchExtremum
    inradius: BranchExtremum
    flags: tuple[str, ...]


def three_disk_extrema(samples: int = 4096) -> ThreeDiskReport:
    """Maxima of hull area, perimeter, width and inradius over such families.

    Maximizers live on two one-parameter families: an obtuse apex with both
    enclosing sides of length 2, or an acute apex with the two base heights
    equal to 2. Each branch is scanned and refined by golden section.
    """
    branches = (
        ("obtuse", _obtuse_branch, PI / 2.0, PI),
        ("acute", _acute_branch, PI / 3.0, PI / 2.0),
    )
    out = {}
    for qty in ("area", "perimeter", "width", "inradius"):
        best = None
        for name, fn, a, b in branches:
            g = np.linspace(a, b, samples)
            vals = fn(g)[qty]
            k = int(np.argmax(vals))
            lo = g[max(0, k - 1)]
            hi = g[min(samples - 1, k + 1)]
            x, v = _refine_max(lambda t: float(fn(np.array([t]))[qty][0]), lo, hi)
            if best is None or v > best.value:
                best = BranchExtremum(qty, v, x, name)
        out[qty] = best
    flags = (
        "hull area peaks at pi + 16*sqrt(3)/3 = {:.6f} (regular triangle, heights 2); "
        "the obtuse branch only reaches pi + 4 + 3*sqrt(3) = {:.6f}".format(
            PI + 16.0 * math.sqrt(3.0) / 3.0, PI + 4.0 + 3.0 * math.sqrt(3.0)
        ),
        "hull inradius is the triangle inradius plus 1, so its maximum is 5/3",
    )
    return ThreeDiskReport(
        area=out["area"],
        perimeter=out["perimeter"],
        width=out["width"],
        inradius=out["inradius"],
        flags=flags,
    )


# ---------------------------------------------------------------------------
# contact graphs and contact-number bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContactGraph:
    edges: tuple[tuple[int, int], ...]
    count: int
    degrees: np.ndarray


def contact_graph(reference: ConvexBody, centers, tol: float = EPS) -> ContactGraph:
    """Touching pairs among the translates reference + c."""
    c = np.asarray(centers, dtype=float)
    n = len(c)
    edges = []
    degrees = np.zeros(n, dtype=np.int64)
    rounded = np.round(c)
    integral = (
        reference.kind == "disk"
        and abs(reference.radius - 0.5) <= 1e-12
        and np.abs(c - rounded).max() <= 1e-9
    )
    if integral:
        # unit-diameter disks on lattice points: exact integer arithmetic
        pts = rounded.astype(np.int64)
        for i in range(n):
            for j in range(i + 1, n):
                d2 = int(((pts[i] - pts[j]) ** 2).sum())
                if d2 == 0:
                    raise GeometryError(f"not a packing: members {i} and {j} overlap")
                if d2 == 1:
                    edges.append((i, j))
                    degrees[i] += 1
                    degrees[j] += 1
        return ContactGraph(tuple(edges), len(edges), degrees)

    diff = difference_body(reference)
    for i in range(n):
        for j in range(i + 1, n):
            g = 2.0 * minkowski_norm(diff, c[j] - c[i])
            if g < 2.0 - tol:
                raise GeometryError(f"not a packing: members {i} and {j} overlap")
            if g <= 2.0 + tol:
                edges.append((i, j))
                degrees[i] += 1
                degrees[j] += 1
    return ContactGraph(tuple(edges), len(edges), degrees)


def crystallization_bound(
    n: int, d: int = 2, mode: str | None = None, density: float | None = None
) -> int:
    """Maximum contacts of a locally separable packing of n unit balls.

    d = 2: the exact value floor(2n - 2 sqrt(n)). d = 3: mode "hales" uses the
    upper density bound 0.7547 giving floor(3n - 1.206 n^(2/3)); mode "rogers"
    (any d >= 3) needs an explicit simplex density and gives
    floor(dn - d^(-(d-3)/2) density^(-(d-1)/d) n^((d-1)/d)).
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if d == 2:
        s = math.isqrt(n)
        if s * s == n:
            return 2 * n - 2 * s
        return 2 * n - (math.isqrt(4 * n) + 1)
    if d < 3:
        raise ValueError("dimension must be 2 or >= 3")
    if mode is None:
        mode = "hales" if d == 3 else "rogers"
    if mode == "hales":
        if d != 3:
            raise ValueError("the 1.206 constant is specific to d = 3")
        r = round(n ** (1.0 / 3.0))
        if r**3 == n:
            # perfect cube: the bound is rational, evaluate it exactly
            return math.floor(Fraction(3 * n) - Fraction(1206, 1000) * r * r)
        return math.floor(3.0 * n - 1.206 * n ** (2.0 / 3.0))
    if mode == "rogers":
        if density is None or not 0.0 < density <= 1.0:
            raise ValueError("rogers mode needs a simplex density in (0, 1]")
        coef = d ** (-(d - 3) / 2.0) * density ** (-(d - 1) / d)
        return math.floor(d * n - coef * n ** ((d - 1) / d))
    raise ValueError(f"unknown mode {mode!r}")


def ulam_spiral(n: int) -> np.ndarray:
    """First n lattice points of the counterclockwise square spiral."""
    if n < 1:
        raise ValueError("need n >= 1")
    pts = np.zeros((n, 2), dtype=np.int64)
    dirs = ((1, 0), (0, 1), (-1, 0), (0, -1))
    x = y = 0
    di = 0
    run = 1
    i = 1
    while i < n:
        for _ in range(2):
            dx, dy = dirs[di]
            for _ in range(run):
                x += dx
                y += dy
                pts[i] = (x, y)
                i += 1
                if i == n:
                    return pts
            di = (di + 1) % 4
        run += 1
    return pts


@dataclass(frozen=True)
class SpiralPacking:
    centers: np.ndarray
    contacts: int
    bound: int
    tight: bool


def polyomino_packing(n: int) -> SpiralPacking:
    """Square-spiral packing of n unit-diameter disks meeting the contact bound."""
    pts = ulam_spiral(n)
    cells = {(int(p[0]), int(p[1])) for p in pts}
    contacts = sum(((x + 1, y) in cells) + ((x, y + 1) in cells) for x, y in cells)
    bound = crystallization_bound(n, 2)
    return SpiralPacking(pts.astype(float), contacts, bound, contacts == bound)


def _int_root(n: int, d: int) -> int:
    r = max(1, round(n ** (1.0 / d)))
    while r**d > n:
        r -= 1
    while (r + 1) ** d <= n:
        r += 1
    return r


@dataclass(frozen=True)
class LatticeContactBounds:
    lower: int
    upper: int
    exact: bool


def lattice_contact_bounds(d: int, n: int) -> LatticeContactBounds:
    """Bounds on the most contacts of n unit cubes (or balls) on the d-lattice.

    Lower bound d N^d - d N^(d-1) from the full N-cube with N = floor(n^(1/d)),
    upper bound floor(dn - d n^((d-1)/d)); the two meet when n is a perfect
    d-th power. In the plane the upper bound is the exact value for every n.
    """
    if d < 1 or n < 1:
        raise ValueError("need d >= 1 and n >= 1")
    big_n = _int_root(n, d)
    lower = d * big_n**d - d * big_n ** (d - 1)
    if big_n**d == n:
        upper = d * n - d * big_n ** (d - 1)
    else:
        # n^((d-1)/d) is irrational here, so the float floor is safe
        upper = math.floor(d * n - d * n ** ((d - 1) / d))
    return LatticeContactBounds(lower, upper, big_n**d == n)


@dataclass(frozen=True)
class PolyominoSearch:
    n_max: int
    max_contacts: dict[int, int]
    counts: dict[int, int]


def brute_force_lattice_contact(n_max: int) -> PolyominoSearch:
    """Exhaust every fixed polyomino with up to n_max cells, tracking contacts.

    Each polyomino is generated exactly once (growth restricted to the upper
    half-plane with the first cell at the origin). Twelve cells is about half
    a million shapes; anything larger is refused.
    """
    if not 1 <= n_max <= 12:
        raise ValueError("exhaustive search is limited to 12 cells")
    best = [0] * (n_max + 1)
    counts = [0] * (n_max + 1)
    nbr = ((1, 0), (-1, 0), (0, 1), (0, -1))
    seen = {(0, 0)}
    cells = set()

    def grow(untried: list, edges: int) -> None:
        while untried:
            cell = untried.pop()
            adj = sum((cell[0] + dx, cell[1] + dy) in cells for dx, dy in nbr)
            cells.add(cell)
            e = edges + adj
            k = len(cells)
            counts[k] += 1
            if e > best[k]:
                best[k] = e
            if k < n_max:
                fresh = [
                    m
                    for m in ((cell[0] + dx, cell[1] + dy) for dx, dy in nbr)
                    if (m[1] > 0 or (m[1] == 0 and m[0] >= 0)) and m not in seen
                ]
                seen.update(fresh)
                grow(untried + fresh, e)
                seen.difference_update(fresh)
            cells.remove(cell)
            # cell stays in seen: later branches at this level must skip it

    grow([(0, 0)], 0)
    return PolyominoSearch(
        n_max,
        {k: best[k] for k in range(1, n_max + 1)},
        {k: counts[k] for k in range(1, n_max + 1)},
    )


# ---------------------------------------------------------------------------
# simplex density by Monte Carlo
# ---------------------------------------------------------------------------


def simplex_vertices(d: int) -> np.ndarray:
    """Vertices of a regular d-simplex with edge length 2, centered at o."""
    if d < 1:
        raise ValueError("need d >= 1")
    x = np.eye(d + 1) * math.sqrt(2.0)
    x -= x.mean(axis=0)
    _, _, vt = np.linalg.svd(x, full_matrices=False)
    return x @ vt[:d].T


@dataclass(frozen=True)
class MonteCarloEstimate:
    value: float
    stderr: float
    samples: int
    seed: int


def rogers_sigma(d: int, samples: int = 2_000_000, seed: int = 0) -> MonteCarloEstimate:
    """Fraction of a regular edge-2 simplex covered by unit balls at its vertices.

    Monte Carlo with Dirichlet sampling; stderr is the binomial estimate. The
    planar value is pi / sqrt(12) and d = 3 gives about 0.7797.
    """
    if samples < 1:
        raise ValueError("need samples >= 1")
    verts = np.ascontiguousarray(simplex_vertices(d))
    rng = np.random.default_rng(seed)
    hits = 0
    done = 0
    while done < samples:
        m = min(1_000_000, samples - done)
        hits += int(simplex_covered(verts, rng.random((m, d + 1))))
        done += m
    p = hits / samples
    return MonteCarloEstimate(p, math.sqrt(max(p * (1.0 - p), 0.0) / samples), samples, seed)


# ---------------------------------------------------------------------------
# guillotine partitions of a cube
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlaneCut:
    cell: int
    normal: np.ndarray
    offset: float


@dataclass(frozen=True)
class GuillotinePartition:
    lo: np.ndarray
    hi: np.ndarray
    cuts: tuple
    balls: tuple


@dataclass(frozen=True)
class PartitionReport:
    n_cells: int
    ball_radius: float
    total_surface: float
    surface_bound: float
    volume: float
    volume_bound: float
    cell_volumes: tuple
    holds_surface: bool
    holds_volume: bool


def kertesz_check(partition: GuillotinePartition, tol: float = 1e-7) -> PartitionReport:
    """Surface and volume bounds for ball-carrying guillotine partitions.

    A cube split by successive plane cuts into N convex cells, each containing
    a ball of radius r, has total cell surface at least 24 N r^2 and volume at
    least 8 N r^3.
    """
    from scipy.spatial import ConvexHull, HalfspaceIntersection, QhullError

    lo = np.asarray(partition.lo, dtype=float)
    hi = np.asarray(partition.hi, dtype=float)
    side = hi - lo
    if lo.shape != (3,) or (side <= 0).any():
        raise GeometryError("box corners must give a positive 3d box")
    if np.abs(side - side[0]).max() > 1e-9 * side[0]:
        raise GeometryError("the container must be a cube")

    cells: list[list[tuple[np.ndarray, float]]] = [[]]
    for k in range(3):
        e = np.zeros(3)
        e[k] = 1.0
        cells[0].append((e.copy(), hi[k]))
        cells[0].append((-e, -lo[k]))
    for cut in partition.cuts:
        idx = int(cut.cell)
        if not 0 <= idx < len(cells):
            raise GeometryError(f"cut refers to missing cell {idx}")
        u = unit(np.asarray(cut.normal, dtype=float))
        off = float(cut.offset) / float(np.linalg.norm(cut.normal))
        below = cells[idx] + [(u, off)]
        above = cells[idx] + [(-u, -off)]
        cells[idx] = below
        cells.append(above)

    n_cells = len(cells)
    balls = [(np.asarray(c, dtype=float), float(r)) for c, r in partition.balls]
    if len(balls) != n_cells:
        raise GeometryError(f"{n_cells} cells need {n_cells} balls, got {len(balls)}")
    if any(r <= 0 for _, r in balls):
        raise GeometryError("balls need positive radius")

    def ball_inside(cell, center, r):
        return all(a @ center + r <= b + tol for a, b in cell)

    owner = [-1] * n_cells
    for bi, (center, r) in enumerate(balls):
        homes = [ci for ci in range(n_cells) if ball_inside(cells[ci], center, r)]
        if len(homes) != 1:
            raise GeometryError(f"ball {bi} must sit in exactly one cell")
        if owner[homes[0]] != -1:
            raise GeometryError(f"cell {homes[0]} holds more than one ball")
        owner[homes[0]] = bi

    volumes = []
    surfaces = []
    for ci, cell in enumerate(cells):
        arr = np.array([[a[0], a[1], a[2], -b] for a, b in cell])
        center = balls[owner[ci]][0]
        try:
            hs = HalfspaceIntersection(arr, center)
            hull = ConvexHull(hs.intersections)
        except QhullError as exc:
            raise GeometryError(f"cell {ci} is degenerate: {exc}") from exc
        volumes.append(float(hull.volume))
        surfaces.append(float(hull.area))

    vol = float(side.prod())
    if abs(sum(volumes) - vol) > 1e-6 * vol:
        raise GeometryError("cell volumes do not add up to the cube volume")
    r = min(r for _, r in balls)
    surf = float(sum(surfaces))
    sb = 24.0 * n_cells * r * r
    vb = 8.0 * n_cells * r**3
    return PartitionReport(
        n_cells=n_cells,
        ball_radius=r,
        total_surface=surf,
        surface_bound=sb,
        volume=vol,
        volume_bound=vb,
        cell_volumes=tuple(volumes),
        holds_surface=surf >= sb - tol * max(1.0, sb),
        holds_volume=vol >= vb - tol * max(1.0, vb),
    )

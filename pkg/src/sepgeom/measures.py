"""Size functionals of planar convex bodies.

Covers the classical quantities (area, perimeter, diameter, circumradius,
inradius, minimal width, mean width), the smallest circumscribed
parallelogram and quadrilateral, mixed areas, and parallel-body areas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog, minimize

from .bodies import (
    EPS,
    ConvexBody,
    GeometryError,
    _strict_hull,
    perp,
    polygon_facets,
    raw_support,
    unit,
)

TWO_PI = 2.0 * math.pi


def polygon_area(vertices: np.ndarray) -> float:
    v = np.asarray(vertices, dtype=float)
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def polygon_perimeter(vertices: np.ndarray) -> float:
    v = np.asarray(vertices, dtype=float)
    return float(np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1).sum())


def area(body: ConvexBody) -> float:
    if body.degenerate:
        return 0.0
    if body.kind == "disk":
        return math.pi * body.radius**2
    return abs(polygon_area(body.vertices))


def perimeter(body: ConvexBody) -> float:
    if body.kind == "segment":
        return 2.0 * float(np.linalg.norm(body.vertices[1] - body.vertices[0]))
    if body.kind == "disk":
        return TWO_PI * body.radius
    return polygon_perimeter(body.vertices)


# ---------------------------------------------------------------------------
# smallest enclosing disk of disks (exact, support set of size <= 3)
# ---------------------------------------------------------------------------


def enclosing_disk_of_disks(centers, radii) -> tuple[np.ndarray, float]:
    """Smallest disk containing every disk (c_i, r_i). Points allowed (r=0).

    The optimum is internally tangent to at most three members, so all
    singleton, pair, and triple support sets are solved in closed form and
    the best feasible candidate returned.
    """
    cs = np.atleast_2d(np.asarray(centers, dtype=float))
    rs = np.atleast_1d(np.asarray(radii, dtype=float))
    n = len(cs)
    scale = max(1.0, float(np.abs(cs).max()), float(rs.max()))
    tol = 1e-11 * scale

    def covers(c, R):
        return bool((np.linalg.norm(cs - c, axis=1) + rs <= R + tol).all())

    best_c, best_r = None, math.inf

    # singletons
    for i in range(n):
        if rs[i] < best_r and covers(cs[i], rs[i]):
            best_c, best_r = cs[i], float(rs[i])

    # pairs: center on the segment, tangent to both
    for i in range(n):
        for j in range(i + 1, n):
            d = float(np.linalg.norm(cs[j] - cs[i]))
            if d <= tol:
                continue
            R = 0.5 * (d + rs[i] + rs[j])
            if R >= best_r:
                continue
            u = (cs[j] - cs[i]) / d
            c = cs[i] + (R - rs[i]) * u
            if covers(c, R):
                best_c, best_r = c, R

    # triples: |c - m_k| = R - r_k, linearized pairwise then solved in R
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                m = cs[[i, j, k]]
                r = rs[[i, j, k]]
                a_mat = 2.0 * (m[1:] - m[0])
                if abs(np.linalg.det(a_mat)) <= 1e-12 * scale * scale:
                    continue
                sq = np.einsum("ij,ij->i", m, m)
                u_vec = sq[1:] - sq[0] + r[0] ** 2 - r[1:] ** 2
                v_vec = -2.0 * (r[0] - r[1:])
                inv = np.linalg.inv(a_mat)
                p = inv @ u_vec  # c(R) = p + R*q
                q = inv @ v_vec
                # |p + R q - m0|^2 = (R - r0)^2
                w = p - m[0]
                aa = q @ q - 1.0
                bb = 2.0 * (w @ q + r[0])
                cc = w @ w - r[0] ** 2
                if abs(aa) < 1e-14:
                    roots = [-cc / bb] if abs(bb) > 1e-14 else []
                else:
                    disc = bb * bb - 4 * aa * cc
                    if disc < 0:
                        continue
                    sdisc = math.sqrt(disc)
                    roots = [(-bb - sdisc) / (2 * aa), (-bb + sdisc) / (2 * aa)]
                for R in roots:
                    if R <= max(r) - tol or R >= best_r:
                        continue
                    c = p + R * q
                    if covers(c, R):
                        best_c, best_r = c, float(R)

    if best_c is None:
        raise GeometryError("enclosing disk search failed")
    return np.array(best_c, dtype=float), float(best_r)


def circumscribed_disk(body: ConvexBody) -> tuple[np.ndarray, float]:
    if body.kind == "disk":
        return np.array(body.center), body.radius
    return enclosing_disk_of_disks(body.vertices, np.zeros(len(body.vertices)))


def inscribed_disk(body: ConvexBody) -> tuple[np.ndarray, float]:
    """Chebyshev center and inradius (LP for polygons)."""
    if body.kind == "disk":
        return np.array(body.center), body.radius
    normals, offsets = polygon_facets(body)
    a_ub = np.hstack([normals, np.ones((len(normals), 1))])
    res = linprog(
        c=[0.0, 0.0, -1.0],
        A_ub=a_ub,
        b_ub=offsets,
        bounds=[(None, None), (None, None), (0, None)],
        method="highs",
    )
    if not res.success:
        raise GeometryError(f"inradius LP failed: {res.message}")
    return res.x[:2].copy(), float(res.x[2])


# ---------------------------------------------------------------------------
# size report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SizeReport:
    area: float
    perimeter: float
    diameter: float
    circumradius: float
    inradius: float
    min_width: float
    mean_width: float


def size_report(body: ConvexBody) -> SizeReport:
    body.require_full_dimensional("size_report")
    if body.kind == "polytope":
        raise GeometryError("size_report supports planar bodies")
    per = perimeter(body)
    if body.kind == "disk":
        r = body.radius
        return SizeReport(math.pi * r * r, per, 2 * r, r, r, 2 * r, per / math.pi)
    v = body.vertices
    diff = v[:, None, :] - v[None, :, :]
    diam = float(np.sqrt((diff**2).sum(axis=2)).max())
    _, circum = circumscribed_disk(body)
    _, inr = inscribed_disk(body)
    normals, _ = polygon_facets(body)
    widths = support_width(body, normals)
    return SizeReport(
        area=area(body),
        perimeter=per,
        diameter=diam,
        circumradius=circum,
        inradius=inr,
        min_width=float(widths.min()),
        mean_width=per / math.pi,
    )


def support_width(body: ConvexBody, dirs: np.ndarray) -> np.ndarray:
    """Width h(u) + h(-u) for an array of unit directions."""
    if body.kind == "disk":
        return np.full(len(dirs), 2.0 * body.radius)
    vals = dirs @ body.vertices.T
    return vals.max(axis=1) - vals.min(axis=1)


# ---------------------------------------------------------------------------
# smallest circumscribed parallelogram
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParallelogramFit:
    """Circumscribed parallelogram {x : lo_k <= <n_k, x> <= hi_k, k = 1, 2}."""

    normals: np.ndarray  # (2, 2) unit rows
    los: np.ndarray
    his: np.ndarray
    area: float

    def corners(self) -> np.ndarray:
        n1, n2 = self.normals
        pts = []
        for a in (self.los[0], self.his[0]):
            for b in (self.los[1], self.his[1]):
                pts.append(np.linalg.solve(np.stack([n1, n2]), [a, b]))
        pts = np.array(pts)
        return _strict_hull(pts)

    def contains(self, body: ConvexBody, tol: float = EPS) -> bool:
        for k in range(2):
            hi = raw_support(body, self.normals[k])
            lo = -raw_support(body, -self.normals[k])
            if hi > self.his[k] + tol or lo < self.los[k] - tol:
                return False
        return True


def _pgram_area(body: ConvexBody, t1: float, t2: float) -> float:
    s = abs(math.sin(t2 - t1))
    if s < 1e-12:
        return math.inf
    n1 = np.array([math.cos(t1), math.sin(t1)])
    n2 = np.array([math.cos(t2), math.sin(t2)])
    w1 = raw_support(body, n1) + raw_support(body, -n1)
    w2 = raw_support(body, n2) + raw_support(body, -n2)
    return w1 * w2 / s


def _golden_min(f, a: float, b: float, tol: float) -> tuple[float, float]:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def min_area_parallelogram(body: ConvexBody, tol: float = 1e-12) -> ParallelogramFit:
    """Smallest-area circumscribed parallelogram.

    Some optimal parallelogram has a side pair flush with a polygon edge, so
    each edge direction anchors one normal and the partner normal's angle is
    minimized by a coarse scan plus golden-section refinement.
    """
    body.require_full_dimensional("min_area_parallelogram")
    if body.kind == "disk":
        c, r = body.center, body.radius
        normals = np.array([[1.0, 0.0], [0.0, 1.0]])
        los = np.array([c[0] - r, c[1] - r])
        his = np.array([c[0] + r, c[1] + r])
        return ParallelogramFit(normals, los, his, 4.0 * r * r)
    if body.kind != "polygon":
        raise GeometryError("min_area_parallelogram supports planar bodies")

    v = body.vertices
    edges = np.roll(v, -1, axis=0) - v
    anchor_angles = np.arctan2(-edges[:, 0], edges[:, 1])  # outward normal angles

    best = (math.inf, 0.0, 0.0)
    grid = 720
    for t1 in anchor_angles:
        phis = t1 + np.linspace(0.05, math.pi - 0.05, grid)
        vals = np.array([_pgram_area(body, t1, p) for p in phis])
        order = np.argsort(vals)[:3]
        for idx in order:
            a = phis[max(0, idx - 1)]
            b = phis[min(grid - 1, idx + 1)]
            x, fx = _golden_min(lambda p: _pgram_area(body, t1, p), a, b, tol)
            if fx < best[0]:
                best = (fx, t1, x)

    _, t1, t2 = best
    n1 = np.array([math.cos(t1), math.sin(t1)])
    n2 = np.array([math.cos(t2), math.sin(t2)])
    normals = np.stack([n1, n2])
    his = np.array([raw_support(body, n1), raw_support(body, n2)])
    los = np.array([-raw_support(body, -n1), -raw_support(body, -n2)])
    return ParallelogramFit(normals, los, his, best[0])


def min_area_quadrilateral(body: ConvexBody, starts: int = 12, seed: int = 7) -> tuple[np.ndarray, float]:
    """Smallest circumscribed quadrilateral by multi-start local search over
    four tangent-line angles. Numerical, documented as approximate."""
    body.require_full_dimensional("min_area_quadrilateral")

    def quad(angles):
        ns = np.stack([np.cos(angles), np.sin(angles)], axis=1)
        hs = np.array([raw_support(body, n) for n in ns])
        pts = []
        for k in range(4):
            a, b = k, (k + 1) % 4
            mat = np.stack([ns[a], ns[b]])
            det = np.linalg.det(mat)
            if abs(det) < 1e-9:
                return None, math.inf
            pts.append(np.linalg.solve(mat, [hs[a], hs[b]]))
        pts = np.array(pts)
        ar = polygon_area(pts[::-1]) if polygon_area(pts) < 0 else polygon_area(pts)
        hull = _strict_hull(pts)
        if len(hull) != 4:
            return None, math.inf
        return pts, abs(ar)

    rng = np.random.default_rng(seed)
    best_pts, best_area = None, math.inf
    for s in range(starts):
        base = rng.uniform(0, 2 * math.pi)
        x0 = base + np.array([0.0, 0.5 * math.pi, math.pi, 1.5 * math.pi])
        x0 += rng.normal(scale=0.15, size=4)
        res = minimize(lambda a: quad(np.sort(a))[1], x0, method="Nelder-Mead",
                       options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 4000})
        pts, ar = quad(np.sort(res.x))
        if ar < best_area:
            best_pts, best_area = pts, ar
    if best_pts is None:
        raise GeometryError("quadrilateral search failed")
    return best_pts, float(best_area)


# ---------------------------------------------------------------------------
# Minkowski sums, mixed area, parallel bodies
# ---------------------------------------------------------------------------


def minkowski_sum_polygons(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Vertices of P + Q as the hull of pairwise vertex sums."""
    sums = (p[:, None, :] + q[None, :, :]).reshape(-1, 2)
    return _strict_hull(sums)


def sum_area(q: ConvexBody, k: ConvexBody) -> float:
    """Area of the Minkowski sum Q + K."""
    if q.kind == "disk" and k.kind == "disk":
        return math.pi * (q.radius + k.radius) ** 2
    if k.kind == "disk":
        return area(q) + k.radius * perimeter(q) + math.pi * k.radius**2
    if q.kind == "disk":
        return area(k) + q.radius * perimeter(k) + math.pi * q.radius**2
    return abs(polygon_area(minkowski_sum_polygons(q.vertices, k.vertices)))


def mixed_area(q: ConvexBody, k: ConvexBody) -> float:
    """A(Q, K) = (area(Q + K) - area(Q) - area(K)) / 2."""
    return 0.5 * (sum_area(q, k) - area(q) - area(k))


def steiner_area(t: ConvexBody, rho: float) -> float:
    """Area of the outer parallel body T + rho * B^2 (Steiner formula).

    Degenerate segments are allowed: a segment of length L has area 0 and
    perimeter 2L.
    """
    if rho < 0:
        raise GeometryError("parallel distance must be nonnegative")
    return area(t) + rho * perimeter(t) + math.pi * rho * rho


# ---------------------------------------------------------------------------
# hull of several bodies: perimeter / diameter / circumradius
# ---------------------------------------------------------------------------


def hull_perimeter(bodies, n_grid: int = 1 << 20) -> float:
    """Perimeter of conv(union) by Cauchy's formula per = integral of h.

    Trapezoid integration of the pointwise max support function; the
    integrand is piecewise smooth so the error is far below 1e-9 at this
    resolution.
    """
    theta = np.linspace(0.0, TWO_PI, n_grid, endpoint=False)
    dirs = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    h = None
    for b in bodies:
        if b.kind == "disk":
            vals = dirs @ b.center + b.radius
        else:
            vals = (dirs @ b.vertices.T).max(axis=1)
        h = vals if h is None else np.maximum(h, vals)
    return float(h.mean() * TWO_PI)


def hull_diameter(bodies) -> float:
    pieces = []
    for b in bodies:
        if b.kind == "disk":
            pieces.append(("d", b.center, b.radius))
        else:
            pieces.append(("p", b.vertices, 0.0))
    best = 0.0
    for i in range(len(pieces)):
        for j in range(i, len(pieces)):
            ka, pa, ra = pieces[i]
            kb, pb, rb = pieces[j]
            if ka == "d" and kb == "d":
                d = float(np.linalg.norm(pa - pb)) + ra + rb
                if i == j:
                    d = 2.0 * ra
            elif ka == "d":
                d = float(np.linalg.norm(pb - pa, axis=1).max()) + ra
            elif kb == "d":
                d = float(np.linalg.norm(pa - pb, axis=1).max()) + rb
            else:
                diff = pa[:, None, :] - pb[None, :, :]
                d = float(np.sqrt((diff**2).sum(axis=2)).max())
            best = max(best, d)
    return best


def hull_circumradius(bodies) -> tuple[np.ndarray, float]:
    centers, radii = [], []
    for b in bodies:
        if b.kind == "disk":
            centers.append(b.center)
            radii.append(b.radius)
        else:
            for v in b.vertices:
                centers.append(v)
                radii.append(0.0)
    return enclosing_disk_of_disks(np.array(centers), np.array(radii))


def hull_of_centers(points: np.ndarray) -> np.ndarray:
    """Convex hull vertex cycle (CCW); may degenerate to 1 or 2 points."""
    pts = np.unique(np.asarray(points, dtype=float), axis=0)
    if len(pts) <= 2:
        return pts
    hull = _strict_hull(pts)
    if len(hull) >= 3:
        return hull
    # all collinear: return the two extremes
    d = pts - pts[0]
    t = d @ d[np.argmax(np.linalg.norm(d, axis=1))]
    return np.array([pts[np.argmin(t)], pts[np.argmax(t)]])


# ---------------------------------------------------------------------------
# clipping helpers (window densities)
# ---------------------------------------------------------------------------


def clip_polygon_to_box(poly: np.ndarray, lo, hi) -> np.ndarray:
    """Sutherland-Hodgman clip of a convex polygon against an axis box."""
    out = [tuple(p) for p in np.asarray(poly, dtype=float)]
    for axis, bound, keep_le in (
        (0, lo[0], False),
        (0, hi[0], True),
        (1, lo[1], False),
        (1, hi[1], True),
    ):
        if not out:
            return np.zeros((0, 2))
        inp = out
        out = []
        for i, cur in enumerate(inp):
            prev = inp[i - 1]
            cin = cur[axis] <= bound if keep_le else cur[axis] >= bound
            pin = prev[axis] <= bound if keep_le else prev[axis] >= bound
            if cin != pin:
                t = (bound - prev[axis]) / (cur[axis] - prev[axis])
                out.append(
                    (
                        prev[0] + t * (cur[0] - prev[0]),
                        prev[1] + t * (cur[1] - prev[1]),
                    )
                )
            if cin:
                out.append(cur)
    return np.array(out) if out else np.zeros((0, 2))


def disk_box_area(center, radius: float, lo, hi, segments: int = 256) -> float:
    """Area of disk intersect axis box. Interior/exterior fast paths are
    exact; boundary disks use a 256-gon (relative error ~ 1e-4 per disk)."""
    c = np.asarray(center, dtype=float)
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    if (c - radius >= lo).all() and (c + radius <= hi).all():
        return math.pi * radius * radius
    if (c + radius <= lo).any() or (c - radius >= hi).any():
        return 0.0
    t = np.linspace(0.0, TWO_PI, segments, endpoint=False)
    poly = c + radius * np.stack([np.cos(t), np.sin(t)], axis=1)
    clipped = clip_polygon_to_box(poly, lo, hi)
    if len(clipped) < 3:
        return 0.0
    return abs(polygon_area(clipped))

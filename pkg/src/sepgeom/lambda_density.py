"""Critical triangles and density bounds for lambda-separable disk packings."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bodies import GeometryError

PI = math.pi

GEOMETRIES = ("euclidean", "spherical", "hyperbolic")


def _asin(x: float) -> float:
    return math.asin(min(1.0, max(-1.0, x)))


def _acos(x: float) -> float:
    return math.acos(min(1.0, max(-1.0, x)))


# ---------------------------------------------------------------------------
# triangles in the three constant-curvature planes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Triangle:
    """Triangle given by side lengths; angles are opposite the same-index side."""

    geometry: str
    sides: tuple[float, float, float]
    angles: tuple[float, float, float]
    area: float


def triangle_from_sides(geometry: str, a: float, b: float, c: float) -> Triangle:
    """Solve a triangle from its side lengths."""
    if geometry not in GEOMETRIES:
        raise GeometryError(f"unknown geometry {geometry!r}")
    s = (float(a), float(b), float(c))
    if min(s) <= 0.0:
        raise GeometryError("sides must be positive")
    for k in range(3):
        if s[k] >= s[(k + 1) % 3] + s[(k + 2) % 3]:
            raise GeometryError("sides must satisfy the strict triangle inequality")
    if geometry == "euclidean":
        a, b, c = s
        ang = (
            _acos((b * b + c * c - a * a) / (2.0 * b * c)),
            _acos((a * a + c * c - b * b) / (2.0 * a * c)),
            _acos((a * a + b * b - c * c) / (2.0 * a * b)),
        )
        p = sum(s) / 2.0
        area = math.sqrt(max(0.0, p * (p - a) * (p - b) * (p - c)))
        return Triangle(geometry, s, ang, area)
    if geometry == "spherical":
        if max(s) >= PI:
            raise GeometryError("spherical sides must stay below pi")
        if sum(s) >= 2.0 * PI:
            raise GeometryError("spherical perimeter must stay below 2*pi")
        ca, cb, cc = (math.cos(v) for v in s)
        sa, sb, sc = (math.sin(v) for v in s)
        ang = (
            _acos((ca - cb * cc) / (sb * sc)),
            _acos((cb - ca * cc) / (sa * sc)),
            _acos((cc - ca * cb) / (sa * sb)),
        )
        return Triangle(geometry, s, ang, sum(ang) - PI)
    ca, cb, cc = (math.cosh(v) for v in s)
    sa, sb, sc = (math.sinh(v) for v in s)
    ang = (
        _acos((cb * cc - ca) / (sb * sc)),
        _acos((ca * cc - cb) / (sa * sc)),
        _acos((ca * cb - cc) / (sa * sb)),
    )
    return Triangle(geometry, s, ang, PI - sum(ang))


def isosceles_triangle(geometry: str, base: float, leg: float) -> Triangle:
    """Triangle with the base first: sides (base, leg, leg)."""
    return triangle_from_sides(geometry, base, leg, leg)


def regular_triangle(geometry: str, side: float) -> Triangle:
    return triangle_from_sides(geometry, side, side, side)


def triangle_vertices(tri: Triangle) -> np.ndarray:
    """Vertex coordinates: plane points, sphere unit vectors, or hyperboloid
    points with the time coordinate last."""
    a, b, c = tri.sides
    alpha = tri.angles[0]
    if tri.geometry == "euclidean":
        return np.array(
            [[0.0, 0.0], [c, 0.0], [b * math.cos(alpha), b * math.sin(alpha)]]
        )
    if tri.geometry == "spherical":
        return np.array(
            [
                [0.0, 0.0, 1.0],
                [math.sin(c), 0.0, math.cos(c)],
                [math.sin(b) * math.cos(alpha), math.sin(b) * math.sin(alpha), math.cos(b)],
            ]
        )
    return np.array(
        [
            [0.0, 0.0, 1.0],
            [math.sinh(c), 0.0, math.cosh(c)],
            [math.sinh(b) * math.cos(alpha), math.sinh(b) * math.sin(alpha), math.cosh(b)],
        ]
    )


# ---------------------------------------------------------------------------
# legs of the critical isosceles triangles
# ---------------------------------------------------------------------------


def short_leg_sphere(y: float, lam: float) -> float:
    """Half leg length of the tight spherical isosceles triangle, short branch."""
    if not 0.0 <= lam < PI / 4.0:
        raise GeometryError("need 0 <= lambda < pi/4")
    if math.sin(y) < math.tan(lam) - 1e-12 or y > PI / 2.0 + 1e-12:
        raise GeometryError("need arcsin(tan(lambda)) <= y <= pi/2")
    # sin^2 y - sin^2 lam = sin(y - lam) sin(y + lam), stable near the left end
    prod = math.sin(y - lam) * math.sin(y + lam)
    if prod <= 0.0:
        return PI / 4.0
    arg = math.cos(lam) * math.sin(y) ** 2 / math.sqrt(prod)
    if arg >= 1.0 - 1e-14:
        return PI / 4.0
    return 0.5 * math.asin(arg)


def long_leg_sphere(y: float, lam: float) -> float:
    """Half leg length of the tight spherical isosceles triangle, long branch."""
    return PI / 2.0 - short_leg_sphere(y, lam)


def leg_hyper(y: float, lam: float) -> float:
    """Half leg length of the tight hyperbolic isosceles triangle."""
    if lam < 0.0 or y <= lam:
        raise GeometryError("need 0 <= lambda < y")
    prod = math.sinh(y - lam) * math.sinh(y + lam)
    return 0.5 * math.asinh(math.cosh(lam) * math.sinh(y) ** 2 / math.sqrt(prod))


def leg_euclid(y: float, lam: float) -> float:
    """Half leg length of the tight Euclidean isosceles triangle."""
    if lam < 0.0 or y <= lam:
        raise GeometryError("need 0 <= lambda < y")
    return y * y / (2.0 * math.sqrt((y - lam) * (y + lam)))


def _bisect_decreasing(f, lo: float, hi: float, target: float) -> float:
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) > target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def short_leg_sphere_inverse(rho: float, lam: float, increasing: bool = False) -> float:
    """Base half-length whose short leg equals rho.

    The short leg runs from pi/4 down to lambda and back up as y sweeps
    [arcsin(tan(lambda)), arcsin(sqrt(2) sin(lambda)), pi/2]; the flag picks
    the monotone piece.
    """
    if not 0.0 < lam < PI / 4.0:
        raise GeometryError("need 0 < lambda < pi/4")
    if not lam <= rho <= PI / 4.0 + 1e-12:
        raise GeometryError("need lambda <= rho <= pi/4")
    if rho >= PI / 4.0 - 1e-12:
        # the leg meets pi/4 exactly at the ends, where its slope blows up
        return PI / 2.0 if increasing else _asin(math.tan(lam))
    knee = _asin(math.sqrt(2.0) * math.sin(lam))
    if increasing:
        lo, hi = knee, PI / 2.0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if short_leg_sphere(mid, lam) < rho:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)
    return _bisect_decreasing(
        lambda y: short_leg_sphere(y, lam), _asin(math.tan(lam)), knee, rho
    )


def leg_hyper_inverse(rho: float, lam: float, increasing: bool = False) -> float:
    """Base half-length whose hyperbolic leg equals rho (two monotone pieces)."""
    if lam <= 0.0:
        raise GeometryError("need lambda > 0")
    if rho < lam:
        raise GeometryError("need rho >= lambda")
    knee = math.asinh(math.sqrt(2.0) * math.sinh(lam))
    if increasing:
        hi = knee + 1.0
        while leg_hyper(hi, lam) < rho:
            hi = 2.0 * hi
        lo = knee
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if leg_hyper(mid, lam) < rho:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)
    # decreasing piece: shrink the bracket toward lambda until it straddles
    # rho; the leg blows up there, so stop once floats cannot get closer
    lo = lam + 0.5 * (knee - lam)
    while leg_hyper(lo, lam) < rho:
        step = 0.5 * (lo - lam)
        if step <= 4e-16 * max(lam, 1.0):
            return lo
        lo = lam + step
    return _bisect_decreasing(lambda y: leg_hyper(y, lam), lo, knee, rho)


def regular_base_sphere(lam: float) -> tuple[float, float] | None:
    """Base half-lengths where the tight spherical triangle turns regular.

    Returns the (small, big) pair, or None when sin(lambda) > 3/5 and the
    defining quadratic has no real root.
    """
    if lam < 0.0:
        raise GeometryError("need lambda >= 0")
    s = math.sin(lam) ** 2
    disc = 9.0 - 34.0 * s + 25.0 * s * s
    if disc < 0.0:
        return None
    root = math.sqrt(disc)
    return (
        _asin(math.sqrt((3.0 + 5.0 * s - root) / 8.0)),
        _asin(math.sqrt((3.0 + 5.0 * s + root) / 8.0)),
    )


def regular_base_hyper(lam: float) -> float:
    """Base half-length where the tight hyperbolic triangle turns regular."""
    if lam < 0.0:
        raise GeometryError("need lambda >= 0")
    s = math.sinh(lam) ** 2
    root = math.sqrt(25.0 * s * s + 34.0 * s + 9.0)
    return math.asinh(math.sqrt(max(5.0 * s - 3.0 + root, 0.0) / 8.0))


# ---------------------------------------------------------------------------
# density of three vertex disks inside a triangle
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TriangleDensity:
    value: float
    method: str
    error: float
    triangle: Triangle
    rho: float


def _vertex_clearances(tri: Triangle) -> list[float]:
    """Distance from each vertex to the opposite side segment."""
    out = []
    for k in range(3):
        i, j = (k + 1) % 3, (k + 2) % 3
        if tri.angles[i] <= PI / 2.0 + 1e-12 and tri.angles[j] <= PI / 2.0 + 1e-12:
            # the foot lies in the segment: right-triangle rule at vertex i
            hyp = tri.sides[j]  # side from vertex k to vertex i
            if tri.geometry == "euclidean":
                out.append(hyp * math.sin(tri.angles[i]))
            elif tri.geometry == "spherical":
                out.append(_asin(math.sin(hyp) * math.sin(tri.angles[i])))
            else:
                out.append(math.asinh(math.sinh(hyp) * math.sin(tri.angles[i])))
        else:
            # nearest point is an endpoint, at the full adjacent side length
            out.append(min(tri.sides[i], tri.sides[j]))
    return out


def _sector_density(tri: Triangle, rho: float) -> float:
    if tri.geometry == "euclidean":
        return PI * rho * rho / 2.0 / tri.area
    if tri.geometry == "spherical":
        return (PI + tri.area) * (1.0 - math.cos(rho)) / tri.area
    return (PI - tri.area) * (math.cosh(rho) - 1.0) / tri.area


def _qmc_batches(samples: int, seed: int, n_batches: int = 8):
    from scipy.stats import qmc

    per = max(samples // n_batches, 256)
    for k in range(n_batches):
        yield qmc.Halton(d=2, scramble=True, seed=seed + k).random(per)


def _qmc_density_euclid(tri: Triangle, rho: float, samples: int, seed: int):
    v = triangle_vertices(tri)
    ratios = []
    for u in _qmc_batches(samples, seed):
        # fold the unit square onto the triangle, area uniform
        flip = u.sum(axis=1) > 1.0
        u[flip] = 1.0 - u[flip]
        pts = v[0] + u[:, :1] * (v[1] - v[0]) + u[:, 1:] * (v[2] - v[0])
        d2 = ((pts[:, None, :] - v[None, :, :]) ** 2).sum(axis=2)
        ratios.append(float((d2.min(axis=1) <= rho * rho).mean()))
    return float(np.mean(ratios)), float(np.std(ratios) / math.sqrt(len(ratios)))


def _qmc_density_sphere(tri: Triangle, rho: float, samples: int, seed: int):
    v = triangle_vertices(tri)
    normals = np.array([np.cross(v[(k + 1) % 3], v[(k + 2) % 3]) for k in range(3)])
    normals *= np.sign(np.einsum("ij,ij->i", normals, v))[:, None]
    center = v.sum(axis=0)
    center /= np.linalg.norm(center)
    cap = max(_acos(float(np.clip(center @ p, -1.0, 1.0))) for p in v) + 1e-9
    e1 = np.cross(center, v[0] - center * (center @ v[0]))
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(center, e1)
    cos_rho = math.cos(rho)
    zmin = math.cos(cap)
    ratios = []
    for u in _qmc_batches(samples, seed):
        z = zmin + (1.0 - zmin) * u[:, 0]
        phi = 2.0 * PI * u[:, 1]
        r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
        pts = (
            z[:, None] * center[None, :]
            + (r * np.cos(phi))[:, None] * e1[None, :]
            + (r * np.sin(phi))[:, None] * e2[None, :]
        )
        inside = ((pts @ normals.T) >= -1e-12).all(axis=1)
        if inside.sum() == 0:
            continue
        covered = (pts[inside] @ v.T).max(axis=1) >= cos_rho
        ratios.append(float(covered.mean()))
    if not ratios:
        raise GeometryError("sampling never hit the triangle")
    return float(np.mean(ratios)), float(np.std(ratios) / math.sqrt(len(ratios)))


def _lorentz_dot(a, b):
    return a[..., 0] * b[..., 0] + a[..., 1] * b[..., 1] - a[..., 2] * b[..., 2]


def _qmc_density_hyper(tri: Triangle, rho: float, samples: int, seed: int):
    v = triangle_vertices(tri)
    m = v.sum(axis=0)
    center = m / math.sqrt(max(-float(_lorentz_dot(m, m)), 1e-300))
    # side planes pass through the origin; the Euclidean cross product is a
    # valid linear functional for sidedness on the hyperboloid
    normals = np.array([np.cross(v[(k + 1) % 3], v[(k + 2) % 3]) for k in range(3)])
    normals *= np.sign(np.einsum("ij,ij->i", normals, v))[:, None]
    reach = max(math.acosh(max(-float(_lorentz_dot(center, p)), 1.0)) for p in v) + 1e-9
    a = np.array([1.0, 0.0, 0.0])
    e1 = a + _lorentz_dot(a, center) * center
    e1 /= math.sqrt(float(_lorentz_dot(e1, e1)))
    bvec = np.array([0.0, 1.0, 0.0])
    e2 = bvec + _lorentz_dot(bvec, center) * center - _lorentz_dot(bvec, e1) * e1
    e2 /= math.sqrt(float(_lorentz_dot(e2, e2)))
    cosh_rho = math.cosh(rho)
    ratios = []
    for u in _qmc_batches(samples, seed):
        r = np.arccosh(1.0 + u[:, 0] * (math.cosh(reach) - 1.0))
        th = 2.0 * PI * u[:, 1]
        pts = (
            np.cosh(r)[:, None] * center[None, :]
            + (np.sinh(r) * np.cos(th))[:, None] * e1[None, :]
            + (np.sinh(r) * np.sin(th))[:, None] * e2[None, :]
        )
        inside = ((pts @ normals.T) >= -1e-12).all(axis=1)
        if inside.sum() == 0:
            continue
        sub = pts[inside]
        cosh_d = -(
            sub[:, None, 0] * v[None, :, 0]
            + sub[:, None, 1] * v[None, :, 1]
            - sub[:, None, 2] * v[None, :, 2]
        )
        covered = (cosh_d <= cosh_rho).any(axis=1)
        ratios.append(float(covered.mean()))
    if not ratios:
        raise GeometryError("sampling never hit the triangle")
    return float(np.mean(ratios)), float(np.std(ratios) / math.sqrt(len(ratios)))


def triangle_disk_density(
    tri: Triangle, rho: float, samples: int = 160_000, seed: int = 0
) -> TriangleDensity:
    """Fraction of the triangle covered by disks of radius rho at its vertices.

    When the disks stay pairwise disjoint and inside the triangle the three
    circular sectors give the exact value; otherwise quasi-Monte Carlo
    sampling takes over and the batch spread is reported as the error.
    """
    if rho <= 0.0:
        raise GeometryError("need rho > 0")
    # a side short by eps leaves a lens of area O(eps^1.5); 1e-7 is harmless
    clean = min(tri.sides) >= 2.0 * rho - 1e-7 and min(_vertex_clearances(tri)) >= rho - 1e-7
    if clean:
        return TriangleDensity(_sector_density(tri, rho), "sectors", 0.0, tri, rho)
    sampler = {
        "euclidean": _qmc_density_euclid,
        "spherical": _qmc_density_sphere,
        "hyperbolic": _qmc_density_hyper,
    }[tri.geometry]
    value, err = sampler(tri, rho, samples, seed)
    return TriangleDensity(value, "qmc", err, tri, rho)


# ---------------------------------------------------------------------------
# the three density bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DensityBound:
    value: float
    branch: str
    density: TriangleDensity
    rho: float
    lam: float


def density_bound_euclid(lam: float) -> DensityBound:
    """Largest density of lambda-separable packings of unit disks.

    pi/sqrt(12) up to lambda = sqrt(3)/2 (hexagonal extremal packing), then
    pi/(4 lambda) with a squeezed isosceles extremal triangle.
    """
    if not 0.0 <= lam <= 1.0:
        raise GeometryError("need 0 <= lambda <= 1")
    if lam <= math.sqrt(3.0) / 2.0:
        tri = regular_triangle("euclidean", 2.0)
        return DensityBound(PI / math.sqrt(12.0), "regular", triangle_disk_density(tri, 1.0), 1.0, lam)
    y = math.sqrt(2.0 - 2.0 * math.sqrt(1.0 - lam * lam))
    tri = isosceles_triangle("euclidean", 2.0 * y, 2.0 * leg_euclid(y, lam))
    return DensityBound(PI / (4.0 * lam), "squeezed", triangle_disk_density(tri, 1.0), 1.0, lam)


def density_bound_sphere(
    rho: float, lam: float, samples: int = 160_000, seed: int = 0
) -> DensityBound:
    """Upper density bound for lambda-separable packings of caps of radius rho.

    Three regimes: a short-leg isosceles Delaunay triangle with legs 2 rho, a
    regular triangle of side 2 rho between the two switch values, and a
    long-leg triangle with base 2 rho past pi/4.
    """
    if not 0.0 < rho < PI / 2.0:
        raise GeometryError("need 0 < rho < pi/2")
    if not 0.0 <= lam <= rho:
        raise GeometryError("need 0 <= lambda <= rho")
    if lam > PI / 2.0 - rho + 1e-15:
        raise GeometryError("need lambda <= pi/2 - rho")
    switch = regular_base_sphere(lam)
    if switch is None:
        small, big = None, None
    else:
        small, big = switch
    if lam > 0.0 and rho <= (PI / 4.0 if small is None else min(small, PI / 4.0)) + 1e-15:
        y = short_leg_sphere_inverse(min(rho, PI / 4.0), lam)
        tri = isosceles_triangle("spherical", 2.0 * y, 2.0 * rho)
        branch = "short-leg"
    elif small is not None and small <= rho <= big:
        tri = regular_triangle("spherical", 2.0 * rho)
        branch = "regular"
    elif rho > PI / 4.0:
        tri = isosceles_triangle("spherical", 2.0 * rho, 2.0 * long_leg_sphere(rho, lam))
        branch = "long-leg"
    else:
        # lambda = 0 below pi/4 falls to the regular triangle as well
        tri = regular_triangle("spherical", 2.0 * rho)
        branch = "regular"
    dens = triangle_disk_density(tri, rho, samples, seed)
    return DensityBound(dens.value, branch, dens, rho, lam)


def density_bound_hyper(
    rho: float, lam: float, samples: int = 160_000, seed: int = 0
) -> DensityBound:
    """Upper density bound for lambda-separable packings of hyperbolic disks."""
    if rho <= 0.0:
        raise GeometryError("need rho > 0")
    if not 0.0 <= lam <= rho:
        raise GeometryError("need 0 <= lambda <= rho")
    if lam > 0.0 and rho <= regular_base_hyper(lam):
        y = leg_hyper_inverse(rho, lam)
        tri = isosceles_triangle("hyperbolic", 2.0 * y, 2.0 * rho)
        branch = "short-leg"
    else:
        tri = regular_triangle("hyperbolic", 2.0 * rho)
        branch = "regular"
    dens = triangle_disk_density(tri, rho, samples, seed)
    return DensityBound(dens.value, branch, dens, rho, lam)

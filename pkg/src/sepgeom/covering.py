"""Covering bounds for non-separable families of homothets.

Weighted-centroid covers for symmetric bodies, exact minimal covering
homothets, the three-triangle family beating ratio 1, facet-parallel simplex
covers, and the Hadwiger perimeter, diameter, and circumradius bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .bodies import (
    EPS,
    ConvexBody,
    GeometryError,
    HomothetFamily,
    polygon_facets,
    raw_support,
)
from .measures import (
    enclosing_disk_of_disks,
    hull_circumradius,
    hull_diameter,
    hull_perimeter,
    perimeter,
)
from .separability import _sweep_gaps, is_non_separable

SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class CoverHomothet:
    """A covering homothet center + ratio*K with containment diagnostics."""

    center: np.ndarray
    ratio: float
    normalized: float
    method: str
    contains_all: bool
    violation: float


def _containment_violation(family: HomothetFamily, center: np.ndarray, ratio: float) -> float:
    """Largest signed protrusion of a member outside center + ratio*K, exact."""
    k = family.reference
    centers = np.asarray(family.centers, dtype=float)
    ratios = np.asarray(family.ratios, dtype=float)
    if k.kind == "disk":
        mem_c = centers + ratios[:, None] * k.center
        cov_c = center + ratio * k.center
        d = np.linalg.norm(mem_c - cov_c, axis=1)
        return float((d + ratios * k.radius - ratio * k.radius).max())
    normals, offsets = polygon_facets(k)
    worst = -math.inf
    for nf, hf in zip(normals, offsets):
        lhs = centers @ nf + ratios * hf
        rhs = float(nf @ center) + ratio * hf
        worst = max(worst, float((lhs - rhs).max()))
    return worst


def goodman_goodman_cover(family: HomothetFamily, tol: float = EPS) -> CoverHomothet:
    """Cover at the ratio-weighted center with ratio sum(tau).

    For an origin-symmetric reference this covers every non-separable family
    of positive homothets; containment is validated exactly and reported.
    """
    k = family.reference
    if not k.is_origin_symmetric(1e-9):
        raise GeometryError("weighted-centroid cover requires an o-symmetric reference")
    ratios = np.asarray(family.ratios, dtype=float)
    centers = np.asarray(family.centers, dtype=float)
    if (ratios <= 0).any():
        raise GeometryError("homothety ratios must be positive")
    total = float(ratios.sum())
    x = (ratios[:, None] * centers).sum(axis=0) / total
    viol = _containment_violation(family, x, total)
    return CoverHomothet(x, total, 1.0, "weighted-centroid", viol <= tol, viol)


def min_cover_ratio(family: HomothetFamily, tol: float = EPS) -> CoverHomothet:
    """Smallest ratio homothet of the reference covering the whole family.

    Polygon references reduce to a linear program over the cover's center
    and ratio (facet constraints at member vertices); disk references reduce
    to the exact smallest disk enclosing the member disks.
    """
    k = family.reference
    k.require_full_dimensional("min_cover_ratio")
    centers = np.asarray(family.centers, dtype=float)
    ratios = np.asarray(family.ratios, dtype=float)
    if (ratios <= 0).any():
        raise GeometryError("homothety ratios must be positive")
    total = float(ratios.sum())

    if k.kind == "disk":
        mem_c = centers + ratios[:, None] * k.center
        c_star, r_star = enclosing_disk_of_disks(mem_c, ratios * k.radius)
        mu = r_star / k.radius
        t = c_star - mu * k.center
        viol = _containment_violation(family, t, mu)
        return CoverHomothet(t, float(mu), float(mu / total), "enclosing-disk", viol <= tol, viol)

    if k.kind != "polygon":
        raise GeometryError("min_cover_ratio supports planar references")
    g = k.centroid()
    kc = ConvexBody.polygon(k.vertices - g)
    normals, offsets = polygon_facets(kc)
    pts = (centers[:, None, :] + ratios[:, None, None] * k.vertices[None, :, :]).reshape(-1, 2)
    rows = []
    rhs = []
    for nf, hf in zip(normals, offsets):
        rows.append(
            np.column_stack(
                [
                    np.full(len(pts), -nf[0]),
                    np.full(len(pts), -nf[1]),
                    np.full(len(pts), -hf),
                ]
            )
        )
        rhs.append(-(pts @ nf))
    res = linprog(
        c=[0.0, 0.0, 1.0],
        A_ub=np.vstack(rows),
        b_ub=np.concatenate(rhs),
        bounds=[(None, None), (None, None), (0.0, None)],
        method="highs",
    )
    if not res.success:
        raise GeometryError(f"cover LP failed: {res.message}")
    t_prime, mu = res.x[:2], float(res.x[2])
    t = t_prime - mu * g
    viol = _containment_violation(family, t, mu)
    return CoverHomothet(t, mu, mu / total, "lp", viol <= tol, viol)


def build_triangle_counterexample(n: int = 3) -> HomothetFamily:
    """Three unit triangles on the sides of a side 2 + 2/sqrt(3) triangle.

    The hull of any two members touches the third, so the family is
    non-separable, yet the smallest covering homothet has normalized ratio
    2/3 + 2/(3 sqrt(3)) > 1. For n > 3, tiny members near the incenter keep
    both properties.
    """
    if n < 3:
        raise GeometryError("the construction needs at least 3 members")
    big = 2.0 + 2.0 / SQRT3
    a = 2.0 / 3.0 + 1.0 / SQRT3
    k = ConvexBody.polygon([[0.0, 0.0], [1.0, 0.0], [0.5, SQRT3 / 2.0]])
    corner_b = np.array([big, 0.0])
    corner_c = np.array([big / 2.0, big * SQRT3 / 2.0])
    dir_bc = np.array([-0.5, SQRT3 / 2.0])
    dir_ca = np.array([-0.5, -SQRT3 / 2.0])
    centers = [
        np.array([a, 0.0]),
        corner_b + a * dir_bc - np.array([1.0, 0.0]),
        corner_c + a * dir_ca - np.array([0.5, SQRT3 / 2.0]),
    ]
    ratios = [1.0, 1.0, 1.0]
    inc = np.array([big / 2.0, big / (2.0 * SQRT3)])  # incenter of the big triangle
    for m in range(n - 3):
        ang = 2.0 * math.pi * m / max(n - 3, 1)
        centers.append(inc + 0.05 * np.array([math.cos(ang), math.sin(ang)]))
        ratios.append(1e-3)
    return HomothetFamily(k, np.array(centers), np.array(ratios))


@dataclass(frozen=True)
class HadwigerReport:
    """Hull per/diam/R against the member sums for a non-separable system."""

    perimeter_hull: float
    perimeter_sum: float
    diameter_hull: float
    diameter_sum: float
    circumradius_hull: float
    circumradius_sum: float

    def slacks(self) -> tuple[float, float, float]:
        return (
            self.perimeter_sum - self.perimeter_hull,
            self.diameter_sum - self.diameter_hull,
            self.circumradius_sum - self.circumradius_hull,
        )

    def holds(self, tol: float = 1e-6) -> bool:
        return all(s >= -tol for s in self.slacks())


def hadwiger_check(family, samples: int = 4096, tol: float = EPS) -> HadwigerReport:
    """Compare hull perimeter, diameter, and circumradius with member sums.

    The family must be non-separable, otherwise the bounds do not apply and
    this raises. Hull perimeter uses the support-function integral, diameter
    and circumradius are exact.
    """
    bodies = family.bodies() if isinstance(family, HomothetFamily) else list(family)
    decision = is_non_separable(bodies if not isinstance(family, HomothetFamily) else family,
                                samples=samples, tol=tol)
    if not decision.non_separable:
        raise GeometryError("family is separable, the hull bounds need a non-separable system")
    per_sum = sum(perimeter(b) for b in bodies)
    diam_sum = sum(hull_diameter([b]) for b in bodies)
    r_sum = sum(hull_circumradius([b])[1] for b in bodies)
    return HadwigerReport(
        perimeter_hull=hull_perimeter(bodies),
        perimeter_sum=per_sum,
        diameter_hull=hull_diameter(bodies),
        diameter_sum=diam_sum,
        circumradius_hull=hull_circumradius(bodies)[1],
        circumradius_sum=r_sum,
    )


@dataclass(frozen=True)
class FacetParallelReport:
    facet_gaps: tuple[float, ...]
    condition_holds: bool
    cover: CoverHomothet
    bound: float
    within_bound: bool


def facet_parallel_cover_check(family: HomothetFamily, tol: float = EPS) -> FacetParallelReport:
    """Check the facet-parallel covering bound for simplex homothets.

    Hypothesis: every hyperplane parallel to a facet of the reference simplex
    that meets the hull of the family meets a member. Per facet normal this
    is a gap check on the projection intervals. Under the hypothesis the
    minimal cover has normalized ratio at most (d + 1) / 2.
    """
    k = family.reference
    d = k.dim
    if k.kind != "polygon" or len(k.vertices) != d + 1:
        raise GeometryError("reference must be a simplex")
    normals, _ = polygon_facets(k)
    centers = np.asarray(family.centers, dtype=float)
    ratios = np.asarray(family.ratios, dtype=float)
    gaps = []
    for nf in normals:
        proj = centers @ nf
        his = (proj + ratios * raw_support(k, nf))[:, None]
        los = (proj - ratios * raw_support(k, -nf))[:, None]
        gaps.append(float(_sweep_gaps(los, his)[0]) if len(centers) > 1 else -math.inf)
    condition = all(g <= tol for g in gaps)
    cover = min_cover_ratio(family, tol)
    bound = (d + 1) / 2.0
    return FacetParallelReport(
        facet_gaps=tuple(gaps),
        condition_holds=condition,
        cover=cover,
        bound=bound,
        within_bound=cover.normalized <= bound + 1e-7,
    )

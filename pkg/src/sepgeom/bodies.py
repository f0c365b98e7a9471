"""Convex body primitives: disks, convex polygons, polytopes, homothets.

Bodies are immutable value objects. All operations are pure functions; the
default absolute tolerance is EPS = 1e-9 unless an operation states its own.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

EPS = 1e-9


class GeometryError(ValueError):
    """Raised for invalid geometric input (degenerate, asymmetric, ...)."""


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    a.setflags(write=False)
    return a


def unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    n = float(np.linalg.norm(v))
    if n <= 1e-300:
        raise GeometryError("degenerate direction")
    return v / n


def perp(v) -> np.ndarray:
    """Rotate a planar vector by +90 degrees."""
    return np.array([-v[1], v[0]], dtype=float)


def _strict_hull(points: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """CCW convex hull with collinear points dropped (monotone chain)."""
    pts = np.unique(np.asarray(points, dtype=float), axis=0)
    if len(pts) < 3:
        return pts
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    pts = pts[order]
    scale = max(1.0, float(np.abs(pts).max()))
    t = tol * scale * scale

    def build(seq):
        out = []
        for p in seq:
            while len(out) >= 2:
                o, a = out[-2], out[-1]
                if (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0]) <= t:
                    out.pop()
                else:
                    break
            out.append(p)
        return out

    lower = build(pts)
    upper = build(pts[::-1])
    return np.array(lower[:-1] + upper[:-1])


@dataclass(frozen=True, eq=False)
class ConvexBody:
    """A convex body: planar disk, strictly convex CCW polygon, polytope,
    or (flagged) degenerate segment.

    Degenerate bodies are only accepted by support evaluation and
    steiner_area; everything else rejects them.
    """

    kind: str
    center: np.ndarray | None = None
    radius: float = 0.0
    vertices: np.ndarray | None = None
    degenerate: bool = False

    @staticmethod
    def disk(center, radius: float) -> "ConvexBody":
        center = _freeze(np.atleast_1d(center))
        if center.shape != (2,):
            raise GeometryError("disk center must be planar")
        if radius <= 0:
            raise GeometryError("disk radius must be positive")
        return ConvexBody(kind="disk", center=center, radius=float(radius))

    @staticmethod
    def polygon(vertices) -> "ConvexBody":
        verts = np.asarray(vertices, dtype=float)
        if verts.ndim != 2 or verts.shape[1] != 2 or len(verts) < 3:
            raise GeometryError("polygon needs at least 3 planar vertices")
        hull = _strict_hull(verts)
        if len(hull) < 3:
            raise GeometryError("polygon degenerate: vertices collinear")
        if len(hull) != len(np.unique(verts, axis=0)):
            raise GeometryError("polygon not strictly convex: collinear or interior vertex")
        return ConvexBody(kind="polygon", vertices=_freeze(hull))

    @staticmethod
    def polytope(vertices) -> "ConvexBody":
        verts = np.asarray(vertices, dtype=float)
        if verts.ndim != 2 or verts.shape[1] < 3:
            raise GeometryError("polytope needs vertices in dimension >= 3")
        return ConvexBody(kind="polytope", vertices=_freeze(verts))

    @staticmethod
    def segment(a, b) -> "ConvexBody":
        verts = np.array([a, b], dtype=float)
        if np.linalg.norm(verts[1] - verts[0]) <= 0:
            raise GeometryError("segment endpoints coincide")
        return ConvexBody(kind="segment", vertices=_freeze(verts), degenerate=True)

    # -- basic queries ------------------------------------------------------

    @property
    def dim(self) -> int:
        if self.kind == "disk":
            return 2
        return int(self.vertices.shape[1])

    def require_full_dimensional(self, op: str) -> None:
        if self.degenerate:
            raise GeometryError(f"{op}: not full-dimensional")

    def centroid(self) -> np.ndarray:
        if self.kind == "disk":
            return np.array(self.center)
        if self.kind == "polygon":
            v = self.vertices
            x, y = v[:, 0], v[:, 1]
            xr, yr = np.roll(x, -1), np.roll(y, -1)
            cross = x * yr - xr * y
            a = cross.sum() / 2.0
            cx = ((x + xr) * cross).sum() / (6.0 * a)
            cy = ((y + yr) * cross).sum() / (6.0 * a)
            return np.array([cx, cy])
        return self.vertices.mean(axis=0)

    def translate(self, t) -> "ConvexBody":
        t = np.asarray(t, dtype=float)
        if self.kind == "disk":
            return ConvexBody.disk(self.center + t, self.radius)
        return ConvexBody(
            kind=self.kind, vertices=_freeze(self.vertices + t), degenerate=self.degenerate
        )

    def transform(self, matrix, t=(0.0, 0.0)) -> "ConvexBody":
        """Apply x -> M x + t. Disks only admit similarities."""
        m = np.asarray(matrix, dtype=float)
        t = np.asarray(t, dtype=float)
        if self.kind == "disk":
            s2 = np.abs(np.linalg.det(m))
            mtm = m.T @ m
            if not np.allclose(mtm, np.eye(2) * mtm[0, 0], atol=1e-12 * max(1.0, mtm[0, 0])):
                raise GeometryError("disk transform must be a similarity")
            return ConvexBody.disk(m @ self.center + t, self.radius * math.sqrt(s2))
        verts = self.vertices @ m.T + t
        if self.kind == "polygon":
            return ConvexBody.polygon(verts)
        return ConvexBody(kind=self.kind, vertices=_freeze(verts), degenerate=self.degenerate)

    def is_origin_symmetric(self, tol: float = EPS) -> bool:
        if self.kind == "disk":
            return bool(np.linalg.norm(self.center) <= tol * max(1.0, self.radius))
        if self.kind in ("polygon", "segment", "polytope"):
            v = self.vertices
            scale = max(1.0, float(np.abs(v).max()))
            neg = -v
            # match every vertex with a negated partner
            used = np.zeros(len(v), dtype=bool)
            for p in neg:
                d = np.linalg.norm(v - p, axis=1)
                d[used] = np.inf
                j = int(np.argmin(d))
                if d[j] > tol * scale * 10:
                    return False
                used[j] = True
            return True
        return False


# ---------------------------------------------------------------------------
# support arithmetic
# ---------------------------------------------------------------------------


def raw_support(body: ConvexBody, u: np.ndarray) -> float:
    """Support value h(u) without normalizing u (positively homogeneous)."""
    u = np.asarray(u, dtype=float)
    if body.kind == "disk":
        return float(body.center @ u + body.radius * np.linalg.norm(u))
    return float((body.vertices @ u).max())


def support(body: ConvexBody, u) -> float:
    """h_body(u/|u|). Zero directions are rejected."""
    return raw_support(body, unit(u))


def support_batch(body: ConvexBody, dirs: np.ndarray) -> np.ndarray:
    """Support values for an (m, d) array of directions (not normalized)."""
    if body.kind == "disk":
        return dirs @ body.center + body.radius * np.linalg.norm(dirs, axis=1)
    return (dirs @ body.vertices.T).max(axis=1)


def project_interval(body: ConvexBody, u) -> tuple[float, float]:
    """Orthogonal projection [min, max] of the body onto a unit direction."""
    u = np.asarray(u, dtype=float)
    n = float(np.linalg.norm(u))
    if abs(n - 1.0) > 1e-6:
        raise GeometryError("project_interval expects a unit direction")
    v = u / n
    return (-raw_support(body, -v), raw_support(body, v))


def minkowski_norm(body: ConvexBody, x) -> float:
    """Gauge |x|_K of an o-symmetric body K (unit ball of the induced norm)."""
    if not body.is_origin_symmetric():
        raise GeometryError("norm requires o-symmetric body")
    x = np.asarray(x, dtype=float)
    if body.kind == "disk":
        return float(np.linalg.norm(x) / body.radius)
    normals, offsets = polygon_facets(body)
    vals = normals @ x
    return float(max(0.0, (vals / offsets).max()))


def polygon_facets(body: ConvexBody) -> tuple[np.ndarray, np.ndarray]:
    """Outward unit edge normals and support offsets h(n) of a polygon.

    The polygon is {x : normals @ x <= offsets} when the origin is interior.
    """
    if body.kind != "polygon":
        raise GeometryError("facets need a polygon")
    v = body.vertices
    edges = np.roll(v, -1, axis=0) - v
    normals = np.stack([edges[:, 1], -edges[:, 0]], axis=1)
    normals /= np.linalg.norm(normals, axis=1)[:, None]
    offsets = np.einsum("ij,ij->i", normals, v)
    return normals, offsets


def body_contains_point(body: ConvexBody, p, tol: float = EPS) -> bool:
    p = np.asarray(p, dtype=float)
    if body.kind == "disk":
        return bool(np.linalg.norm(p - body.center) <= body.radius + tol)
    normals, offsets = polygon_facets(body)
    return bool((normals @ p <= offsets + tol).all())


# ---------------------------------------------------------------------------
# homothets
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Homothet:
    """A positive homothet x + tau * K of a reference body K."""

    center: np.ndarray
    ratio: float
    reference: ConvexBody

    def __post_init__(self):
        object.__setattr__(self, "center", _freeze(np.atleast_1d(self.center)))
        if self.ratio <= 0:
            raise GeometryError("homothety ratio must be positive")

    def as_body(self) -> ConvexBody:
        k = self.reference
        if k.kind == "disk":
            return ConvexBody.disk(self.center + self.ratio * k.center, self.ratio * k.radius)
        verts = self.center + self.ratio * k.vertices
        if k.kind == "polygon":
            return ConvexBody.polygon(verts)
        return ConvexBody(kind=k.kind, vertices=_freeze(verts), degenerate=k.degenerate)


@dataclass(frozen=True, eq=False)
class HomothetFamily:
    """Finitely many positive homothets x_i + tau_i * K of one reference."""

    reference: ConvexBody
    centers: np.ndarray
    ratios: np.ndarray = field(default=None)

    def __post_init__(self):
        centers = np.atleast_2d(np.asarray(self.centers, dtype=float))
        ratios = (
            np.ones(len(centers))
            if self.ratios is None
            else np.atleast_1d(np.asarray(self.ratios, dtype=float))
        )
        if len(ratios) != len(centers):
            raise GeometryError("one ratio per center required")
        if (ratios <= 0).any():
            raise GeometryError("homothety ratio must be positive")
        object.__setattr__(self, "centers", _freeze(centers))
        object.__setattr__(self, "ratios", _freeze(ratios))

    def __len__(self) -> int:
        return len(self.centers)

    def member(self, i: int) -> Homothet:
        return Homothet(self.centers[i], float(self.ratios[i]), self.reference)

    def bodies(self) -> list[ConvexBody]:
        return [self.member(i).as_body() for i in range(len(self))]

    def transform(self, matrix, t=(0.0, 0.0)) -> "HomothetFamily":
        m = np.asarray(matrix, dtype=float)
        return HomothetFamily(
            reference=self.reference.transform(m),
            centers=self.centers @ m.T + np.asarray(t, dtype=float),
            ratios=np.array(self.ratios),
        )


# ---------------------------------------------------------------------------
# JSON wire format
# ---------------------------------------------------------------------------


def body_to_json(body: ConvexBody) -> dict:
    if body.kind == "disk":
        return {"type": "disk", "center": body.center.tolist(), "radius": body.radius}
    if body.kind == "polygon":
        return {"type": "polygon", "vertices": body.vertices.tolist()}
    if body.kind == "segment":
        return {"type": "segment", "vertices": body.vertices.tolist()}
    return {"type": "polytope", "vertices": body.vertices.tolist()}


def body_from_json(obj: dict) -> ConvexBody:
    try:
        kind = obj["type"]
        if kind == "disk":
            return ConvexBody.disk(obj["center"], obj["radius"])
        if kind == "polygon":
            return ConvexBody.polygon(obj["vertices"])
        if kind == "segment":
            return ConvexBody.segment(*obj["vertices"])
        if kind == "polytope":
            return ConvexBody.polytope(obj["vertices"])
    except (KeyError, TypeError) as exc:
        raise GeometryError(f"malformed body object: {exc}") from exc
    raise GeometryError(f"unknown body type {kind!r}")


def family_to_json(family: HomothetFamily) -> dict:
    return {
        "reference": body_to_json(family.reference),
        "members": [
            {"center": c.tolist(), "ratio": float(t)}
            for c, t in zip(family.centers, family.ratios)
        ],
    }


def family_from_json(obj: dict) -> HomothetFamily:
    try:
        ref = body_from_json(obj["reference"])
        centers = [m["center"] for m in obj["members"]]
        ratios = [m.get("ratio", 1.0) for m in obj["members"]]
    except (KeyError, TypeError) as exc:
        raise GeometryError(f"malformed family object: {exc}") from exc
    return HomothetFamily(reference=ref, centers=np.array(centers), ratios=np.array(ratios))

"""Separation tests for families and packings of convex bodies.

Decides strict separation of two families, non-separability of a family of
homothets, successively non-separable orderings, and the totally separable,
locally separable, and rho-separable hierarchy for packings.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from ._kernels import gap_profile
from .bodies import (
    EPS,
    ConvexBody,
    GeometryError,
    HomothetFamily,
    minkowski_norm,
    perp,
    polygon_facets,
    raw_support,
    support_batch,
    unit,
)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Hyperplane:
    """Oriented line or plane {x : <normal, x> = offset}, unit normal."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        n = np.asarray(self.normal, dtype=float)
        nn = float(np.linalg.norm(n))
        if nn < EPS:
            raise GeometryError("degenerate direction")
        object.__setattr__(self, "normal", n / nn)
        object.__setattr__(self, "offset", float(self.offset) / nn)

    def signed(self, x) -> float:
        return float(np.dot(np.asarray(x, dtype=float), self.normal) - self.offset)


@dataclass(frozen=True)
class SeparationCertificate:
    """Members in left satisfy <n, x> <= offset, members in right >= offset."""

    plane: Hyperplane
    left: tuple[int, ...]
    right: tuple[int, ...]
    margin: float


@dataclass(frozen=True)
class NSDecision:
    non_separable: bool
    witness: SeparationCertificate | None
    directions_checked: int
    approximate: bool


@dataclass(frozen=True)
class SNSResult:
    is_sns: bool
    ordering: tuple[int, ...] | None


@dataclass(frozen=True)
class TSResult:
    is_ts: bool
    certificates: dict
    unresolved: tuple[tuple[int, int], ...]
    lines_checked: int


@dataclass(frozen=True)
class LSResult:
    is_ls: bool
    failing_members: tuple[int, ...]
    neighborhoods: dict


@dataclass(frozen=True)
class RhoSeparabilityResult:
    separable: bool
    rho: float
    failing_member: int | None
    neighborhoods: dict


def _as_bodies(family) -> list[ConvexBody]:
    if isinstance(family, HomothetFamily):
        return family.bodies()
    if isinstance(family, ConvexBody):
        raise GeometryError("expected a sequence of bodies")
    return list(family)


def _body_features(b: ConvexBody) -> tuple[np.ndarray, np.ndarray]:
    """Feature points and outward normals used to build candidate directions."""
    if b.kind == "disk":
        return b.center[None, :], np.zeros((0, 2))
    if b.kind == "segment":
        n = unit(perp(b.vertices[1] - b.vertices[0]))
        return b.vertices, n[None, :]
    if b.kind == "polygon":
        normals, _ = polygon_facets(b)
        return b.vertices, normals
    return b.vertices, np.zeros((0, b.vertices.shape[1]))


def _feature_radii(bodies) -> tuple[np.ndarray, np.ndarray]:
    """Feature points with a radius each: disk centers carry r, vertices 0."""
    pts, rad = [], []
    for b in bodies:
        p, _ = _body_features(b)
        pts.append(p)
        rad.append(np.full(len(p), b.radius if b.kind == "disk" else 0.0))
    return np.vstack(pts), np.concatenate(rad)


def candidate_directions(family1, family2=None) -> np.ndarray:
    """Unit directions that contain every locally optimal separation normal.

    In the plane the angular window of normals separating one pair is
    bounded by the pair's inner tangent directions, phi +- arccos((r_i +
    r_j)/d) around the center difference (vertices count as radius-0
    disks, turning the bound into the perpendicular). Stationary margins
    run along point differences or facet normals. All of these are
    enumerated, so every boundary of a feasible angular window and every
    smooth optimum is a candidate.
    """
    f1 = _as_bodies(family1)
    pts1, rad1 = _feature_radii(f1)
    normals = [_body_features(b)[1] for b in f1]
    if family2 is None:
        pts2, rad2 = pts1, rad1
    else:
        f2 = _as_bodies(family2)
        pts2, rad2 = _feature_radii(f2)
        normals += [_body_features(b)[1] for b in f2]
    diffs = (pts2[None, :, :] - pts1[:, None, :]).reshape(-1, pts1.shape[1])
    lens = np.linalg.norm(diffs, axis=1)
    keep = lens > 1e-12
    dirs = [diffs[keep] / lens[keep, None]] + normals
    if pts1.shape[1] == 2:
        # tangent-window boundary angles of every feature pair
        seps = (rad1[:, None] + rad2[None, :]).reshape(-1)
        tang = keep & (lens > seps + 1e-12)
        if tang.any():
            phi = np.arctan2(diffs[tang, 1], diffs[tang, 0])
            alpha = np.arccos(np.clip(seps[tang] / lens[tang], -1.0, 1.0))
            for t in (phi + alpha, phi - alpha):
                dirs.append(np.stack([np.cos(t), np.sin(t)], axis=1))
    out = np.vstack(dirs)
    if len(out) == 0:
        out = np.array([[1.0, 0.0]])
    return np.unique(out, axis=0)


def _family_bounds(bodies, dirs) -> tuple[np.ndarray, np.ndarray]:
    """Per direction, (min lower endpoint, max upper endpoint) over the family."""
    los = np.full(len(dirs), np.inf)
    his = np.full(len(dirs), -np.inf)
    for b in bodies:
        his = np.maximum(his, support_batch(b, dirs))
        los = np.minimum(los, -support_batch(b, -dirs))
    return los, his


def separation_margin(plane: Hyperplane, left_bodies, right_bodies) -> float:
    """Smallest clearance of any member from the plane, on its assigned side."""
    n = plane.normal
    m = math.inf
    for b in _as_bodies(left_bodies):
        m = min(m, plane.offset - raw_support(b, n))
    for b in _as_bodies(right_bodies):
        m = min(m, -raw_support(b, -n) - plane.offset)
    return float(m)


def strictly_separates(plane, left_bodies, right_bodies, tol: float = EPS) -> bool:
    return separation_margin(plane, left_bodies, right_bodies) > tol


def _golden_max(f, a: float, b: float, tol: float = 1e-13) -> tuple[float, float]:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def _fibonacci_sphere(m: int) -> np.ndarray:
    k = np.arange(m) + 0.5
    phi = math.pi * (1.0 + math.sqrt(5.0)) * k
    z = 1.0 - 2.0 * k / m
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


def find_separating_hyperplane(
    family1,
    family2,
    tol: float = EPS,
    samples: int = 4096,
    refine: bool = True,
) -> SeparationCertificate | None:
    """Best-margin hyperplane with family1 left of family2, None if margin <= tol.

    In the plane the candidate directions are provably sufficient, the grid
    and golden-section refinement only polish the margin. In dimension 3 and
    up the search is sampled and None means no direction found, not a proof.
    """
    f1 = _as_bodies(family1)
    f2 = _as_bodies(family2)
    if not f1 or not f2:
        raise GeometryError("separation needs a member on both sides")
    d = f1[0].dim
    cand = candidate_directions(f1, f2)
    if d == 2:
        if samples:
            t = np.linspace(0.0, TWO_PI, samples, endpoint=False)
            cand = np.vstack([cand, np.stack([np.cos(t), np.sin(t)], axis=1)])
        dirs = np.vstack([cand, -cand])
    else:
        dirs = np.vstack([cand, -cand, _fibonacci_sphere(max(samples, 1024))])

    los2, _ = _family_bounds(f2, dirs)
    _, his1 = _family_bounds(f1, dirs)
    gaps = los2 - his1
    k = int(np.argmax(gaps))
    gap, u = float(gaps[k]), dirs[k]

    def one_dir(v):
        lo2, _ = _family_bounds(f2, v[None, :])
        _, hi1 = _family_bounds(f1, v[None, :])
        return float(lo2[0] - hi1[0])

    if refine and d == 2:
        # a feasible window with all candidates on its zero boundary is
        # only seen by stepping inside, so polish the best few candidates
        half = math.pi / max(samples, 1024)
        order = np.argsort(-gaps)
        for rank, idx in enumerate(order[:12]):
            if rank > 0 and gaps[idx] < -1e-7:
                break
            theta = math.atan2(dirs[idx][1], dirs[idx][0])
            tt, gg = _golden_max(
                lambda t: one_dir(np.array([math.cos(t), math.sin(t)])),
                theta - half,
                theta + half,
            )
            if gg > gap:
                gap, u = gg, np.array([math.cos(tt), math.sin(tt)])

    if gap <= 2.0 * tol:
        return None
    _, hi1 = _family_bounds(f1, u[None, :])
    lo2, _ = _family_bounds(f2, u[None, :])
    plane = Hyperplane(u, 0.5 * (hi1[0] + lo2[0]))
    n1 = len(f1)
    return SeparationCertificate(
        plane,
        tuple(range(n1)),
        tuple(range(n1, n1 + len(f2))),
        0.5 * gap,
    )


@dataclass(frozen=True)
class KirchbergerResult:
    separable: bool
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None
    subfamilies_checked: int


def kirchberger_reduce(family1, family2, tol: float = EPS) -> KirchbergerResult:
    """Decide strict separability from subfamilies with at most d + 2 members.

    The two families are strictly separable exactly when every subfamily
    with d + 2 members in total is, so only those are tested; a failing
    subfamily is returned as the witness.
    """
    f1 = _as_bodies(family1)
    f2 = _as_bodies(family2)
    if not f1 or not f2:
        return KirchbergerResult(True, None, 0)
    d = f1[0].dim
    tagged = [(0, i) for i in range(len(f1))] + [(1, j) for j in range(len(f2))]
    size = min(len(tagged), d + 2)
    checked = 0
    for combo in itertools.combinations(range(len(tagged)), size):
        idx1 = [tagged[c][1] for c in combo if tagged[c][0] == 0]
        idx2 = [tagged[c][1] for c in combo if tagged[c][0] == 1]
        if not idx1 or not idx2:
            continue  # one-sided subfamilies are separable outright
        checked += 1
        sub1 = [f1[i] for i in idx1]
        sub2 = [f2[j] for j in idx2]
        if find_separating_hyperplane(sub1, sub2, tol=tol, samples=0) is None:
            return KirchbergerResult(False, (tuple(idx1), tuple(idx2)), checked)
    return KirchbergerResult(True, None, checked)


# ---------------------------------------------------------------------------
# non-separable families
# ---------------------------------------------------------------------------


def _interval_matrices(bodies, dirs) -> tuple[np.ndarray, np.ndarray]:
    los = np.empty((len(bodies), len(dirs)))
    his = np.empty_like(los)
    for k, b in enumerate(bodies):
        his[k] = support_batch(b, dirs)
        los[k] = -support_batch(b, -dirs)
    return los, his


def _sweep_gaps(los: np.ndarray, his: np.ndarray) -> np.ndarray:
    """Per column, widest gap left open by the union of intervals."""
    order = np.argsort(los, axis=0, kind="stable")
    lo_s = np.take_along_axis(los, order, axis=0)
    hi_s = np.take_along_axis(his, order, axis=0)
    cover = np.maximum.accumulate(hi_s, axis=0)
    return (lo_s[1:] - cover[:-1]).max(axis=0)


def _split_certificate(bodies, u: np.ndarray) -> SeparationCertificate:
    los, his = _interval_matrices(bodies, u[None, :])
    los, his = los[:, 0], his[:, 0]
    order = np.argsort(los, kind="stable")
    cover = np.maximum.accumulate(his[order])
    gaps = los[order][1:] - cover[:-1]
    p = int(np.argmax(gaps))
    s = 0.5 * (cover[p] + los[order][p + 1])
    left = tuple(sorted(int(i) for i in order[: p + 1]))
    right = tuple(sorted(int(i) for i in order[p + 1 :]))
    return SeparationCertificate(Hyperplane(u, s), left, right, 0.5 * float(gaps[p]))


def is_non_separable(family, samples: int = 4096, tol: float = EPS) -> NSDecision:
    """Decide whether no hyperplane splits the family while missing every member.

    A family is separable when some hyperplane disjoint from the union has
    members strictly on both sides. Planar families are decided over the
    candidate directions (exact for disks, polygons, segments) plus an angle
    grid; higher dimensions are sampled and flagged approximate.
    """
    bodies = _as_bodies(family)
    n = len(bodies)
    if n < 2:
        raise GeometryError("non-separability needs at least 2 members")
    d = bodies[0].dim

    if d == 2:
        cand = candidate_directions(bodies)
        cang = np.arctan2(cand[:, 1], cand[:, 0])
        thetas = np.concatenate(
            [np.linspace(0.0, math.pi, max(samples, 8), endpoint=False), cang]
        )
        if isinstance(family, HomothetFamily) and family.reference.dim == 2:
            ref = family.reference
            centers = np.asarray(family.centers, dtype=float)
            ratios = np.asarray(family.ratios, dtype=float)

            def eval_gaps(ts):
                ts = np.ascontiguousarray(ts, dtype=np.float64)
                ct, st = np.cos(ts), np.sin(ts)
                ds = np.stack([ct, st], axis=1)
                hplus = support_batch(ref, ds)
                hminus = support_batch(ref, -ds)
                return gap_profile(
                    np.ascontiguousarray(centers[:, 0]),
                    np.ascontiguousarray(centers[:, 1]),
                    np.ascontiguousarray(ratios),
                    np.ascontiguousarray(hplus),
                    np.ascontiguousarray(hminus),
                    np.ascontiguousarray(ct),
                    np.ascontiguousarray(st),
                )

        else:

            def eval_gaps(ts):
                ds = np.stack([np.cos(ts), np.sin(ts)], axis=1)
                los, his = _interval_matrices(bodies, ds)
                return _sweep_gaps(los, his)

        gaps = np.asarray(eval_gaps(thetas))
        k = int(np.argmax(gaps))
        gap, theta = float(gaps[k]), float(thetas[k])
        half = math.pi / max(samples, 8)
        # candidates sitting on a window boundary evaluate to zero, so
        # polish the best few of them, not only the global argmax
        order = np.argsort(-gaps)
        for rank, idx in enumerate(order[:12]):
            if rank > 0 and gaps[idx] < -1e-7:
                break
            tt, gg = _golden_max(
                lambda t: float(eval_gaps(np.array([t]))[0]),
                float(thetas[idx]) - half,
                float(thetas[idx]) + half,
            )
            if gg > gap:
                gap, theta = gg, tt
        if gap > tol:
            u = np.array([math.cos(theta), math.sin(theta)])
            return NSDecision(False, _split_certificate(bodies, u), len(thetas), False)
        return NSDecision(True, None, len(thetas), False)

    dirs = _fibonacci_sphere(max(samples, 1024))
    cand = candidate_directions(bodies)
    dirs = np.vstack([dirs, cand])
    los, his = _interval_matrices(bodies, dirs)
    gaps = _sweep_gaps(los, his)
    k = int(np.argmax(gaps))
    if gaps[k] > tol:
        return NSDecision(False, _split_certificate(bodies, dirs[k]), len(dirs), True)
    return NSDecision(True, None, len(dirs), True)


def is_sns(family, tol: float = EPS) -> SNSResult:
    """Search for an ordering where each member is non-separable from its prefix.

    Greedy extension from every possible first member is complete: a member
    non-separable from a subfamily stays non-separable from any superset, so
    whenever a valid ordering exists the greedy run from its first element
    cannot get stuck.
    """
    bodies = _as_bodies(family)
    n = len(bodies)
    if n == 0:
        raise GeometryError("empty family")
    if n == 1:
        return SNSResult(True, (0,))
    for start in range(n):
        chosen = [start]
        rest = [k for k in range(n) if k != start]
        while rest:
            for pos, j in enumerate(rest):
                prefix = [bodies[k] for k in chosen]
                cert = find_separating_hyperplane(
                    prefix, [bodies[j]], tol=tol, samples=0
                )
                if cert is None:
                    chosen.append(j)
                    rest.pop(pos)
                    break
            else:
                break
        if not rest:
            return SNSResult(True, tuple(chosen))
    return SNSResult(False, None)


# ---------------------------------------------------------------------------
# packings: totally / locally / rho separable
# ---------------------------------------------------------------------------


def pair_separation(a: ConvexBody, b: ConvexBody) -> float:
    """Largest one-line clearance between two bodies, negative on overlap."""
    cand = candidate_directions([a], [b])
    dirs = np.vstack([cand, -cand])
    g = (-support_batch(b, -dirs)) - support_batch(a, dirs)
    return float(g.max())


def validate_packing(bodies, tol: float = EPS) -> None:
    """Raise unless all interiors are pairwise disjoint (touching allowed)."""
    for i in range(len(bodies)):
        for j in range(i + 1, len(bodies)):
            if pair_separation(bodies[i], bodies[j]) < -tol:
                raise GeometryError(f"not a packing: members {i} and {j} overlap")


def _tangent_line_solutions(w: np.ndarray, t: float) -> list[np.ndarray]:
    """Unit u with <u, w> = t, the normals of lines meeting two tangency constraints."""
    big = float(np.linalg.norm(w))
    if big < 1e-12:
        return []
    a = t / big
    if abs(a) > 1.0 + 1e-9:
        return []
    a = max(-1.0, min(1.0, a))
    b = math.sqrt(max(0.0, 1.0 - a * a))
    what = w / big
    wperp = perp(what)
    if b < 1e-12:
        return [a * what]
    return [a * what + b * wperp, a * what - b * wperp]


def _ts_line_pool(bodies, tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Candidate separating lines: two-contact tangents, edge lines, midlines.

    A line avoiding every interior can be slid and rotated until it touches
    two members or lies flush with an edge, so these candidates exhaust the
    search for disk and polygon packings.
    """
    feats = []
    for b in bodies:
        if b.kind == "disk":
            feats.append(("disk", b.center, b.radius))
        else:
            feats.append(("pts", b.vertices, 0.0))
    lines: list[tuple[np.ndarray, float]] = []

    for kind, data, _r in feats:
        if kind == "pts" and len(data) >= 2:
            vs = data
            m = len(vs)
            for e in range(m if m > 2 else 1):
                edge = vs[(e + 1) % m] - vs[e]
                if np.linalg.norm(edge) < 1e-12:
                    continue
                u = unit(perp(edge))
                lines.append((u, float(u @ vs[e])))

    n = len(bodies)
    for i in range(n):
        for j in range(i + 1, n):
            ka, da, ra = feats[i]
            kb, db, rb = feats[j]
            if ka == "disk" and kb == "disk":
                w = da - db
                for e1 in (1.0, -1.0):
                    for e2 in (1.0, -1.0):
                        for u in _tangent_line_solutions(w, e1 * ra - e2 * rb):
                            lines.append((u, float(u @ da) - e1 * ra))
            elif ka == "disk" or kb == "disk":
                c, r = (da, ra) if ka == "disk" else (db, rb)
                vs = db if ka == "disk" else da
                for v in vs:
                    for e in (1.0, -1.0):
                        for u in _tangent_line_solutions(c - v, e * r):
                            lines.append((u, float(u @ v)))
            else:
                for va in da:
                    for vb in db:
                        d = vb - va
                        if np.linalg.norm(d) < 1e-12:
                            continue
                        u = unit(perp(d))
                        lines.append((u, float(u @ va)))
            # best one-line clearance between the pair, placed mid-gap
            cand = candidate_directions([bodies[i]], [bodies[j]])
            dirs = np.vstack([cand, -cand])
            lo = -support_batch(bodies[j], -dirs)
            hi = support_batch(bodies[i], dirs)
            k = int(np.argmax(lo - hi))
            lines.append((dirs[k], 0.5 * float(lo[k] + hi[k])))

    us = np.array([u for u, _ in lines])
    ss = np.array([s for _, s in lines])
    return us, ss


def is_ts_packing(bodies, tol: float = EPS) -> TSResult:
    """Check total separability: every pair split by a line missing all interiors.

    A yes comes with a verified line per pair. Pairs with no valid candidate
    line land in unresolved; for disk and polygon members the candidate pool
    is exhaustive, so a nonempty unresolved list refutes total separability
    at the given tolerance.
    """
    bodies = _as_bodies(bodies)
    n = len(bodies)
    if n == 0:
        raise GeometryError("empty packing")
    validate_packing(bodies, tol)
    if n == 1:
        return TSResult(True, {}, (), 0)

    us, ss = _ts_line_pool(bodies, tol)
    los, his = _interval_matrices(bodies, us)
    below = his <= ss[None, :] + tol
    above = los >= ss[None, :] - tol
    sided = (below | above).all(axis=0)

    certificates: dict[tuple[int, int], SeparationCertificate] = {}
    unresolved = []
    for i in range(n):
        for j in range(i + 1, n):
            ok = sided & ((below[i] & above[j]) | (above[i] & below[j]))
            hits = np.flatnonzero(ok)
            if hits.size == 0:
                unresolved.append((i, j))
                continue
            k = int(hits[0])
            if below[i, k]:
                u, s = us[k], float(ss[k])
                hi_f, lo_f = his[:, k], los[:, k]
                lmask = below[:, k]
            else:
                u, s = -us[k], -float(ss[k])
                hi_f, lo_f = -los[:, k], -his[:, k]
                lmask = above[:, k]
            left = tuple(int(m) for m in np.flatnonzero(lmask))
            right = tuple(int(m) for m in np.flatnonzero(~lmask))
            margin = float(
                min(
                    (s - hi_f[list(left)]).min(),
                    (lo_f[list(right)] - s).min() if right else math.inf,
                )
            )
            certificates[(i, j)] = SeparationCertificate(
                Hyperplane(u, s), left, right, margin
            )
    return TSResult(not unresolved, certificates, tuple(unresolved), len(us))


def tangency_pairs(bodies, tol: float = EPS) -> list[tuple[int, int]]:
    """Pairs of members at zero distance (touching, interiors disjoint)."""
    out = []
    for i in range(len(bodies)):
        for j in range(i + 1, len(bodies)):
            s = pair_separation(bodies[i], bodies[j])
            if s < -tol:
                raise GeometryError(f"not a packing: members {i} and {j} overlap")
            if s <= tol:
                out.append((i, j))
    return out


def is_ls_packing(bodies, tol: float = EPS) -> LSResult:
    """Check local separability: each member plus its touching neighbours is TS."""
    bodies = _as_bodies(bodies)
    if len(bodies) == 0:
        raise GeometryError("empty packing")
    touching = tangency_pairs(bodies, tol)
    nbs: dict[int, list[int]] = {i: [] for i in range(len(bodies))}
    for i, j in touching:
        nbs[i].append(j)
        nbs[j].append(i)
    failing = []
    hoods = {}
    for i in range(len(bodies)):
        sub_idx = [i] + sorted(nbs[i])
        hoods[i] = tuple(sorted(nbs[i]))
        if len(sub_idx) < 2:
            continue
        res = is_ts_packing([bodies[k] for k in sub_idx], tol)
        if not res.is_ts:
            failing.append(i)
    return LSResult(not failing, tuple(failing), hoods)


def is_rho_separable(
    reference: ConvexBody, centers, rho: float, tol: float = EPS
) -> RhoSeparabilityResult:
    """Check rho-separability of a translate packing of a symmetric body.

    The packing is rho-separable when, for each member, the sub-packing of
    members contained in the rho-enlarged copy around it is totally
    separable. Containment reduces to gauge distance at most rho - 1.
    """
    if rho < 1.0:
        raise GeometryError("rho must be at least 1")
    if not reference.is_origin_symmetric(1e-9):
        raise GeometryError("rho-separability requires an origin-symmetric reference")
    cs = np.atleast_2d(np.asarray(centers, dtype=float))
    n = len(cs)
    dist = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            dist[i, j] = dist[j, i] = minkowski_norm(reference, cs[j] - cs[i])
            if dist[i, j] < 2.0 - tol:
                raise GeometryError(f"not a packing: members {i} and {j} overlap")
    hoods = {
        i: tuple(j for j in range(n) if j != i and dist[i, j] <= rho - 1.0 + tol)
        for i in range(n)
    }
    if rho < 3.0:
        # neighbourhoods are singletons below rho = 3, nothing to separate
        return RhoSeparabilityResult(True, rho, None, hoods)
    for i in range(n):
        sub = [i] + list(hoods[i])
        if len(sub) < 2:
            continue
        res = is_ts_packing([reference.translate(cs[k]) for k in sub], tol)
        if not res.is_ts:
            return RhoSeparabilityResult(False, rho, i, hoods)
    return RhoSeparabilityResult(True, rho, None, hoods)

"""Hot numeric kernels with twin implementations.

Each kernel has a numba-compiled loop version and a vectorized numpy
version computing identical results from identical inputs. The public
names dispatch on the selected backend (see _jit). Keeping the math in
one place lets the test suite assert bitwise agreement between paths.
"""

import numpy as np

from ._jit import HAS_NUMBA, njit

# ---------------------------------------------------------------------------
# projection gap profile
#
# For direction angles theta_k, every member i of a homothet family projects
# to the interval
#     [ c_i . u(theta) - tau_i * hminus_k ,  c_i . u(theta) + tau_i * hplus_k ]
# where hplus_k = h_K(u), hminus_k = h_K(-u) are the reference supports.
# The profile value at theta_k is the largest gap left uncovered between
# consecutive intervals of the merged union (negative = overlap depth).
# A positive value certifies a strict separation perpendicular to u.
# ---------------------------------------------------------------------------


@njit
def _gap_profile_loop(cx, cy, tau, hplus, hminus, cos_t, sin_t):
    m = cos_t.shape[0]
    n = cx.shape[0]
    out = np.empty(m, dtype=np.float64)
    lo = np.empty(n, dtype=np.float64)
    hi = np.empty(n, dtype=np.float64)
    for k in range(m):
        c, s = cos_t[k], sin_t[k]
        for i in range(n):
            p = cx[i] * c + cy[i] * s
            lo[i] = p - tau[i] * hminus[k]
            hi[i] = p + tau[i] * hplus[k]
        # insertion sort by lo, dragging hi along (n is small)
        for i in range(1, n):
            a, b = lo[i], hi[i]
            j = i - 1
            while j >= 0 and lo[j] > a:
                lo[j + 1] = lo[j]
                hi[j + 1] = hi[j]
                j -= 1
            lo[j + 1] = a
            hi[j + 1] = b
        best = -np.inf
        cover = hi[0]
        for i in range(1, n):
            g = lo[i] - cover
            if g > best:
                best = g
            if hi[i] > cover:
                cover = hi[i]
        out[k] = best
    return out


def _gap_profile_numpy(cx, cy, tau, hplus, hminus, cos_t, sin_t):
    proj = np.outer(cx, cos_t) + np.outer(cy, sin_t)  # (n, m)
    lo = proj - tau[:, None] * hminus[None, :]
    hi = proj + tau[:, None] * hplus[None, :]
    order = np.argsort(lo, axis=0, kind="stable")
    lo = np.take_along_axis(lo, order, axis=0)
    hi = np.take_along_axis(hi, order, axis=0)
    cover = np.maximum.accumulate(hi, axis=0)
    gaps = lo[1:, :] - cover[:-1, :]
    return gaps.max(axis=0)


# ---------------------------------------------------------------------------
# simplex coverage counting (Rogers sigma)
#
# uniform01 has shape (chunk, d+1); each row becomes a Dirichlet weight
# vector via -log, the weighted vertex combination is the sample point, and
# the point counts as covered when within distance 1 of some vertex.
# Both paths consume the same uniform stream, so counts agree exactly.
# ---------------------------------------------------------------------------


@njit
def _simplex_covered_loop(verts, uniform01):
    n, k = uniform01.shape
    d = verts.shape[1]
    covered = 0
    w = np.empty(k, dtype=np.float64)
    p = np.empty(d, dtype=np.float64)
    for s in range(n):
        tot = 0.0
        for j in range(k):
            e = -np.log(uniform01[s, j])
            w[j] = e
            tot += e
        for a in range(d):
            acc = 0.0
            for j in range(k):
                acc += w[j] * verts[j, a]
            p[a] = acc / tot
        hit = False
        for j in range(k):
            dist2 = 0.0
            for a in range(d):
                diff = p[a] - verts[j, a]
                dist2 += diff * diff
            if dist2 <= 1.0:
                hit = True
                break
        if hit:
            covered += 1
    return covered


def _simplex_covered_numpy(verts, uniform01):
    w = -np.log(uniform01)
    w /= w.sum(axis=1, keepdims=True)
    pts = w @ verts  # (n, d)
    diff = pts[:, None, :] - verts[None, :, :]
    dist2 = np.einsum("ijk,ijk->ij", diff, diff)
    return int((dist2.min(axis=1) <= 1.0).sum())


# ---------------------------------------------------------------------------
# pole feasibility margins (spherical searches)
#
# For each candidate pole p: margin = min_i ( |p . c_i| - sinr_i ).
# A pole with positive margin carries a great circle avoiding every cap.
# split[k] says whether the cap centers fall on both sides of the circle.
# ---------------------------------------------------------------------------


@njit
def _pole_margins_loop(poles, centers, sinr):
    m = poles.shape[0]
    n = centers.shape[0]
    margins = np.empty(m, dtype=np.float64)
    split = np.zeros(m, dtype=np.bool_)
    for k in range(m):
        worst = np.inf
        pos = False
        neg = False
        for i in range(n):
            dot = (
                poles[k, 0] * centers[i, 0]
                + poles[k, 1] * centers[i, 1]
                + poles[k, 2] * centers[i, 2]
            )
            v = abs(dot) - sinr[i]
            if v < worst:
                worst = v
            if dot > 0.0:
                pos = True
            elif dot < 0.0:
                neg = True
        margins[k] = worst
        split[k] = pos and neg
    return margins, split


def _pole_margins_numpy(poles, centers, sinr):
    dots = poles @ centers.T  # (m, n)
    margins = (np.abs(dots) - sinr[None, :]).min(axis=1)
    split = (dots > 0.0).any(axis=1) & (dots < 0.0).any(axis=1)
    return margins, split


if HAS_NUMBA:
    gap_profile = _gap_profile_loop
    simplex_covered = _simplex_covered_loop
    pole_margins = _pole_margins_loop
    BACKEND = "numba"
else:
    gap_profile = _gap_profile_numpy
    simplex_covered = _simplex_covered_numpy
    pole_margins = _pole_margins_numpy
    BACKEND = "numpy"


def warmup():
    """Trigger jit compilation once so timed paths run warm."""
    if not HAS_NUMBA:
        return
    t = np.linspace(0.0, np.pi, 4)
    gap_profile(
        np.array([0.0, 3.0]),
        np.array([0.0, 0.0]),
        np.array([1.0, 1.0]),
        np.ones(4),
        np.ones(4),
        np.cos(t),
        np.sin(t),
    )
    simplex_covered(np.eye(3), np.full((4, 3), 0.5))
    pole_margins(np.eye(3), np.eye(3), np.zeros(3))

"""Brute-force desk-scale ground truth (n <= 3).

Everything here works on pitch-aligned lattices and direct function
evaluation only; the projection oracle never touches the active-set QP and
the VI oracle never touches Newton or the homotopy, so both stay
independent cross-checks of the solver stack.

The projection oracle refines its lattice in stages.  A single coarse
lattice cannot pin the projection of a distant point to O(pitch): the
lattice argmin of the distance wanders tangentially by O(sqrt(pitch*dist))
along the level sphere.  Each stage therefore shrinks the lattice around
the incumbent until that spread bound drops below the requested pitch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .geometry import Polyhedron

__all__ = ["oracle_projection", "oracle_vi_solutions", "oracle_min_inner", "OracleVIResult"]

_BAND = 0.51  # half-thickness of the lattice membership band, in row 1-norms
_TOL_SAFETY = 1.5
_SPREAD = 10.0  # constant in the tangential spread bound sqrt(SPREAD * dist * pitch)


def _require_small_dimension(n):
    if n > 3:
        raise ValueError("oracle operations are limited to n <= 3")


def _band_rows(P: Polyhedron):
    """Inequality representation R x <= rhs_base with per-row 1-norms.

    Equalities become two-sided rows; the caller widens rhs by the
    pitch-dependent band before use.
    """
    rows, rhs = [], []
    if P.A.shape[0]:
        rows.append(P.A)
        rhs.append(P.b)
    if P.E.shape[0]:
        rows.append(P.E)
        rhs.append(P.d)
        rows.append(-P.E)
        rhs.append(-P.d)
    if not rows:
        return np.zeros((0, P.n)), np.zeros(0), np.zeros(0)
    R = np.vstack(rows)
    r = np.concatenate(rhs)
    return R, r, np.abs(R).sum(axis=1)


def _axis_lattice(lo, hi, pitch):
    k0 = math.ceil(lo / pitch - 1e-9)
    k1 = math.floor(hi / pitch + 1e-9)
    if k1 < k0:
        return np.zeros(0)
    return np.arange(k0, k1 + 1) * pitch


def _nearest_lattice_point(R, rhs, z, pitch, lo, hi):
    """Exact nearest point of the band lattice inside the box, or None.

    The last coordinate is resolved per partial assignment in closed form,
    which keeps the scan at O(axis^(n-1)) lattice combinations.
    """
    n = z.shape[0]
    axes = [_axis_lattice(lo[j], hi[j], pitch) for j in range(n - 1)]
    if any(a.size == 0 for a in axes):
        return None
    if n == 1:
        Xp = np.zeros((1, 0))
    else:
        mesh = np.meshgrid(*axes, indexing="ij")
        Xp = np.stack([g.ravel() for g in mesh], axis=1)
    M = Xp.shape[0]
    lo_n = np.full(M, lo[n - 1])
    hi_n = np.full(M, hi[n - 1])
    feas = np.ones(M, dtype=bool)
    if R.shape[0]:
        base = rhs[None, :] - Xp @ R[:, : n - 1].T
        rn = R[:, n - 1]
        for i in range(R.shape[0]):
            if rn[i] > 1e-14:
                hi_n = np.minimum(hi_n, base[:, i] / rn[i])
            elif rn[i] < -1e-14:
                lo_n = np.maximum(lo_n, base[:, i] / rn[i])
            else:
                feas &= base[:, i] >= 0.0
    k_lo = np.ceil(lo_n / pitch - 1e-9)
    k_hi = np.floor(hi_n / pitch + 1e-9)
    feas &= k_lo <= k_hi
    if not np.any(feas):
        return None
    k = np.clip(np.round(z[n - 1] / pitch), k_lo, k_hi) * pitch
    dist2 = ((Xp - z[: n - 1]) ** 2).sum(axis=1) + (k - z[n - 1]) ** 2
    dist2[~feas] = np.inf
    j = int(np.argmin(dist2))
    return np.concatenate([Xp[j], [k[j]]])


def oracle_projection(P: Polyhedron, z, pitch, max_stages=25) -> np.ndarray:
    """Nearest lattice point of the set to z, refined to O(pitch) accuracy."""
    _require_small_dimension(P.n)
    if pitch <= 0:
        raise ValueError("pitch must be positive")
    z = np.asarray(z, dtype=float)
    R, rhs_base, row_norms = _band_rows(P)

    center = z.copy()
    half = float(np.linalg.norm(z - P.anchor)) + 1.0 + 10.0 * pitch
    p = max(pitch, 2.0 * half / 360.0)
    best = None
    expansions = 0
    for _ in range(max_stages):
        rhs = rhs_base + _BAND * p * row_norms if R.shape[0] else rhs_base
        cand = _nearest_lattice_point(R, rhs, z, p, center - half, center + half)
        if cand is None:
            expansions += 1
            if expansions > 6:
                raise RuntimeError("projection oracle found no feasible lattice point")
            half *= 2.0
            continue
        best = cand
        dist = float(np.linalg.norm(best - z))
        if dist <= math.sqrt(P.n) * pitch:
            break
        p_target = (0.7 * pitch) ** 2 / (_SPREAD * max(dist, pitch))
        if p <= pitch and p <= p_target:
            break
        p_next = max(p / 4.0, min(p_target, pitch))
        if p_next >= p:
            break
        half = 1.5 * math.sqrt(_SPREAD * max(dist, p) * p) + 4.0 * p_next
        center = best
        p = p_next
    if best is None:
        raise RuntimeError("projection oracle found no feasible lattice point")
    return best


@dataclass
class OracleVIResult:
    """Representatives of the lattice points that pass the solution test."""

    points: list = field(default_factory=list)
    oracle_tol: float = 0.0
    accepted_count: int = 0
    pitch: float = 0.0

    def as_array(self) -> np.ndarray:
        return np.array(self.points) if self.points else np.zeros((0, 0))


def _lattice_candidates(P, R, rhs_base, row_norms, pitch, lo, hi, ball_radius=None):
    axes = [_axis_lattice(lo[j], hi[j], pitch) for j in range(P.n)]
    if any(a.size == 0 for a in axes):
        return np.zeros((0, P.n))
    mesh = np.meshgrid(*axes, indexing="ij")
    X = np.stack([g.ravel() for g in mesh], axis=1)
    if R.shape[0]:
        rhs = rhs_base + _BAND * pitch * row_norms
        X = X[np.all(X @ R.T <= rhs[None, :], axis=1)]
    if ball_radius is not None and X.shape[0]:
        X = X[np.linalg.norm(X, axis=1) <= ball_radius * (1.0 + 1e-9)]
    return X


def _test_directions(P):
    rec = P.recession_cone()
    rows = [rec.extreme_rays()]
    lin = rec.lineality_basis()
    if lin.shape[0]:
        rows.append(lin)
        rows.append(-lin)
    U = np.vstack([r for r in rows if r.shape[0]]) if any(r.shape[0] for r in rows) else np.zeros((0, P.n))
    return U


def _test_points(candidates, P):
    """Hull vertices of the sampled feasible region plus exact vertices."""
    pts = [candidates]
    if candidates.shape[0] >= 4:
        try:
            hull = ConvexHull(candidates)
            pts = [candidates[hull.vertices]]
        except QhullError:
            sub = candidates[:: max(1, candidates.shape[0] // 1500)]
            pts = [sub]
    verts = P.vertices()
    if verts.shape[0]:
        pts.append(verts)
    pts.append(P.anchor[None, :])
    Y = np.vstack(pts)
    # dedup on a fine grid to keep the loop over Y short
    _, idx = np.unique(np.round(Y / 1e-9).astype(np.int64), axis=0, return_index=True)
    return Y[np.sort(idx)]


def _solution_mask(m, X, Y, U, pitch):
    """Normalized first-order test of the solution property on lattice points."""
    F = m.eval_map_many(X)
    bundle = np.maximum(1.0, np.linalg.norm(F, axis=1) + m.jacobian_inf_norms(X))
    tol = _TOL_SAFETY * pitch * bundle
    ok = np.ones(X.shape[0], dtype=bool)
    for y in Y:
        diff = y[None, :] - X
        vals = (F * diff).sum(axis=1) / (1.0 + np.linalg.norm(diff, axis=1))
        ok &= vals >= -tol
    for u in U:
        ok &= F @ u >= -tol
    return ok, bundle


def _cluster(points, linkage):
    """Connected components under the given linkage radius (BFS)."""
    N = points.shape[0]
    if N > 6000:
        step = int(np.ceil(N / 6000))
        points = points[::step]
        N = points.shape[0]
    unseen = set(range(N))
    clusters = []
    while unseen:
        seed = min(unseen)
        comp, frontier = {seed}, [seed]
        unseen.discard(seed)
        while frontier:
            i = frontier.pop()
            near = np.nonzero(np.linalg.norm(points - points[i], axis=1) <= linkage)[0]
            for j in near:
                if j in unseen:
                    unseen.discard(int(j))
                    comp.add(int(j))
                    frontier.append(int(j))
        clusters.append(points[sorted(comp)])
    return clusters


def oracle_vi_solutions(
    m, P: Polyhedron, pitch=1e-2, radius=5.0, refine_rounds=2, extended_diam=1.0
) -> OracleVIResult:
    """Grid points of the set within the ball that pass the solution test.

    Compact clusters are refined on 8x finer lattices (refine_rounds times)
    and reduced to their centroid; clusters more extended than
    extended_diam (solution rays and segments) are reported as a decimated
    chain of lattice points instead.
    """
    _require_small_dimension(P.n)
    R, rhs_base, row_norms = _band_rows(P)
    lo = np.full(P.n, -radius)
    hi = np.full(P.n, radius)
    X = _lattice_candidates(P, R, rhs_base, row_norms, pitch, lo, hi, ball_radius=radius)
    result = OracleVIResult(pitch=pitch, oracle_tol=2.0 * pitch)
    if X.shape[0] == 0:
        return result
    Y = _test_points(X, P)
    U = _test_directions(P)
    ok, bundle = _solution_mask(m, X, Y, U, pitch)
    accepted = X[ok]
    result.accepted_count = int(accepted.shape[0])
    if accepted.shape[0] == 0:
        return result
    result.oracle_tol = _TOL_SAFETY * pitch * (1.0 + float(bundle[ok].max()))

    reps = []
    for cluster in _cluster(accepted, 3.0 * pitch):
        diam = float(
            np.linalg.norm(cluster.max(axis=0) - cluster.min(axis=0))
        )
        if diam > extended_diam:
            step = max(1, cluster.shape[0] // 60)
            reps.extend(list(cluster[::step]))
            continue
        pts, p_k = cluster, pitch
        for _ in range(refine_rounds):
            p_k /= 8.0
            blo = pts.min(axis=0) - 3.0 * p_k * 8.0
            bhi = pts.max(axis=0) + 3.0 * p_k * 8.0
            Xf = _lattice_candidates(P, R, rhs_base, row_norms, p_k, blo, bhi)
            if Xf.shape[0] == 0:
                break
            okf, _ = _solution_mask(m, Xf, Y, U, p_k)
            if not np.any(okf):
                break
            pts = Xf[okf]
        reps.append(pts.mean(axis=0))
    result.points = sorted((np.asarray(r) for r in reps), key=tuple)
    return result


def oracle_min_inner(psi, P: Polyhedron, pitch=2e-2, radius=5.0):
    """Lattice minimum of <psi(x) - psi(0), x> over the set within the ball."""
    _require_small_dimension(P.n)
    R, rhs_base, row_norms = _band_rows(P)
    lo = np.full(P.n, -radius)
    hi = np.full(P.n, radius)
    X = _lattice_candidates(P, R, rhs_base, row_norms, pitch, lo, hi, ball_radius=radius)
    if X.shape[0] == 0:
        raise RuntimeError("no lattice points inside the set and ball")
    psi0 = psi.eval_map(np.zeros(P.n))
    G = ((psi.eval_map_many(X) - psi0[None, :]) * X).sum(axis=1)
    j = int(np.argmin(G))
    return float(G[j]), X[j]

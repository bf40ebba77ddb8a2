"""Polyhedral sets {x : Ax <= b, Ex = d}: membership, recession cone, dual
cone membership, Euclidean projection and deterministic sampling.

Projection uses a dense primal active-set method on the strictly convex QP
min ||x - z||^2, with least-index (Bland style) selection for both the
blocking constraint and the dropped multiplier, which prevents cycling on
degenerate instances at desk scale.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog, nnls

__all__ = [
    "Polyhedron",
    "ActiveSet",
    "InconclusiveError",
    "nullspace_projector",
    "cone_unit_directions",
]

_RANK_TOL = 1e-11


class InconclusiveError(RuntimeError):
    """A numerical subroutine failed to converge; no verdict is implied."""


@dataclass(frozen=True)
class ActiveSet:
    """Inequality rows tight at a projection point.

    Equality rows are always active and are not listed.  The indices form
    the least-index maximal linearly independent selection among all tight
    rows, so the induced generalized Jacobian of the projector is
    deterministic.
    """

    ineq_indices: tuple[int, ...]


def nullspace_projector(N: np.ndarray) -> np.ndarray:
    """Orthogonal projector onto the null space of the rows of N."""
    n = N.shape[1]
    if N.shape[0] == 0:
        return np.eye(n)
    U, S, Vt = np.linalg.svd(N, full_matrices=False)
    if S.size == 0 or S[0] <= 0:
        return np.eye(n)
    r = int(np.sum(S > _RANK_TOL * S[0]))
    B = Vt[:r]
    return np.eye(n) - B.T @ B


def _as_2d(M, n, name):
    M = np.asarray(M, dtype=float)
    if M.size == 0:
        return np.zeros((0, n))
    if M.ndim != 2 or M.shape[1] != n:
        raise ValueError(f"{name} must be a matrix with {n} columns")
    return M


class Polyhedron:
    """Nonempty set {x in R^n : Ax <= b, Ex = d}."""

    def __init__(self, n, A=None, b=None, E=None, d=None):
        self.n = int(n)
        self.A = _as_2d(A if A is not None else [], self.n, "A")
        self.b = np.asarray(b if b is not None else [], dtype=float).reshape(-1)
        self.E = _as_2d(E if E is not None else [], self.n, "E")
        self.d = np.asarray(d if d is not None else [], dtype=float).reshape(-1)
        if self.A.shape[0] != self.b.shape[0]:
            raise ValueError("A and b row counts differ")
        if self.E.shape[0] != self.d.shape[0]:
            raise ValueError("E and d row counts differ")
        for name, M in (("A", self.A), ("E", self.E)):
            norms = np.linalg.norm(M, axis=1) if M.shape[0] else np.array([])
            if np.any(norms == 0):
                raise ValueError(f"{name} contains a zero row")
        self.anchor = self._compute_anchor()
        for arr in (self.A, self.b, self.E, self.d, self.anchor):
            arr.setflags(write=False)

    # -- construction helpers ------------------------------------------------

    @classmethod
    def nonneg_orthant(cls, n):
        return cls(n, A=-np.eye(n), b=np.zeros(n))

    @classmethod
    def full_space(cls, n):
        return cls(n)

    def _compute_anchor(self) -> np.ndarray:
        """A feasible, reasonably centered point; raises when the set is empty."""
        m, p = self.A.shape[0], self.E.shape[0]
        if m == 0 and p == 0:
            return np.zeros(self.n)
        if m == 0:
            x, *_ = np.linalg.lstsq(self.E, self.d, rcond=None)
            if np.linalg.norm(self.E @ x - self.d) > 1e-8 * (1 + np.linalg.norm(self.d)):
                raise ValueError("polyhedron is empty (inconsistent equalities)")
            return x
        # Chebyshev-style LP in (x, rho): maximise the inequality slack radius.
        norms = np.linalg.norm(self.A, axis=1)
        c = np.zeros(self.n + 1)
        c[-1] = -1.0
        A_ub = np.hstack([self.A, norms[:, None]])
        A_eq = np.hstack([self.E, np.zeros((p, 1))]) if p else None
        bounds = [(None, None)] * self.n + [(0.0, 1e3)]
        res = linprog(
            c, A_ub=A_ub, b_ub=self.b, A_eq=A_eq,
            b_eq=self.d if p else None, bounds=bounds, method="highs",
        )
        if res.status == 2 or res.x is None:
            raise ValueError("polyhedron is empty")
        if res.status not in (0, 3):
            raise InconclusiveError(f"feasibility solve failed (status {res.status})")
        return np.array(res.x[: self.n])

    # -- basic queries ---------------------------------------------------------

    @property
    def is_cone(self) -> bool:
        return bool(np.all(self.b == 0.0) and np.all(self.d == 0.0))

    def contains(self, x, tol=1e-9) -> bool:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise ValueError("point dimension mismatch")
        ok = True
        if self.A.shape[0]:
            ok = ok and bool(np.all(self.A @ x <= self.b + tol))
        if self.E.shape[0]:
            ok = ok and bool(np.max(np.abs(self.E @ x - self.d), initial=0.0) <= tol)
        return ok

    def contains_many(self, X, tol=1e-9) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        mask = np.ones(X.shape[0], dtype=bool)
        if self.A.shape[0]:
            mask &= np.all(X @ self.A.T <= self.b[None, :] + tol, axis=1)
        if self.E.shape[0]:
            mask &= np.all(np.abs(X @ self.E.T - self.d[None, :]) <= tol, axis=1)
        return mask

    def recession_cone(self) -> "Polyhedron":
        """{u : Au <= 0, Eu = 0}; for a cone this is the same set."""
        return Polyhedron(
            self.n, self.A, np.zeros(self.A.shape[0]), self.E, np.zeros(self.E.shape[0])
        )

    def dual_cone_membership(self, y, tol=1e-8) -> bool:
        """Is y in the dual cone of this (cone-shaped) set?

        Via Farkas, y belongs to the dual of {Ax <= 0, Ex = 0} exactly when
        y = -A^T lam - E^T mu with lam >= 0, tested with nonnegative least
        squares on the residual ||y + A^T lam + E^T mu||.
        """
        if not self.is_cone:
            raise ValueError("dual cone membership requires a cone")
        y = np.asarray(y, dtype=float)
        blocks = []
        if self.A.shape[0]:
            blocks.append(self.A.T)
        if self.E.shape[0]:
            blocks.append(self.E.T)
            blocks.append(-self.E.T)
        if not blocks:
            return bool(np.linalg.norm(y) <= tol)
        M = np.hstack(blocks)
        try:
            _, resid = nnls(M, -y, maxiter=50 * max(M.shape))
        except RuntimeError as exc:
            raise InconclusiveError(f"NNLS did not converge: {exc}") from exc
        return bool(resid <= tol)

    # -- active sets and projection --------------------------------------------

    def active_subset(self, x, act_tol=1e-10) -> ActiveSet:
        """Least-index maximal independent selection of tight inequality rows."""
        x = np.asarray(x, dtype=float)
        base = self.E.copy() if self.E.shape[0] else np.zeros((0, self.n))
        rank = np.linalg.matrix_rank(base, tol=_RANK_TOL) if base.size else 0
        chosen = []
        if self.A.shape[0]:
            resid = self.A @ x - self.b
            scale = 1.0 + np.abs(self.b) + np.abs(self.A @ x)
            for i in np.nonzero(np.abs(resid) <= act_tol * scale)[0]:
                cand = np.vstack([base, self.A[i]])
                r = np.linalg.matrix_rank(cand, tol=_RANK_TOL)
                if r > rank:
                    base, rank = cand, r
                    chosen.append(int(i))
                if rank == self.n:
                    break
        return ActiveSet(tuple(chosen))

    def active_normals(self, aset: ActiveSet) -> np.ndarray:
        rows = [self.E] if self.E.shape[0] else []
        if aset.ineq_indices:
            rows.append(self.A[list(aset.ineq_indices)])
        return np.vstack(rows) if rows else np.zeros((0, self.n))

    def project(self, z, act_tol=1e-10, max_iter=None):
        """Euclidean projection onto the set.

        Returns (point, ActiveSet).  The KKT residual of the returned point
        is at machine precision; failure to terminate raises RuntimeError
        (anti-cycling makes this unreachable at desk scale).
        """
        z = np.asarray(z, dtype=float)
        if z.shape != (self.n,):
            raise ValueError("point dimension mismatch")
        m = self.A.shape[0]
        if m == 0 and self.E.shape[0] == 0:
            return z.copy(), ActiveSet(())
        if self.contains(z, 1e-13):
            return z.copy(), self.active_subset(z, act_tol)

        x = self.anchor.copy()
        work: list[int] = sorted(self.active_subset(x, act_tol).ineq_indices)
        if max_iter is None:
            max_iter = 50 * (m + self.n + 5)

        for _ in range(max_iter):
            N = self.active_normals(ActiveSet(tuple(work)))
            P = nullspace_projector(N)
            p = P @ (z - x)
            if np.linalg.norm(p) <= 1e-13 * (1.0 + np.linalg.norm(z)):
                # Multipliers for x - z + A_W^T lam + E^T mu = 0.
                if work:
                    M = np.vstack([self.A[work], self.E]).T if self.E.shape[0] \
                        else self.A[work].T
                    coef, *_ = np.linalg.lstsq(M, z - x, rcond=None)
                    lam = coef[: len(work)]
                    neg = [k for k, v in enumerate(lam) if v < -act_tol]
                    if neg:
                        drop = min(neg, key=lambda k: work[k])
                        work.pop(drop)
                        continue
                return x, self.active_subset(x, act_tol)
            # Longest feasible step along p before an inactive row blocks.
            alpha, blocking = 1.0, None
            if m:
                Ap = self.A @ p
                slack = self.b - self.A @ x
                for i in range(m):
                    if i in work or Ap[i] <= 1e-13:
                        continue
                    step = max(slack[i], 0.0) / Ap[i]
                    if step < alpha - 1e-15:
                        alpha, blocking = step, i
            x = x + alpha * p
            if blocking is not None:
                work = sorted(set(work) | {blocking})
        raise RuntimeError("active-set projection exceeded its iteration limit")

    # -- vertices, rays, sampling ----------------------------------------------

    def vertices(self, tol=1e-9) -> np.ndarray:
        """All vertices, enumerated from active-constraint intersections (n <= 3)."""
        if self.n > 3:
            return np.zeros((0, self.n))
        rows = np.vstack([self.E, self.A]) if self.A.size or self.E.size else np.zeros((0, self.n))
        rhs = np.concatenate([self.d, self.b])
        if rows.shape[0] < self.n:
            return np.zeros((0, self.n))
        found = []
        for idx in itertools.combinations(range(rows.shape[0]), self.n):
            S = rows[list(idx)]
            if np.linalg.matrix_rank(S, tol=_RANK_TOL) < self.n:
                continue
            v, res, *_ = np.linalg.lstsq(S, rhs[list(idx)], rcond=None)
            if np.linalg.norm(S @ v - rhs[list(idx)]) > 1e-9 * (1 + np.linalg.norm(v)):
                continue
            if self.contains(v, tol):
                found.append(v)
        if not found:
            return np.zeros((0, self.n))
        uniq = []
        for v in found:
            if all(np.linalg.norm(v - u) > 1e-8 for u in uniq):
                uniq.append(v)
        return np.array(sorted(uniq, key=tuple))

    def lineality_basis(self) -> np.ndarray:
        """Orthonormal basis (rows) of the lineality space of the recession cone."""
        rows = np.vstack([self.A, self.E]) if self.A.size or self.E.size else np.zeros((0, self.n))
        if rows.shape[0] == 0:
            return np.eye(self.n)
        U, S, Vt = np.linalg.svd(rows)
        r = int(np.sum(S > _RANK_TOL * max(S[0], 1.0)))
        return Vt[r:]

    def extreme_rays(self, tol=1e-10) -> np.ndarray:
        """Unit extreme rays of the recession cone (n <= 3), lineality excluded."""
        if self.n > 3:
            return np.zeros((0, self.n))
        A, E = self.A, self.E
        lin = self.lineality_basis()
        rays = []
        max_take = self.n - 1
        row_sets = [np.zeros((0, self.n))]
        if A.shape[0]:
            for k in range(1, max_take + 1):
                for idx in itertools.combinations(range(A.shape[0]), k):
                    row_sets.append(A[list(idx)])
        for S in row_sets:
            M = np.vstack([E, S]) if E.shape[0] or S.shape[0] else np.zeros((0, self.n))
            if M.shape[0] == 0:
                continue
            U, sv, Vt = np.linalg.svd(M)
            r = int(np.sum(sv > _RANK_TOL * max(sv[0], 1.0)))
            if r != self.n - 1:
                continue
            v = Vt[-1]
            for cand in (v, -v):
                if A.shape[0] and np.any(A @ cand > tol):
                    continue
                if E.shape[0] and np.max(np.abs(E @ cand)) > tol:
                    continue
                if lin.shape[0] and np.linalg.norm(cand - lin.T @ (lin @ cand)) < 1e-8:
                    continue  # direction lives in the lineality space
                cand = cand / np.linalg.norm(cand)
                if all(np.linalg.norm(cand - u) > 1e-8 for u in rays):
                    rays.append(cand)
        return np.array(sorted(rays, key=tuple)) if rays else np.zeros((0, self.n))

    def is_trivial_cone(self) -> bool:
        """True when the set is a cone equal to {0}."""
        if not self.is_cone:
            return False
        if self.n <= 3:
            return self.extreme_rays().shape[0] == 0 and self.lineality_basis().shape[0] == 0
        for i in range(self.n):
            for sign in (1.0, -1.0):
                c = np.zeros(self.n)
                c[i] = sign
                res = linprog(
                    c, A_ub=self.A if self.A.size else None,
                    b_ub=self.b if self.A.size else None,
                    A_eq=self.E if self.E.size else None,
                    b_eq=self.d if self.E.size else None,
                    bounds=[(-1.0, 1.0)] * self.n, method="highs",
                )
                if res.status == 0 and res.fun < -1e-9:
                    return False
        return True

    def sample(self, count, radius, seed=0) -> np.ndarray:
        """Deterministic feasible points: all vertices with norm <= radius
        (n <= 3), the anchor, 0 when feasible, then projected ball samples."""
        if count < 1:
            raise ValueError("count must be >= 1")
        if radius <= 0:
            raise ValueError("radius must be positive")
        rng = np.random.default_rng(seed)
        pts: list[np.ndarray] = []

        def push(q):
            q = np.asarray(q, dtype=float)
            if not self.contains(q, 1e-8):
                return
            if all(np.linalg.norm(q - u) > 1e-9 for u in pts):
                pts.append(q)

        for v in self.vertices():
            if np.linalg.norm(v) <= radius:
                push(v)
        push(self.anchor)
        if self.contains(np.zeros(self.n), 1e-12):
            push(np.zeros(self.n))
        attempts = 0
        while len(pts) < count and attempts < 30 * count:
            attempts += 1
            direction = rng.normal(size=self.n)
            nrm = np.linalg.norm(direction)
            if nrm == 0:
                continue
            scale = radius * rng.uniform() ** (1.0 / self.n)
            q, _ = self.project(direction / nrm * scale)
            if np.linalg.norm(q) <= radius * (1.0 + 1e-9):
                push(q)
        return np.array(pts)


def cone_unit_directions(C: Polyhedron, count=16, seed=0) -> np.ndarray:
    """Unit vectors in a cone: extreme rays, +/- lineality, random samples.

    Returns an empty array exactly when the cone is trivial.
    """
    if not C.is_cone:
        raise ValueError("direction sampling requires a cone")
    dirs: list[np.ndarray] = []

    def push(u):
        nrm = np.linalg.norm(u)
        if nrm < 1e-12:
            return
        u = u / nrm
        if C.contains(u, 1e-9) and all(np.linalg.norm(u - v) > 1e-8 for v in dirs):
            dirs.append(u)

    for r in C.extreme_rays():
        push(r)
    for l in C.lineality_basis():
        push(l)
        push(-l)
    rng = np.random.default_rng(seed)
    attempts = 0
    while len(dirs) < count and attempts < 40 * count:
        attempts += 1
        q, _ = C.project(rng.normal(size=C.n))
        push(q)
    return np.array(dirs) if dirs else np.zeros((0, C.n))

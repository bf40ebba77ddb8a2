"""Weakly homogeneous maps f = h + r on R^n.

A map is stored as an explicit sum of a positively homogeneous polynomial
part h of degree ``gamma`` (one monomial list per component) and a remainder
made of lower-degree monomials plus radical terms ``c * (a.x + b)^(1/k)``.
The remainder is stored, never recomputed by subtraction, so f = h + r holds
by construction.  Radicals are evaluated through an even extension so that
the map is defined and continuous on all of R^n: even roots use |u|^(1/k),
odd roots use sign(u) * |u|^(1/k).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Monomial",
    "RadicalTerm",
    "WeaklyHomogeneousMap",
    "WeakHomogeneityReport",
    "homotopy_deformation",
    "verify_weak_homogeneity",
]

_ALLOWED_ROOTS = (2, 3, 4)


@dataclass(frozen=True)
class Monomial:
    """coefficient * prod_i x_i**exponents[i]"""

    coefficient: float
    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        if any(e < 0 for e in self.exponents):
            raise ValueError("monomial exponents must be nonnegative")

    @property
    def degree(self) -> int:
        return sum(self.exponents)


@dataclass(frozen=True)
class RadicalTerm:
    """coefficient * (a.x + b)^(1/root_index), even-extended."""

    coefficient: float
    root_index: int
    a: tuple[float, ...]
    b: float

    def __post_init__(self):
        if self.root_index not in _ALLOWED_ROOTS:
            raise ValueError(f"root_index must be one of {_ALLOWED_ROOTS}")
        object.__setattr__(self, "a", tuple(float(v) for v in self.a))

    def inner_values(self, X: np.ndarray) -> np.ndarray:
        return X @ np.asarray(self.a) + self.b

    def evaluate(self, X: np.ndarray) -> np.ndarray:
        u = self.inner_values(X)
        mag = np.abs(u) ** (1.0 / self.root_index)
        if self.root_index % 2 == 1:
            mag = mag * np.sign(u)
        return self.coefficient * mag

    def gradient(self, X: np.ndarray, kink_eps: float = 0.0) -> np.ndarray:
        """d/dx of the even-extended radical; rows for each point in X."""
        u = self.inner_values(X)
        k = self.root_index
        safe = np.maximum(np.abs(u), max(kink_eps, 1e-300))
        scale = self.coefficient / k * safe ** (1.0 / k - 1.0)
        if k % 2 == 0:
            scale = scale * np.sign(u)
        return scale[:, None] * np.asarray(self.a)[None, :]


class _PolyGroup:
    """Vectorised evaluation of a list of monomials in n variables."""

    def __init__(self, monomials, n):
        self.n = n
        self.coeffs = np.array([m.coefficient for m in monomials], dtype=float)
        if monomials:
            self.exps = np.array([m.exponents for m in monomials], dtype=float)
        else:
            self.exps = np.zeros((0, n))

    def evaluate(self, X: np.ndarray) -> np.ndarray:
        if self.coeffs.size == 0:
            return np.zeros(X.shape[0])
        powers = X[:, None, :] ** self.exps[None, :, :]
        return powers.prod(axis=2) @ self.coeffs

    def derivative(self, j):
        """Monomial group for the partial derivative with respect to x_j."""
        coeffs, exps = [], []
        for c, e in zip(self.coeffs, self.exps):
            if e[j] >= 1:
                d = e.copy()
                d[j] -= 1
                coeffs.append(c * e[j])
                exps.append(d)
        g = _PolyGroup([], self.n)
        g.coeffs = np.array(coeffs, dtype=float)
        g.exps = np.array(exps, dtype=float) if exps else np.zeros((0, self.n))
        return g


def _as_matrix(x, n):
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    if single:
        x = x[None, :]
    if x.shape[1] != n:
        raise ValueError(f"expected points of dimension {n}, got {x.shape[1]}")
    return x, single


class WeaklyHomogeneousMap:
    """Map f = h + r with h positively homogeneous of integer degree gamma >= 1.

    Parameters
    ----------
    n : ambient dimension (map goes R^n -> R^n).
    leading : per-component sequences of Monomial, all of total degree gamma.
    remainder_poly : per-component Monomial lists of total degree < gamma.
    remainder_radical : per-component RadicalTerm lists.
    gamma : homogeneity degree; inferred as the maximum leading degree when
        omitted, after which every leading monomial must agree.
    """

    def __init__(self, n, leading, remainder_poly=None, remainder_radical=None, gamma=None):
        self.n = int(n)
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        self.leading = tuple(tuple(comp) for comp in leading)
        self.remainder_poly = tuple(
            tuple(comp) for comp in (remainder_poly or [[] for _ in range(self.n)])
        )
        self.remainder_radical = tuple(
            tuple(comp) for comp in (remainder_radical or [[] for _ in range(self.n)])
        )
        for name, groups in (
            ("leading", self.leading),
            ("remainder_poly", self.remainder_poly),
            ("remainder_radical", self.remainder_radical),
        ):
            if len(groups) != self.n:
                raise ValueError(f"{name} must have one entry per component ({self.n})")

        degrees = [m.degree for comp in self.leading for m in comp]
        if gamma is None:
            if not degrees:
                raise ValueError("cannot infer gamma from an empty leading part")
            gamma = max(degrees)
        self.gamma = int(gamma)
        if self.gamma < 1:
            raise ValueError("gamma must be a positive integer")
        for i, comp in enumerate(self.leading):
            for m in comp:
                if len(m.exponents) != self.n:
                    raise ValueError(f"leading[{i}]: exponent length != {self.n}")
                if m.degree != self.gamma:
                    raise ValueError(
                        f"leading[{i}] contains a monomial of degree {m.degree}, "
                        f"expected {self.gamma}"
                    )
        for i, comp in enumerate(self.remainder_poly):
            for m in comp:
                if len(m.exponents) != self.n:
                    raise ValueError(f"remainder_poly[{i}]: exponent length != {self.n}")
                if m.degree >= self.gamma:
                    raise ValueError(
                        f"remainder_poly[{i}] contains a monomial of degree {m.degree}; "
                        f"degrees must stay below gamma = {self.gamma}"
                    )
        for i, comp in enumerate(self.remainder_radical):
            for t in comp:
                if len(t.a) != self.n:
                    raise ValueError(f"remainder_radical[{i}]: inner vector length != {self.n}")

        self._lead_groups = [_PolyGroup(comp, self.n) for comp in self.leading]
        self._rem_groups = [_PolyGroup(comp, self.n) for comp in self.remainder_poly]
        self._lead_jac = None
        self._rem_jac = None

    # -- evaluation --------------------------------------------------------

    def eval_leading_many(self, X: np.ndarray) -> np.ndarray:
        X, _ = _as_matrix(X, self.n)
        return np.stack([g.evaluate(X) for g in self._lead_groups], axis=1)

    def eval_remainder_many(self, X: np.ndarray) -> np.ndarray:
        X, _ = _as_matrix(X, self.n)
        out = np.stack([g.evaluate(X) for g in self._rem_groups], axis=1)
        for i, terms in enumerate(self.remainder_radical):
            for t in terms:
                out[:, i] += t.evaluate(X)
        return out

    def eval_map_many(self, X: np.ndarray) -> np.ndarray:
        return self.eval_leading_many(X) + self.eval_remainder_many(X)

    def eval_leading(self, x) -> np.ndarray:
        X, _ = _as_matrix(x, self.n)
        return self.eval_leading_many(X)[0]

    def eval_remainder(self, x) -> np.ndarray:
        X, _ = _as_matrix(x, self.n)
        return self.eval_remainder_many(X)[0]

    def eval_map(self, x) -> np.ndarray:
        """f(x) = h(x) + r(x), the continuous extension on all of R^n."""
        return self.eval_leading(x) + self.eval_remainder(x)

    # -- derivatives -------------------------------------------------------

    def _jac_groups(self):
        if self._lead_jac is None:
            self._lead_jac = [
                [g.derivative(j) for j in range(self.n)] for g in self._lead_groups
            ]
            self._rem_jac = [
                [g.derivative(j) for j in range(self.n)] for g in self._rem_groups
            ]
        return self._lead_jac, self._rem_jac

    def jacobian_leading_many(self, X: np.ndarray) -> np.ndarray:
        X, _ = _as_matrix(X, self.n)
        lead, _ = self._jac_groups()
        J = np.zeros((X.shape[0], self.n, self.n))
        for i in range(self.n):
            for j in range(self.n):
                J[:, i, j] = lead[i][j].evaluate(X)
        return J

    def jacobian_remainder_many(self, X: np.ndarray, kink_eps: float = 0.0) -> np.ndarray:
        X, _ = _as_matrix(X, self.n)
        _, rem = self._jac_groups()
        J = np.zeros((X.shape[0], self.n, self.n))
        for i in range(self.n):
            for j in range(self.n):
                J[:, i, j] = rem[i][j].evaluate(X)
            for t in self.remainder_radical[i]:
                J[:, i, :] += t.gradient(X, kink_eps)
        return J

    def jacobian(self, x, kink_eps: float = 0.0) -> np.ndarray:
        X, _ = _as_matrix(x, self.n)
        return (
            self.jacobian_leading_many(X)[0]
            + self.jacobian_remainder_many(X, kink_eps)[0]
        )

    def jacobian_inf_norms(self, X: np.ndarray, kink_eps: float = 1e-9) -> np.ndarray:
        """Row-sum norm of the Jacobian at every point of X."""
        J = self.jacobian_leading_many(X) + self.jacobian_remainder_many(X, kink_eps)
        return np.abs(J).sum(axis=2).max(axis=1)

    def kink_distance(self, x) -> float:
        """Smallest |a.x + b| over all radical terms (inf when none)."""
        X, _ = _as_matrix(x, self.n)
        dist = math.inf
        for terms in self.remainder_radical:
            for t in terms:
                dist = min(dist, float(np.abs(t.inner_values(X))[0]))
        return dist

    # -- derived maps ------------------------------------------------------

    def leading_map(self) -> "WeaklyHomogeneousMap":
        """The recession map h alone."""
        return WeaklyHomogeneousMap(self.n, self.leading, gamma=self.gamma)

    def has_radicals(self) -> bool:
        return any(len(c) > 0 for c in self.remainder_radical)

    def with_constant_offset(self, delta) -> "WeaklyHomogeneousMap":
        """Map x -> f(x) + delta (delta absorbed into the polynomial remainder)."""
        delta = np.asarray(delta, dtype=float)
        if delta.shape != (self.n,):
            raise ValueError("offset dimension mismatch")
        zero = tuple(0 for _ in range(self.n))
        rem = [list(comp) for comp in self.remainder_poly]
        for i, v in enumerate(delta):
            if v != 0.0:
                rem[i] = rem[i] + [Monomial(float(v), zero)]
        return WeaklyHomogeneousMap(
            self.n, self.leading, rem, self.remainder_radical, gamma=self.gamma
        )


def homotopy_deformation(m: WeaklyHomogeneousMap, t: float) -> WeaklyHomogeneousMap:
    """The deformed map h + t*identity + (1-t)*r as a WeaklyHomogeneousMap."""
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must lie in [0, 1]")
    ident = [Monomial(t, tuple(1 if j == i else 0 for j in range(m.n))) for i in range(m.n)]
    if m.gamma == 1:
        leading = [list(comp) + ([ident[i]] if t != 0.0 else []) for i, comp in enumerate(m.leading)]
        rem_poly = [[Monomial((1.0 - t) * mm.coefficient, mm.exponents) for mm in comp]
                    for comp in m.remainder_poly]
    else:
        leading = [list(comp) for comp in m.leading]
        rem_poly = [
            ([ident[i]] if t != 0.0 else [])
            + [Monomial((1.0 - t) * mm.coefficient, mm.exponents) for mm in comp]
            for i, comp in enumerate(m.remainder_poly)
        ]
    rem_rad = [
        [RadicalTerm((1.0 - t) * r.coefficient, r.root_index, r.a, r.b) for r in comp]
        for comp in m.remainder_radical
    ]
    return WeaklyHomogeneousMap(m.n, leading, rem_poly, rem_rad, gamma=m.gamma)


@dataclass
class WeakHomogeneityReport:
    """Per-direction decay of ||r(R d)|| / R^gamma along growing radii."""

    directions: list = field(default_factory=list)
    radii: list = field(default_factory=list)
    ratios: list = field(default_factory=list)  # one list per direction
    per_direction_pass: list = field(default_factory=list)
    passed: bool = False


def verify_weak_homogeneity(m, directions, radii, tol=1e-4) -> WeakHomogeneityReport:
    """Check that the remainder is negligible against ||x||^gamma along rays.

    For each unit direction d the sequence ||r(R d)|| / R^gamma is tabulated
    over the given radii; the direction passes when the final ratio is below
    tol and the tail of the sequence is non-increasing.
    """
    directions = [np.asarray(d, dtype=float) for d in directions]
    if not directions:
        raise ValueError("direction set must be nonempty")
    radii = [float(R) for R in radii]
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be strictly increasing")
    if radii[-1] < 1e4:
        raise ValueError("largest radius must be at least 1e4")

    report = WeakHomogeneityReport(directions=directions, radii=radii)
    for d in directions:
        nd = np.linalg.norm(d)
        if nd == 0:
            raise ValueError("directions must be nonzero")
        d = d / nd
        ratios = [
            float(np.linalg.norm(m.eval_remainder(R * d)) / R**m.gamma) for R in radii
        ]
        tail_ok = all(
            ratios[i + 1] <= ratios[i] * (1.0 + 1e-9) + 1e-300
            for i in range(max(0, len(ratios) - 3), len(ratios) - 1)
        )
        ok = ratios[-1] < tol and tail_ok
        report.ratios.append(ratios)
        report.per_direction_pass.append(ok)
    report.passed = all(report.per_direction_pass)
    return report

"""Homotopy continuation with semismooth Newton inner solves.

The parameter path starts at t = 1, where the deformed problem with inner
map h + identity is solvable whenever h is copositive on the recession
cone, and follows t down to 0 with warm starts.  A path whose iterates blow
up before t reaches 0 is returned as a DIVERGED trace: a sequence of
certified zeros of the homotopy residual with strictly increasing norms,
the checkable form of the alternative to solvability.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import NamedTuple

import numpy as np

from .checkers import CheckerConfig, check_z_property
from .geometry import Polyhedron, cone_unit_directions
from .maps import homotopy_deformation
from .residuals import ResidualConfig, _inner, _residual_and_jacobian, natural_residual

logger = logging.getLogger(__name__)

__all__ = [
    "SolveConfig",
    "SolveResult",
    "InnerResult",
    "EnumerationResult",
    "ConeEquationResult",
    "ZPropertyError",
    "newton_inner",
    "solve_homotopy",
    "solve_extragradient",
    "enumerate_solutions",
    "validate_solution",
    "solve_cone_equation",
    "default_t_schedule",
]

SOLVED = "SOLVED"
DIVERGED = "DIVERGED"
FAILED = "FAILED"


def default_t_schedule(steps=24, floor=1e-9):
    """Geometric descent from 1 with a short linear tail ending exactly at 0."""
    if steps < 7:
        raise ValueError("need at least 7 steps")
    geo = int(steps - 5)
    ratio = floor ** (1.0 / (geo - 1))
    ts = [ratio**k for k in range(geo)]
    ts.extend(np.linspace(ts[-1], 0.0, 6)[1:])
    ts[0], ts[-1] = 1.0, 0.0
    return tuple(ts)


@dataclass(frozen=True)
class SolveConfig:
    t_steps: int = 24
    t_floor: float = 1e-9
    newton_max_iter: int = 60
    armijo_slope: float = 1e-4
    backtrack: float = 0.5
    residual_tol: float = 1e-10
    divergence_norm: float = 1e8
    multistart_count: int = 20
    dedup_tol: float = 1e-6
    path_jump_bound: float = 1e3
    seed: int = 0
    residual_cfg: ResidualConfig = field(default_factory=ResidualConfig)
    t_schedule: tuple | None = None

    def schedule(self):
        ts = self.t_schedule or default_t_schedule(self.t_steps, self.t_floor)
        if ts[0] != 1.0 or ts[-1] != 0.0:
            raise ValueError("t schedule must run from exactly 1 to exactly 0")
        return ts


class InnerResult(NamedTuple):
    point: np.ndarray
    converged: bool
    iterations: int
    residual: float


@dataclass
class PathPoint:
    x: np.ndarray
    t: float
    residual: float

    def to_dict(self):
        return {"x": [float(v) for v in self.x], "t": self.t, "residual": self.residual}


@dataclass
class SolveResult:
    status: str
    points: list = field(default_factory=list)
    residuals: list = field(default_factory=list)
    trace: list = field(default_factory=list)  # PathPoint sequence
    reason: str | None = None

    def to_dict(self):
        return {
            "status": self.status,
            "points": [[float(v) for v in p] for p in self.points],
            "residuals": [float(r) for r in self.residuals],
            "trace": [p.to_dict() for p in self.trace],
            "reason": self.reason,
        }


def _merit_at(m, K, x, t):
    z = np.asarray(x, dtype=float)
    point, _ = K.project(z - _inner(m, z, t))
    r = z - point
    return 0.5 * float(r @ r), r


def newton_inner(m, K: Polyhedron, x0, t, cfg: SolveConfig | None = None) -> InnerResult:
    """Semismooth Newton with merit line search on the homotopy residual.

    Singular Jacobians fall back to a least-squares step; points near a
    radical kink use a damped fixed-point step instead of Newton.
    """
    cfg = cfg or SolveConfig()
    rcfg = cfg.residual_cfg
    x = np.asarray(x0, dtype=float).copy()
    best_x, best_rn = x.copy(), np.inf
    n = K.n
    for it in range(cfg.newton_max_iter):
        r, M, at_kink = _residual_and_jacobian(m, K, x, t, rcfg)
        rn = float(np.linalg.norm(r))
        if rn < best_rn:
            best_x, best_rn = x.copy(), rn
        if rn <= cfg.residual_tol:
            return InnerResult(x, True, it, rn)
        if np.linalg.norm(x) > 100.0 * cfg.divergence_norm:
            break
        if at_kink:
            step = -r
        else:
            try:
                cond = np.linalg.cond(M)
                if not np.isfinite(cond) or cond > 1e14:
                    raise np.linalg.LinAlgError
                step = np.linalg.solve(M, -r)
            except np.linalg.LinAlgError:
                step, *_ = np.linalg.lstsq(M, -r, rcond=None)
        phi0 = 0.5 * rn * rn
        alpha, accepted = 1.0, False
        for _ in range(30):
            phi, _ = _merit_at(m, K, x + alpha * step, t)
            if phi <= (1.0 - 2.0 * cfg.armijo_slope * alpha) * phi0:
                x = x + alpha * step
                accepted = True
                break
            alpha *= cfg.backtrack
        if not accepted:
            # damped fixed-point fallback x <- x - alpha * H(x, t)
            alpha = 1.0
            for _ in range(30):
                phi, _ = _merit_at(m, K, x - alpha * r, t)
                if phi < phi0:
                    x = x - alpha * r
                    accepted = True
                    break
                alpha *= cfg.backtrack
        if not accepted:
            return InnerResult(best_x, False, it + 1, best_rn)
    _, r = _merit_at(m, K, best_x, t)
    return InnerResult(best_x, False, cfg.newton_max_iter, float(np.linalg.norm(r)))


def _diverged_trace(path):
    """Strictly increasing-norm tail of certified path points with 0 < t < 1."""
    tail = []
    for p in path:
        if not 0.0 < p.t < 1.0:
            continue
        while tail and np.linalg.norm(tail[-1].x) >= np.linalg.norm(p.x):
            tail.pop()
        tail.append(p)
    return tail


def solve_homotopy(m, K: Polyhedron, cfg: SolveConfig | None = None) -> SolveResult:
    """Path-follow the homotopy from the solvable anchor at t = 1 down to t = 0."""
    cfg = cfg or SolveConfig()
    if m.gamma < 1:
        raise ValueError("homotopy requires positive degree")
    schedule = cfg.schedule()
    x = K.project(np.zeros(K.n))[0]
    path: list[PathPoint] = []
    failures = 0
    jump_logs = 0
    prev = None
    for t in schedule:
        res = newton_inner(m, K, x, t, cfg)
        if not res.converged:
            retry = newton_inner(m, K, K.anchor, t, cfg)
            if not retry.converged and np.linalg.norm(x) <= 1e3:
                # extragradient rescue only at moderate scale; it cannot help
                # once the path norm has exploded
                eg = solve_extragradient(m, K, x, cfg, t=t, max_iter=500)
                if eg.status == SOLVED:
                    retry = InnerResult(eg.points[0], True, 0, eg.residuals[0])
            if retry.converged:
                res = retry
        if not res.converged:
            failures += 1
            if failures >= 3:
                trace = _diverged_trace(path)
                if trace and np.linalg.norm(trace[-1].x) > cfg.divergence_norm:
                    return SolveResult(
                        DIVERGED, trace=trace,
                        reason="certified path points exceeded the divergence "
                        "threshold before the inner solves stalled",
                    )
                return SolveResult(
                    FAILED, trace=path,
                    reason=f"inner solves failed at {failures} consecutive parameters "
                    f"(last t = {t:.3g}, best residual {res.residual:.3g})",
                )
            continue
        failures = 0
        if prev is not None:
            jump = float(np.linalg.norm(res.point - prev))
            if jump > cfg.path_jump_bound:
                jump_logs += 1
                if jump_logs <= 3:
                    logger.warning("path jump %.3g at t=%.3g exceeds bound %.3g",
                                   jump, t, cfg.path_jump_bound)
        prev = res.point
        path.append(PathPoint(res.point.copy(), float(t), res.residual))
        x = res.point.copy()
        if np.linalg.norm(x) > cfg.divergence_norm:
            trace = _diverged_trace(path)
            return SolveResult(
                DIVERGED, trace=trace,
                reason="path norm exceeded the divergence threshold before t reached 0",
            )
    if validate_solution(m, K, x, 1e-8, seed=cfg.seed):
        rn = float(np.linalg.norm(natural_residual(m, K, x)))
        return SolveResult(SOLVED, points=[x], residuals=[rn], trace=path)
    return SolveResult(
        FAILED, trace=path,
        reason="endpoint of the path failed solution validation",
    )


def solve_extragradient(m, K: Polyhedron, x0, cfg: SolveConfig | None = None,
                        t=0.0, max_iter=2000) -> SolveResult:
    """Projection-based extragradient fallback with adaptive step size."""
    cfg = cfg or SolveConfig()
    x = K.project(np.asarray(x0, dtype=float))[0]
    tau = 0.5
    for _ in range(max_iter):
        fx = _inner(m, x, t)
        r = x - K.project(x - fx)[0]
        rn = float(np.linalg.norm(r))
        if rn <= max(cfg.residual_tol, 1e-12):
            return SolveResult(SOLVED, points=[x], residuals=[rn])
        y = K.project(x - tau * fx)[0]
        fy = _inner(m, y, t)
        diff = float(np.linalg.norm(fx - fy))
        move = float(np.linalg.norm(x - y))
        if diff * tau > 0.9 * move and move > 0:
            tau *= 0.7
            if tau < 1e-14:
                return SolveResult(FAILED, reason="extragradient step size underflow")
            continue
        x = K.project(x - tau * fy)[0]
        tau = min(tau * 1.05, 1e3)
        if np.linalg.norm(x) > 10.0 * cfg.divergence_norm:
            return SolveResult(FAILED, reason="extragradient iterates diverged")
    rn = float(np.linalg.norm(natural_residual(m, K, x))) if t == 0.0 else float("nan")
    if t == 0.0 and rn <= 1e-8 and validate_solution(m, K, x, 1e-8, seed=cfg.seed):
        return SolveResult(SOLVED, points=[x], residuals=[rn])
    return SolveResult(FAILED, reason="extragradient exhausted its iteration budget")


def validate_solution(m, K: Polyhedron, x, tol=1e-8, seed=0) -> bool:
    """Membership, vanishing natural residual, and first-order test points."""
    x = np.asarray(x, dtype=float)
    if not K.contains(x, tol):
        return False
    if np.linalg.norm(natural_residual(m, K, x)) > tol:
        return False
    fx = m.eval_map(x)
    radius = max(2.0, 2.0 * float(np.linalg.norm(x)))
    ys = [y for y in K.sample(16, radius, seed=seed)]
    for v in K.vertices():
        ys.append(v)
    for y in ys:
        gap = float(fx @ (y - x))
        if gap < -tol * (1.0 + np.linalg.norm(y - x)):
            return False
    rec = K.recession_cone()
    for u in cone_unit_directions(rec, 8, seed):
        if float(fx @ u) < -tol:
            return False
    return True


@dataclass
class EnumerationResult:
    points: list = field(default_factory=list)
    bounding_box_diameter: float = 0.0
    homotopy_status: str = ""

    def as_array(self):
        return np.array(self.points) if self.points else np.zeros((0, 0))


def enumerate_solutions(m, K: Polyhedron, cfg: SolveConfig | None = None,
                        radius=5.0) -> EnumerationResult:
    """Multistart sweep for the solution set; empty output is legal."""
    cfg = cfg or SolveConfig()
    found: list[np.ndarray] = []
    # flat solutions (residual quadratic in the distance) need a residual far
    # below the dedup radius or distinct basins fail to merge
    tight = replace(cfg, residual_tol=max(1e-14, cfg.residual_tol * 1e-4))

    def push(p):
        pol = newton_inner(m, K, p, 0.0, tight)
        if pol.converged:
            p = pol.point
        if not validate_solution(m, K, p, 1e-8, seed=cfg.seed):
            return
        for q in found:
            if np.linalg.norm(q - p) <= cfg.dedup_tol:
                return
        found.append(np.asarray(p, dtype=float))

    hom = solve_homotopy(m, K, cfg)
    for p in hom.points:
        push(p)
    starts = K.sample(cfg.multistart_count, radius, seed=cfg.seed)
    for x0 in starts:
        res = newton_inner(m, K, x0, 0.0, cfg)
        if res.converged:
            push(res.point)
    found.sort(key=tuple)
    diameter = 0.0
    if found:
        arr = np.array(found)
        diameter = float(np.linalg.norm(arr.max(axis=0) - arr.min(axis=0)))
    return EnumerationResult(found, diameter, hom.status)


class ZPropertyError(RuntimeError):
    """The map is not a Z-map on the cone; carries the violating pair."""

    def __init__(self, verdict):
        self.verdict = verdict
        witness = verdict.witness
        dual = verdict.aux.get("dual_witness")
        super().__init__(
            f"Z-property violated at x = {witness} with dual witness y = {dual}: "
            f"<f(x), y> = {verdict.value:.6g} > 0"
        )


@dataclass
class ConeEquationResult:
    point: np.ndarray
    equation_residual: float
    z_verdict: object

    def to_dict(self):
        return {
            "point": [float(v) for v in self.point],
            "equation_residual": self.equation_residual,
            "z_property": self.z_verdict.to_dict(),
        }


def solve_cone_equation(m, C: Polyhedron, q, cfg: SolveConfig | None = None,
                        checker_cfg: CheckerConfig | None = None,
                        tol=1e-8) -> ConeEquationResult:
    """Solve f(x) = q over a cone through the complementarity reformulation.

    Requires q in the cone; refuses (raising ZPropertyError with the
    witness pair) when the complementary-pair test finds the map is not a
    Z-map, since the reformulation is then unjustified.
    """
    cfg = cfg or SolveConfig()
    checker_cfg = checker_cfg or CheckerConfig(seed=cfg.seed)
    if not C.is_cone:
        raise ValueError("cone equation front end requires a cone")
    q = np.asarray(q, dtype=float)
    if not C.contains(q, 1e-8):
        raise ValueError("q does not belong to the cone")
    z_verdict = check_z_property(m, C, checker_cfg)
    if z_verdict.status == "VIOLATED":
        raise ZPropertyError(z_verdict)
    shifted = m.with_constant_offset(-q)
    result = solve_homotopy(shifted, C, cfg)
    if result.status != SOLVED:
        best = None
        for x0 in C.sample(cfg.multistart_count, 5.0, seed=cfg.seed):
            res = newton_inner(shifted, C, x0, 0.0, cfg)
            if res.converged and validate_solution(shifted, C, res.point, 1e-8, cfg.seed):
                best = res.point
                break
        if best is None:
            raise RuntimeError(f"cone equation solve failed: {result.reason}")
        point = best
    else:
        point = result.points[0]
    eq_resid = float(np.linalg.norm(m.eval_map(point) - q))
    if eq_resid > tol:
        raise RuntimeError(
            f"complementarity point does not satisfy the equation: ||f(x)-q|| = {eq_resid:.3g}"
        )
    return ConeEquationResult(point, eq_resid, z_verdict)

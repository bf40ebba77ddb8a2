"""Natural-map and homotopy residuals, merit function, generalized Jacobian.

The homotopy residual at parameter t is the natural map of the deformed
problem with inner map h(x) + t*x + (1-t)*r(x); t = 0 recovers the natural
residual of the original map through the identical code path, and t = 1 is
the natural residual of the anchor problem h + identity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import Polyhedron, nullspace_projector

__all__ = [
    "ResidualConfig",
    "KinkError",
    "natural_residual",
    "homotopy_residual",
    "merit",
    "generalized_jacobian",
]


@dataclass(frozen=True)
class ResidualConfig:
    """fd_step doubles as the nonsmoothness radius around radical kinks."""

    fd_step: float = 1e-6
    act_tol: float = 1e-10

    def __post_init__(self):
        if self.fd_step <= 0 or self.act_tol <= 0:
            raise ValueError("fd_step and act_tol must be positive")


class KinkError(RuntimeError):
    """Evaluation point sits within fd_step of a radical kink."""


def _inner(m, x, t):
    return m.eval_leading(x) + t * x + (1.0 - t) * m.eval_remainder(x)


def homotopy_residual(m, K: Polyhedron, x, t) -> np.ndarray:
    """x - Pi_K(x - (h(x) + t*x + (1-t)*r(x)))."""
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must lie in [0, 1]")
    x = np.asarray(x, dtype=float)
    point, _ = K.project(x - _inner(m, x, t))
    return x - point


def natural_residual(m, K: Polyhedron, x) -> np.ndarray:
    """x - Pi_K(x - f(x)); zero exactly at the solutions of the VI."""
    return homotopy_residual(m, K, x, 0.0)


def merit(m, K: Polyhedron, x) -> float:
    """0.5 * ||natural residual||^2."""
    r = natural_residual(m, K, x)
    return 0.5 * float(r @ r)


def _residual_and_jacobian(m, K, x, t, cfg: ResidualConfig):
    """One projection shared between the residual and its Jacobian element.

    Returns (residual, matrix, at_kink).  The matrix is I - P_W (I - J)
    where P_W projects onto the null space of the active constraint normals
    at the projection point and J is the Jacobian of the deformed inner map.
    """
    x = np.asarray(x, dtype=float)
    point, aset = K.project(x - _inner(m, x, t), act_tol=cfg.act_tol)
    r = x - point
    at_kink = m.kink_distance(x) < cfg.fd_step
    J = (
        m.jacobian_leading_many(x[None, :])[0]
        + t * np.eye(m.n)
        + (1.0 - t) * m.jacobian_remainder_many(x[None, :], cfg.fd_step)[0]
    )
    P = nullspace_projector(K.active_normals(aset))
    M = np.eye(m.n) - P @ (np.eye(m.n) - J)
    return r, M, at_kink


def generalized_jacobian(m, K: Polyhedron, x, t, cfg: ResidualConfig | None = None) -> np.ndarray:
    """An element of the B-subdifferential of the homotopy residual at x.

    Raises KinkError when x lies within cfg.fd_step of a radical kink, where
    the map itself is nonsmooth; callers perturb or fall back.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must lie in [0, 1]")
    cfg = cfg or ResidualConfig()
    _, M, at_kink = _residual_and_jacobian(m, K, x, t, cfg)
    if at_kink:
        raise KinkError("evaluation point is within fd_step of a radical kink")
    return M

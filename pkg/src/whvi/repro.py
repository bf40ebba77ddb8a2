"""Reproduction of the printed quantities of the bundled reference instances.

Each row recomputes one quantity and compares against its closed form.
Rows are PASS/FAIL except the documented ex4_5 norm-chain discrepancy,
which is always reported as FLAG: on that instance the remainder norm is
2|x1| while the natural-map norm is sqrt(2)|x1|, so the printed chain of
equalities cannot hold and the suite reports both computed values instead
of asserting it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import Polyhedron
from .instances import load_shipped_instance
from .oracle import oracle_vi_solutions
from .residuals import natural_residual
from .solvers import SolveConfig, enumerate_solutions

__all__ = ["ReproRow", "ReproReport", "run_repro"]

PASS, FLAG, FAIL = "PASS", "FLAG", "FAIL"


@dataclass
class ReproRow:
    example: str
    quantity: str
    status: str
    computed: str
    expected: str
    detail: str = ""

    def to_dict(self):
        return {
            "example": self.example, "quantity": self.quantity, "status": self.status,
            "computed": self.computed, "expected": self.expected, "detail": self.detail,
        }


@dataclass
class ReproReport:
    rows: list = field(default_factory=list)
    seed: int = 0

    @property
    def passed(self) -> bool:
        return all(r.status != FAIL for r in self.rows)

    def to_dict(self):
        return {"rows": [r.to_dict() for r in self.rows], "passed": self.passed, "seed": self.seed}


def _close(a, b, tol=1e-8):
    return abs(a - b) <= tol * (1.0 + abs(b))


def _vec_close(a, b, tol=1e-8):
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b)))) <= tol * (
        1.0 + float(np.max(np.abs(b)))
    )


def _same_cone(C1: Polyhedron, C2: Polyhedron, seed=0) -> bool:
    for X, other in ((C1.sample(20, 2.0, seed), C2), (C2.sample(20, 2.0, seed), C1)):
        for x in X:
            if not other.contains(x, 1e-8):
                return False
    for rays, other in ((C1.extreme_rays(), C2), (C2.extreme_rays(), C1)):
        for r in rays:
            if not other.contains(r, 1e-9):
                return False
    return True


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def _rows_ex4_2(seed):
    inst = load_shipped_instance("ex4_2")
    m, K = inst.map, inst.set
    rows = []

    expected_cone = Polyhedron(2, A=[[-1.0, 0.0]], b=[0.0], E=[[1.0, -1.0]], d=[0.0])
    ok = _same_cone(K.recession_cone(), expected_cone, seed)
    rows.append(ReproRow("ex4_2", "recession cone", _status(ok),
                         "{x : x1 = x2 >= 0} (sampled equivalence)", "{x : x1 = x2 >= 0}"))

    worst = 0.0
    for x in K.sample(10, 6.0, seed=seed):
        a = float(np.linalg.norm(m.eval_map(x) - m.eval_leading(x)))
        b = float(np.linalg.norm(natural_residual(m, K, x)))
        c = float(np.linalg.norm(x))
        worst = max(worst, abs(a - b), abs(b - c))
    rows.append(ReproRow(
        "ex4_2", "norm chain ||f-h|| = ||F_nat|| = ||x|| at 10 points",
        _status(worst <= 1e-8 * 7.0), f"max deviation {worst:.3g}", "identities to 1e-8",
    ))
    return rows


def _rows_ex4_3(seed):
    inst = load_shipped_instance("ex4_3")
    m, K = inst.map, inst.set
    h = m.leading_map()
    rows = []

    rng = np.random.default_rng(seed)
    pts = list(K.sample(5, 5.0, seed=seed)) + [rng.normal(size=2) * 2 for _ in range(5)]
    ok = all(
        _close(float(h.eval_map(x) @ x), (x[0] + x[1]) ** 3) for x in pts
    )
    rows.append(ReproRow("ex4_3", "<h(x), x> = (x1+x2)^3 at 10 points", _status(ok),
                         "matches to 1e-8", "(x1+x2)^3"))

    cfg = SolveConfig(seed=seed, multistart_count=12)
    enum = enumerate_solutions(h, K.recession_cone(), cfg)
    # the recession map vanishes cubically at 0, so both refinement rounds
    # are needed to localize the oracle cluster
    orc = oracle_vi_solutions(h, K.recession_cone(), pitch=2e-2, radius=3.0, refine_rounds=2)
    enum_zero = len(enum.points) == 1 and np.linalg.norm(enum.points[0]) <= 1e-6
    orc_zero = all(np.linalg.norm(p) <= 4e-2 for p in orc.points) and orc.points
    rows.append(ReproRow(
        "ex4_3", "recession problem solved only by 0", _status(bool(enum_zero and orc_zero)),
        f"multistart: {len(enum.points)} point(s); oracle reps within 4e-2 of 0",
        "{0}",
    ))
    return rows


def _rows_ex4_5(seed):
    inst = load_shipped_instance("ex4_5")
    m, K = inst.map, inst.set
    xref = inst.xref
    rows = []

    ok = True
    for x in K.sample(10, 6.0, seed=seed):
        proj, _ = K.project(x - m.eval_map(x))
        ok = ok and _vec_close(proj, np.array([2 * x[0], 2 * x[0]]))
    rows.append(ReproRow("ex4_5", "Pi_K(x - f(x)) = (2 x1, 2 x1) at 10 points",
                         _status(ok), "matches to 1e-8", "(2 x1, 2 x1)"))

    d = np.array([-1.0, -1.0]) / np.sqrt(2.0)
    ok = True
    for R in (10.0, 100.0, 1e3, 1e4):
        x = xref + R * d
        s = abs(x[0])
        computed = float(m.eval_map(x) @ (x - xref))
        expected = -2.0 * s * s - 2.0 * s * xref[0]
        ok = ok and _close(computed, expected)
    rows.append(ReproRow(
        "ex4_5", "<f(x), x - xref> = -(2 s^2 + 2 s xref1) along the ray", _status(ok),
        "matches to 1e-8", "-2 s^2 - 2 s xref1",
        detail="ray x = xref - R(1,1)/sqrt(2), parameter s = |x1|; on the opposite "
        "ray the cross term enters with the opposite sign",
    ))

    x = np.array([1.0, 1.0])
    a = float(np.linalg.norm(m.eval_map(x) - m.eval_leading(x)))
    b = float(np.linalg.norm(natural_residual(m, K, x)))
    c = float(np.linalg.norm(x))
    rows.append(ReproRow(
        "ex4_5", "norm chain ||f-h|| vs ||F_nat|| vs ||x|| at (1,1)", FLAG,
        f"||f-h|| = {a:.6f}, ||F_nat|| = {b:.6f}, ||x|| = {c:.6f}",
        "chain of equalities as printed",
        detail="documented discrepancy: on this set ||f-h|| = 2|x1| while "
        "||F_nat|| = ||x|| = sqrt(2)|x1|; the claimed first equality fails, so this "
        "row flags the computed values instead of asserting them",
    ))
    return rows


def _rows_ex4_1(seed):
    rows = []
    x = np.array([0.25, 0.0])
    for name in ("ex4_1a", "ex4_1b"):
        inst = load_shipped_instance(name)
        m = inst.map
        val = float(x @ (m.eval_map(x) - m.eval_map(np.zeros(2))))
        detail = ""
        if name == "ex4_1b":
            detail = f"value {val:.10f} equals 1/64 - 1/8 = {1 / 64 - 1 / 8:.10f}"
        rows.append(ReproRow(
            name, "<x, f(x) - f(0)> < 0 at x = (1/4, 0)", _status(val < -1e-12),
            f"{val:.8f}", "negative (sign asserted only)", detail=detail,
        ))

    inst = load_shipped_instance("ex4_1a")
    m, K = inst.map, inst.set
    d = np.array([1.0, -1.0]) / np.sqrt(2.0)
    ratios = []
    for R in (1e2, 1e3, 1e4, 1e5):
        x = R * d
        ratios.append(
            float(np.linalg.norm(natural_residual(m, K, x))
                  / np.linalg.norm(m.eval_map(x) - m.eval_leading(x)))
        )
    ok = all(b > a for a, b in zip(ratios, ratios[1:])) and ratios[-1] > 1e2
    rows.append(ReproRow(
        "ex4_1a", "||F_nat|| / ||f - h|| grows without bound along rays", _status(ok),
        f"ratios {['%.3g' % r for r in ratios]}", "increasing to infinity",
    ))
    return rows


def _rows_recession_extras(seed):
    rows = []
    inst = load_shipped_instance("ex4_4")
    expected = Polyhedron.nonneg_orthant(2)
    ok = _same_cone(inst.set.recession_cone(), expected, seed)
    rows.append(ReproRow("ex4_4", "recession cone", _status(ok),
                         "nonnegative orthant (sampled equivalence)", "R^2_+"))
    rows.append(ReproRow(
        "ex4_4", "0 outside the set", _status(not inst.set.contains(np.zeros(2), 1e-12)),
        "0 not in the set", "0 not in the set",
    ))

    inst = load_shipped_instance("ex4_2_inf")
    enum = enumerate_solutions(inst.map, inst.set, SolveConfig(seed=seed, multistart_count=12))
    on_ray = [p for p in enum.points if abs(p[0] - p[1]) <= 1e-8 and p[0] >= -1e-10]
    ok = len(on_ray) >= 3 and len(on_ray) == len(enum.points)
    rows.append(ReproRow(
        "ex4_2_inf", "solution set is the whole recession ray", _status(ok),
        f"{len(enum.points)} distinct solutions on x1 = x2 >= 0", "a ray of solutions",
    ))
    return rows


def run_repro(seed=0) -> ReproReport:
    """Recompute every printed quantity of the bundled instances."""
    report = ReproReport(seed=seed)
    report.rows.extend(_rows_ex4_2(seed))
    report.rows.extend(_rows_ex4_3(seed))
    report.rows.extend(_rows_ex4_5(seed))
    report.rows.extend(_rows_ex4_1(seed))
    report.rows.extend(_rows_recession_extras(seed))
    return report

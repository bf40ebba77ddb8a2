"""Numerical verdicts for the existence conditions used by the solver stack.

Sampling can only certify violations, never universal statements, so
HOLDS_SAMPLED is explicitly a non-certified verdict.  HOLDS_CERTIFIED is
reserved for vacuous situations (bounded sets, trivial dual cones) and for
closed-form certificates on polynomial data: the inner-product form either
vanishes identically on the affine hull of the set, or has nonnegative
coefficients after mapping the set into a sign orthant.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import null_space
from scipy.optimize import linprog

from .geometry import InconclusiveError, Polyhedron, cone_unit_directions
from .residuals import natural_residual

__all__ = [
    "Verdict",
    "CheckerConfig",
    "check_copositivity",
    "check_ray_alignment",
    "check_natmap_coercivity",
    "check_recession_sol_zero",
    "check_q_copositive_coercive",
    "check_coercivity_vi",
    "check_z_property",
    "theorem_report",
    "TheoremReport",
    "HOLDS_CERTIFIED",
    "HOLDS_SAMPLED",
    "VIOLATED",
    "INCONCLUSIVE",
]

HOLDS_CERTIFIED = "HOLDS_CERTIFIED"
HOLDS_SAMPLED = "HOLDS_SAMPLED"
VIOLATED = "VIOLATED"
INCONCLUSIVE = "INCONCLUSIVE"

_TRACE_CAP = 40


@dataclass
class Verdict:
    status: str
    witness: np.ndarray | None = None
    value: float | None = None
    trace: list = field(default_factory=list)
    notes: str = ""
    aux: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.status in (HOLDS_CERTIFIED, HOLDS_SAMPLED)

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "witness": None if self.witness is None else [float(v) for v in self.witness],
            "value": self.value,
            "notes": self.notes,
            "trace": [
                {"point": [float(v) for v in p], "value": float(val)}
                for p, val in self.trace[:_TRACE_CAP]
            ],
        }


@dataclass(frozen=True)
class CheckerConfig:
    ray_radii: tuple = (1e1, 1e2, 1e3, 1e4, 1e5, 1e6)
    direction_count: int = 12
    tol: float = 1e-8
    align_tol: float = 1e-3
    seed: int = 0
    sample_count: int = 24
    descent_starts: int = 50
    descent_iters: int = 80
    growth_floor: float = 1e-3
    recession_pitch: float = 2e-2
    recession_radius: float = 3.0

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.ray_radii, self.ray_radii[1:])):
            raise ValueError("ray_radii must be increasing")
        if self.direction_count < 1 or self.sample_count < 1:
            raise ValueError("counts must be positive")


# ---------------------------------------------------------------------------
# sparse multivariate polynomial helpers (exponent tuple -> coefficient)


def _poly_from_monomials(monomials) -> dict:
    p: dict = {}
    for m in monomials:
        p[m.exponents] = p.get(m.exponents, 0.0) + m.coefficient
    return p


def _poly_add(p, q, scale=1.0):
    out = dict(p)
    for e, c in q.items():
        out[e] = out.get(e, 0.0) + scale * c
    return out


def _poly_mul(p, q):
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0.0) + c1 * c2
    return out


def _poly_shift_var(p, i, n):
    """Multiply the polynomial by x_i."""
    out = {}
    for e, c in p.items():
        e2 = list(e)
        e2[i] += 1
        out[tuple(e2)] = c
    return out


def _poly_max_coeff(p):
    return max((abs(c) for c in p.values()), default=0.0)


def _poly_substitute_affine(p, x0, V):
    """Compose with x = x0 + V s; returns a polynomial in the s variables."""
    k = V.shape[1]
    zero = tuple(0 for _ in range(k))
    bases = []
    for i in range(len(x0)):
        base = {zero: float(x0[i])}
        for j in range(k):
            if V[i, j] != 0.0:
                e = tuple(1 if t == j else 0 for t in range(k))
                base[e] = base.get(e, 0.0) + float(V[i, j])
        bases.append(base)
    out: dict = {}
    for e, c in p.items():
        term = {zero: c}
        for i, power in enumerate(e):
            for _ in range(power):
                term = _poly_mul(term, bases[i])
        out = _poly_add(out, term)
    return out


def _poly_flip_signs(p, signs):
    out = {}
    for e, c in p.items():
        factor = 1.0
        for s, power in zip(signs, e):
            if s < 0 and power % 2 == 1:
                factor = -factor
        out[e] = out.get(e, 0.0) + factor * c
    return out


def _inner_product_polynomial(psi):
    """<psi(x) - psi(0), x> as a sparse polynomial (polynomial maps only)."""
    n = psi.n
    zero = tuple(0 for _ in range(n))
    g: dict = {}
    for i in range(n):
        comp = _poly_add(
            _poly_from_monomials(psi.leading[i]),
            _poly_from_monomials(psi.remainder_poly[i]),
        )
        comp.pop(zero, None)  # subtracts psi_i(0)
        g = _poly_add(g, _poly_shift_var(comp, i, n))
    return g


def _axis_interval(P: Polyhedron, i, box=1e3):
    """(min, max) of x_i over the set intersected with a large box."""
    out = []
    for sign in (1.0, -1.0):
        c = np.zeros(P.n)
        c[i] = sign
        res = linprog(
            c,
            A_ub=P.A if P.A.size else None,
            b_ub=P.b if P.A.size else None,
            A_eq=P.E if P.E.size else None,
            b_eq=P.d if P.E.size else None,
            bounds=[(-box, box)] * P.n,
            method="highs",
        )
        if res.status != 0 or res.x is None:
            return None
        out.append(sign * res.fun)
    return out[0], -(-out[1])


def _certify_copositivity(psi, D: Polyhedron):
    """Closed-form nonnegativity certificate for <psi(x)-psi(0), x> on D.

    Returns a notes string when certified, else None.
    """
    if psi.has_radicals():
        return None
    g = _inner_product_polynomial(psi)
    scale = max(1.0, _poly_max_coeff(g))
    if D.E.shape[0]:
        x0, *_ = np.linalg.lstsq(D.E, D.d, rcond=None)
        V = null_space(D.E)
        restricted = _poly_substitute_affine(g, x0, V) if V.shape[1] else {
            (): float(sum(c * np.prod(np.asarray(x0) ** np.asarray(e)) for e, c in g.items()))
        }
        if _poly_max_coeff(restricted) <= 1e-10 * scale:
            return "inner-product form vanishes identically on the affine hull of the set"
    elif _poly_max_coeff(g) <= 1e-10 * scale or not g:
        return "inner-product form is identically zero"
    signs = []
    for i in range(D.n):
        iv = _axis_interval(D, i)
        if iv is None:
            return None
        lo, hi = iv
        if lo >= -1e-9:
            signs.append(1.0)
        elif hi <= 1e-9:
            signs.append(-1.0)
        else:
            return None
    flipped = _poly_flip_signs(g, signs)
    if all(c >= -1e-12 * scale for c in flipped.values()):
        return (
            "set lies in a sign orthant and the inner-product form has "
            "nonnegative coefficients there"
        )
    return None


# ---------------------------------------------------------------------------
# copositivity


def _inner_value(psi, psi0, x):
    return float((psi.eval_map(x) - psi0) @ x)


def _descend_inner(psi, psi0, D, start, iters, kink_eps=1e-7):
    """Projected gradient descent on g(x) = <psi(x)-psi(0), x> over D."""
    x = np.asarray(start, dtype=float)
    fx = _inner_value(psi, psi0, x)
    alpha = 1.0
    for _ in range(iters):
        grad = psi.eval_map(x) - psi0 + psi.jacobian(x, kink_eps).T @ x
        gn = np.linalg.norm(grad)
        if gn < 1e-14 or np.linalg.norm(x) > 1e7:
            break
        cand, _ = D.project(x - alpha / max(1.0, gn) * grad)
        fc = _inner_value(psi, psi0, cand)
        if fc < fx - 1e-15 * (1 + abs(fx)):
            x, fx = cand, fc
            alpha = min(alpha * 1.5, 1e6)
        else:
            alpha *= 0.5
            if alpha < 1e-12:
                break
    return x, fx


def check_copositivity(psi, D: Polyhedron, cfg: CheckerConfig | None = None) -> Verdict:
    """Is <psi(x) - psi(0), x> >= 0 on the set D?"""
    cfg = cfg or CheckerConfig()
    if D.is_cone and D.is_trivial_cone():
        return Verdict(HOLDS_CERTIFIED, notes="trivial cone; only x = 0 to test")
    cert = _certify_copositivity(psi, D)
    if cert is not None:
        return Verdict(HOLDS_CERTIFIED, notes=cert)

    psi0 = psi.eval_map(np.zeros(D.n))
    probes = []
    for k, radius in enumerate((0.5, 1.0, 10.0, 100.0, 1e3)):
        probes.extend(D.sample(cfg.sample_count, radius, seed=cfg.seed + k))
    rec = D.recession_cone()
    dirs = cone_unit_directions(rec, cfg.direction_count, cfg.seed)
    for d in dirs:
        for R in cfg.ray_radii[:4]:
            probes.append(D.anchor + R * d)

    best_x, best_v = None, np.inf
    trace = []
    for x in probes:
        v = _inner_value(psi, psi0, x)
        trace.append((x, v))
        if v < best_v:
            best_x, best_v = x, v
    starts = [p for p, _ in sorted(trace, key=lambda t: t[1])[: cfg.descent_starts]]
    for s in starts:
        x, v = _descend_inner(psi, psi0, D, s, cfg.descent_iters)
        if v < best_v:
            best_x, best_v = x, v
        if best_v < -1e3 * max(cfg.tol, 1e-12):
            break

    if best_v < -cfg.tol:
        return Verdict(
            VIOLATED, witness=best_x, value=best_v, trace=trace[:_TRACE_CAP],
            notes="inner-product form is negative at the witness",
        )
    return Verdict(
        HOLDS_SAMPLED, value=best_v, trace=trace[:_TRACE_CAP],
        notes="no negative value found by sampling and multistart descent "
        "(non-certified; copositivity detection is co-NP-hard in general)",
    )


# ---------------------------------------------------------------------------
# remainder ray alignment


def check_ray_alignment(m, K: Polyhedron, cfg: CheckerConfig | None = None) -> Verdict:
    """Can -x match a positive multiple of the remainder along escape rays?

    Probes straight rays R*d with d in the recession cone.  A ray is a
    violation candidate when the remainder stays aligned with -x at the
    large radii and -x itself lies in the set; the verdict is VIOLATED only
    if the positive multiple fits exactly at the witness.
    """
    cfg = cfg or CheckerConfig()
    rec = K.recession_cone()
    dirs = cone_unit_directions(rec, cfg.direction_count, cfg.seed)
    if dirs.shape[0] == 0:
        return Verdict(
            HOLDS_CERTIFIED,
            notes="recession cone is trivial; the set is bounded and no "
            "escape sequence exists",
        )
    trace = []
    suspects = []
    radii = list(cfg.ray_radii)
    for d in dirs:
        aligned_tail = []
        last_point, last_r = None, None
        for R in radii:
            x = R * d
            if not K.contains(x, 1e-7 * max(1.0, R)):
                continue
            r = m.eval_remainder(x)
            rn = float(np.linalg.norm(r))
            if rn < 1e-300:
                trace.append((x, 0.0))
                aligned_tail.append(False)
                continue
            cos = float((-x) @ r / (np.linalg.norm(x) * rn))
            trace.append((x, cos))
            aligned = cos > 1.0 - cfg.align_tol and K.contains(-x, 1e-7 * max(1.0, R))
            aligned_tail.append(aligned)
            last_point, last_r = x, r
        tail = aligned_tail[-max(2, len(aligned_tail) // 2):]
        if tail and all(tail) and last_point is not None:
            suspects.append((last_point, last_r))
    for x, r in suspects:
        c = float(max(0.0, (-x) @ r / (r @ r)))
        if c > 0 and np.linalg.norm(-x - c * r) <= 1e-8 * (1.0 + np.linalg.norm(x)):
            return Verdict(
                VIOLATED, witness=x, value=c, trace=trace[:_TRACE_CAP],
                notes=f"-x = c (f(x) - h(x)) holds exactly with c = {c:.6g}",
                aux={"coefficient": c},
            )
    if suspects:
        return Verdict(
            INCONCLUSIVE, witness=suspects[0][0], trace=trace[:_TRACE_CAP],
            notes="persistent asymptotic alignment of the remainder with -x, "
            "but no exact positive multiple at the probed points",
        )
    return Verdict(
        HOLDS_SAMPLED, trace=trace[:_TRACE_CAP],
        notes="no alignment along sampled straight rays (curved escape "
        "sequences are not probed)",
    )


# ---------------------------------------------------------------------------
# natural-map norm coercivity


def _ray_points(m, K, cfg):
    """(base, direction) pairs whose points base + R*d stay in the set."""
    rec = K.recession_cone()
    dirs = cone_unit_directions(rec, cfg.direction_count, cfg.seed)
    if dirs.shape[0] == 0:
        return None
    bases = [np.zeros(K.n)] if K.contains(np.zeros(K.n), 1e-12) else []
    bases.append(K.anchor)
    for s in K.sample(3, 2.0, seed=cfg.seed + 17)[:3]:
        bases.append(s)
    rays = []
    for d in dirs:
        pure_ok = all(K.contains(R * d, 1e-7 * max(1.0, R)) for R in cfg.ray_radii)
        if pure_ok:
            rays.append((np.zeros(K.n), d))
        for b in bases:
            rays.append((b, d))
    # dedup identical (base, direction) pairs
    uniq, seen = [], set()
    for b, d in rays:
        key = (tuple(np.round(b, 9)), tuple(np.round(d, 9)))
        if key not in seen:
            seen.add(key)
            uniq.append((b, d))
    return uniq


def check_natmap_coercivity(m, K: Polyhedron, cfg: CheckerConfig | None = None,
                            remainder_bound=True) -> Verdict:
    """Does ||F_nat|| blow up along escape rays, dominating the remainder?

    Sub-check 1: ||x - Pi_K(x - f(x))|| exceeds growth_floor * sqrt(R) from
    the median radius on and increases over the last radii.  Sub-check 2
    (skipped when remainder_bound is False): ||f(x) - h(x)|| <= (1 + tol) *
    ||F_nat(x)|| from the median radius on.
    """
    cfg = cfg or CheckerConfig()
    rays = _ray_points(m, K, cfg)
    if rays is None:
        return Verdict(
            HOLDS_CERTIFIED,
            notes="recession cone is trivial; no x in the set with ||x|| -> inf",
        )
    radii = list(cfg.ray_radii)
    med = len(radii) // 2
    trace = []
    worst = None
    for base, d in rays:
        vals, rems, points = [], [], []
        for R in radii:
            x = base + R * d
            v = float(np.linalg.norm(natural_residual(m, K, x)))
            w = float(np.linalg.norm(m.eval_remainder(x)))
            vals.append(v)
            rems.append(w)
            points.append(x)
            trace.append((x, v))
        grow_ok = all(
            vals[i] >= cfg.growth_floor * np.sqrt(radii[i]) for i in range(med, len(radii))
        ) and all(vals[i + 1] > vals[i] for i in range(len(radii) - 3, len(radii) - 1))
        if not grow_ok:
            worst = (points[-1], vals[-1], "natural-map norm fails to grow along the ray")
            break
        if remainder_bound:
            bad = [
                i for i in range(med, len(radii))
                if rems[i] > (1.0 + cfg.tol) * vals[i]
            ]
            if bad:
                i = bad[-1]
                worst = (
                    points[i],
                    rems[i] - vals[i],
                    f"remainder norm {rems[i]:.6g} exceeds natural-map norm {vals[i]:.6g}",
                )
                break
    if worst is not None:
        x, value, why = worst
        return Verdict(VIOLATED, witness=x, value=value, trace=trace[:_TRACE_CAP], notes=why)
    return Verdict(
        HOLDS_SAMPLED, trace=trace[:_TRACE_CAP],
        notes="growth and remainder domination hold along all sampled rays "
        "(finite-radius probes of an asymptotic condition)",
    )


# ---------------------------------------------------------------------------
# recession problem has only the zero solution


def check_recession_sol_zero(m, K: Polyhedron, cfg: CheckerConfig | None = None,
                             solve_cfg=None) -> Verdict:
    """Is the homogeneous recession problem solved only by x = 0?"""
    from .oracle import oracle_vi_solutions
    from .solvers import SolveConfig, enumerate_solutions

    cfg = cfg or CheckerConfig()
    solve_cfg = solve_cfg or SolveConfig(seed=cfg.seed, multistart_count=12)
    h = m.leading_map()
    C = K.recession_cone()
    if C.is_trivial_cone():
        return Verdict(HOLDS_CERTIFIED, notes="recession cone is trivial; 0 is its only point")
    threshold = max(10.0 * cfg.recession_pitch, 1e-3)

    enum = enumerate_solutions(h, C, solve_cfg)
    nonzero = [p for p in enum.points if np.linalg.norm(p) > threshold]
    trace = [(p, float(np.linalg.norm(natural_residual(h, C, p)))) for p in enum.points]
    if nonzero:
        w = max(nonzero, key=lambda p: float(np.linalg.norm(p)))
        return Verdict(
            VIOLATED, witness=w, value=float(np.linalg.norm(w)), trace=trace,
            notes="nonzero recession solution found by the multistart solver",
        )
    if C.n <= 3:
        orc = oracle_vi_solutions(
            h, C, pitch=cfg.recession_pitch, radius=cfg.recession_radius, refine_rounds=1
        )
        far = [p for p in orc.points if np.linalg.norm(p) > threshold]
        if far:
            from .solvers import newton_inner

            w = max(far, key=lambda p: float(np.linalg.norm(p)))
            polished = newton_inner(h, C, w, 0.0, solve_cfg)
            if polished.converged and np.linalg.norm(polished.point) > threshold:
                return Verdict(
                    VIOLATED, witness=polished.point,
                    value=float(np.linalg.norm(polished.point)), trace=trace,
                    notes="nonzero recession solution located by the grid oracle "
                    "and confirmed by polishing",
                )
            return Verdict(
                INCONCLUSIVE, witness=w, trace=trace,
                notes="grid oracle suggests nonzero recession solutions but "
                "polishing did not confirm one",
            )
    return Verdict(
        HOLDS_SAMPLED, trace=trace,
        notes="only the zero solution found by multistart and grid search",
    )


# ---------------------------------------------------------------------------
# conjunctions and the coercivity condition


def check_q_copositive_coercive(m, K: Polyhedron, cfg: CheckerConfig | None = None) -> Verdict:
    """<x, f(x) - f(0)> >= 0 on the cone plus natural-map norm growth."""
    cfg = cfg or CheckerConfig()
    if not K.is_cone:
        raise ValueError("this check requires a cone")
    cop = check_copositivity(m, K, cfg)
    if cop.status == VIOLATED:
        cop.notes = "q-copositivity fails: " + cop.notes
        return cop
    coer = check_natmap_coercivity(m, K, cfg, remainder_bound=False)
    if coer.status == VIOLATED:
        coer.notes = "natural-map growth fails: " + coer.notes
        return coer
    if INCONCLUSIVE in (cop.status, coer.status):
        return Verdict(INCONCLUSIVE, notes=f"copositivity: {cop.status}; growth: {coer.status}")
    status = HOLDS_CERTIFIED if cop.status == coer.status == HOLDS_CERTIFIED else HOLDS_SAMPLED
    return Verdict(status, notes=f"copositivity: {cop.status}; growth: {coer.status}")


def check_coercivity_vi(m, K: Polyhedron, xref, cfg: CheckerConfig | None = None) -> Verdict:
    """Does <f(x), x - xref> grow like a positive multiple of ||x||^xi?"""
    cfg = cfg or CheckerConfig()
    xref = np.asarray(xref, dtype=float)
    if not K.contains(xref, 1e-8):
        raise ValueError("xref must belong to the set")
    rec = K.recession_cone()
    dirs = cone_unit_directions(rec, cfg.direction_count, cfg.seed)
    if dirs.shape[0] == 0:
        return Verdict(HOLDS_CERTIFIED, notes="set is bounded; the growth condition is vacuous")
    radii = list(cfg.ray_radii)
    med = len(radii) // 2
    trace = []
    fits = []
    inconclusive = False
    for d in dirs:
        phis = []
        for R in radii:
            x = xref + R * d
            phi = float(m.eval_map(x) @ (x - xref))
            phis.append(phi)
            trace.append((x, phi))
        tail = phis[med:]
        if all(p > 0 for p in tail):
            logs = np.log(tail)
            logr = np.log(radii[med:])
            xi = float(np.polyfit(logr, logs, 1)[0])
            xi = max(xi, 0.0)
            c = min(p / R**xi for p, R in zip(tail, radii[med:]))
            fits.append((xi, c))
        elif phis[-1] < 0 and phis[-1] < phis[-2]:
            x = xref + radii[-1] * d
            return Verdict(
                VIOLATED, witness=x, value=phis[-1], trace=trace[:_TRACE_CAP],
                notes="<f(x), x - xref> decreases to -inf along the witness ray",
                aux={"direction": [float(v) for v in d]},
            )
        else:
            inconclusive = True
    if inconclusive or not fits:
        return Verdict(
            INCONCLUSIVE, trace=trace[:_TRACE_CAP],
            notes="growth is not eventually one-signed along some sampled ray",
        )
    xi = min(f[0] for f in fits)
    c = min(f[1] for f in fits)
    return Verdict(
        HOLDS_SAMPLED, trace=trace[:_TRACE_CAP], value=xi,
        notes=f"growth fit along rays: exponent >= {xi:.3f} with constant {c:.3g}",
        aux={"xi": xi, "c": c},
    )


# ---------------------------------------------------------------------------
# Z-property on cones


def check_z_property(m, C: Polyhedron, cfg: CheckerConfig | None = None) -> Verdict:
    """On complementary pairs x in C, y in C* with <x,y> = 0: is <f(x), y> <= 0?"""
    cfg = cfg or CheckerConfig()
    if not C.is_cone:
        raise ValueError("the Z-property check requires a cone")
    if C.A.shape[0] == 0 and C.E.shape[0] == 0:
        return Verdict(HOLDS_CERTIFIED, notes="dual cone is trivial; the property is vacuous")

    rng = np.random.default_rng(cfg.seed)
    xs: list[np.ndarray] = []
    rays = C.extreme_rays()
    for scale in (0.5, 1.0, 2.0):
        for r in rays:
            xs.append(scale * r)
        if rays.shape[0] >= 2:
            for i in range(rays.shape[0]):
                for j in range(i + 1, rays.shape[0]):
                    xs.append(scale * (rays[i] + rays[j]))
    for l in C.lineality_basis():
        xs.extend([l, -l, 2.0 * l, -2.0 * l])
    xs.extend(C.sample(cfg.sample_count // 2 + 4, 2.0, seed=cfg.seed))

    trace = []
    worst = None
    for x in xs:
        x = np.asarray(x, dtype=float)
        fx = m.eval_map(x)
        ys: list[np.ndarray] = []
        if C.A.shape[0]:
            resid = np.abs(C.A @ x)
            scale_rows = 1.0 + np.abs(C.A @ x)
            active = np.nonzero(resid <= 1e-9 * scale_rows)[0]
            for i in active:
                ys.append(-C.A[i])
            for _ in range(2 if active.size else 0):
                lam = rng.uniform(size=active.size)
                ys.append(-(lam[None, :] @ C.A[active]).ravel())
        if C.E.shape[0]:
            for e in C.E:
                ys.append(e.copy())
                ys.append(-e.copy())
        for y in ys:
            ny = np.linalg.norm(y)
            if ny < 1e-12:
                continue
            y = y / ny
            if abs(x @ y) > 1e-7 * (1.0 + np.linalg.norm(x)):
                continue
            try:
                if not C.dual_cone_membership(y, 1e-7):
                    continue
            except InconclusiveError:
                continue
            val = float(fx @ y)
            trace.append((x, val))
            if val > cfg.tol * (1.0 + np.linalg.norm(fx)):
                if worst is None or val > worst[2]:
                    worst = (x, y, val)
    if worst is not None:
        x, y, val = worst
        return Verdict(
            VIOLATED, witness=x, value=val, trace=trace[:_TRACE_CAP],
            notes="<f(x), y> > 0 on a complementary pair",
            aux={"dual_witness": [float(v) for v in y]},
        )
    return Verdict(
        HOLDS_SAMPLED, trace=trace[:_TRACE_CAP],
        notes="no violating complementary pair among enumerated faces and samples",
    )


# ---------------------------------------------------------------------------
# aggregate report


@dataclass
class TheoremReport:
    zero_in_set: bool
    criteria: dict
    seed: int

    def to_dict(self) -> dict:
        out = {"zero_in_set": self.zero_in_set, "seed": self.seed, "criteria": {}}
        for name, entry in self.criteria.items():
            out["criteria"][name] = {
                "overall": entry["overall"],
                "conditions": {k: v.to_dict() for k, v in entry["conditions"].items()},
            }
        return out


def _combine(conditions: dict, extra_violated=False) -> str:
    statuses = [v.status for v in conditions.values()]
    if extra_violated or VIOLATED in statuses:
        return VIOLATED
    if INCONCLUSIVE in statuses:
        return INCONCLUSIVE
    if all(s == HOLDS_CERTIFIED for s in statuses):
        return HOLDS_CERTIFIED
    return HOLDS_SAMPLED


def theorem_report(m, K: Polyhedron, xref=None, cfg: CheckerConfig | None = None,
                   solve_cfg=None) -> TheoremReport:
    """Applicability matrix of the four existence criteria for one instance."""
    cfg = cfg or CheckerConfig()
    zero_in = K.contains(np.zeros(K.n), 1e-12)
    criteria: dict = {}

    leading = m.leading_map()
    zero_verdict = (
        Verdict(HOLDS_CERTIFIED, notes="0 belongs to the set")
        if zero_in
        else Verdict(VIOLATED, witness=np.zeros(K.n), value=0.0, notes="0 does not belong to the set")
    )
    conds = {
        "zero_in_set": zero_verdict,
        "leading_copositive": check_copositivity(leading, K, cfg),
        "no_remainder_ray_alignment": check_ray_alignment(m, K, cfg),
        "natmap_coercive_dominates_remainder": check_natmap_coercivity(m, K, cfg),
    }
    criteria["leading_copositivity_existence"] = {
        "conditions": conds,
        "overall": _combine(conds),
    }

    if K.is_cone:
        conds43 = {"q_copositive_and_growth": check_q_copositive_coercive(m, K, cfg)}
        criteria["cone_q_copositivity"] = {
            "conditions": conds43,
            "overall": _combine(conds43),
        }
    else:
        criteria["cone_q_copositivity"] = {
            "conditions": {},
            "overall": "NOT_APPLICABLE",
        }

    rec = K.recession_cone()
    conds44 = {
        "recession_solutions_only_zero": check_recession_sol_zero(m, K, cfg, solve_cfg),
        "leading_copositive_on_recession": check_copositivity(leading, rec, cfg),
    }
    criteria["recession_uniqueness"] = {
        "conditions": conds44,
        "overall": _combine(conds44),
    }

    if xref is None:
        xref = K.project(np.zeros(K.n))[0]
    conds45 = {"reference_growth": check_coercivity_vi(m, K, xref, cfg)}
    criteria["reference_coercivity"] = {
        "conditions": conds45,
        "overall": _combine(conds45),
    }
    return TheoremReport(zero_in_set=bool(zero_in), criteria=criteria, seed=cfg.seed)

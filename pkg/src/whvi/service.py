"""FastAPI service exposing the checkers, solvers, oracle and repro suite.

Requests carry the same document that lives in an instance file, so a file
can be posted verbatim as the ``instance`` field.  All endpoints are pure
functions of (document, seed) and return deterministic reports.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, HTTPException

from . import __version__
from .instances import (
    InstanceError,
    build_instance,
    load_shipped_instance,
    shipped_document,
    shipped_instance_names,
)
from .oracle import oracle_vi_solutions
from .repro import run_repro
from .schemas import (
    CheckRequest,
    CheckResponse,
    CriterionDoc,
    InstanceListResponse,
    InstanceSummary,
    OracleRequest,
    OracleResponse,
    PathPointDoc,
    ReproRequest,
    ReproResponse,
    ReproRowDoc,
    SolveRequest,
    SolveResponse,
    VerdictDoc,
)
from .solvers import enumerate_solutions, solve_homotopy
from .checkers import theorem_report

__all__ = ["create_app", "app"]


def _build(doc, seed=None, tol=None, ray_radii=None):
    try:
        return build_instance(doc, seed=seed, tol=tol, ray_radii=ray_radii)
    except InstanceError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


def create_app() -> FastAPI:
    app = FastAPI(
        title="whvi",
        version=__version__,
        description="Condition checking and homotopy solving for weakly "
        "homogeneous variational inequalities over polyhedral sets.",
    )

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.get("/instances", response_model=InstanceListResponse)
    def list_instances():
        out = []
        for name in shipped_instance_names():
            inst = load_shipped_instance(name)
            out.append(
                InstanceSummary(name=name, n=inst.map.n, gamma=inst.map.gamma,
                                cone=inst.set.is_cone)
            )
        return InstanceListResponse(instances=out)

    @app.get("/instances/{name}")
    def get_instance(name: str):
        try:
            return shipped_document(name)
        except FileNotFoundError as exc:
            raise HTTPException(status_code=404, detail=f"unknown instance {name!r}") from exc

    @app.post("/check", response_model=CheckResponse)
    def check(req: CheckRequest):
        inst = _build(req.instance, seed=req.seed, tol=req.tol, ray_radii=req.ray_radii)
        report = theorem_report(
            inst.map, inst.set, xref=inst.xref, cfg=inst.checker_config,
            solve_cfg=inst.solve_config,
        )
        criteria = {}
        for name, entry in report.criteria.items():
            criteria[name] = CriterionDoc(
                overall=entry["overall"],
                conditions={k: VerdictDoc(**v.to_dict()) for k, v in entry["conditions"].items()},
            )
        return CheckResponse(
            instance=inst.name, zero_in_set=report.zero_in_set,
            seed=inst.checker_config.seed, criteria=criteria,
        )

    @app.post("/solve", response_model=SolveResponse)
    def solve(req: SolveRequest):
        inst = _build(req.instance, seed=req.seed)
        result = solve_homotopy(inst.map, inst.set, inst.solve_config)
        points = [[float(v) for v in p] for p in result.points]
        residuals = [float(r) for r in result.residuals]
        diameter = None
        if req.enumerate and result.status != "FAILED":
            enum = enumerate_solutions(inst.map, inst.set, inst.solve_config)
            points = [[float(v) for v in p] for p in enum.points]
            residuals = []
            diameter = enum.bounding_box_diameter
        return SolveResponse(
            instance=inst.name, status=result.status, points=points,
            residuals=residuals,
            trace=[PathPointDoc(**p.to_dict()) for p in result.trace],
            reason=result.reason, bounding_box_diameter=diameter,
        )

    @app.post("/oracle", response_model=OracleResponse)
    def oracle(req: OracleRequest):
        inst = _build(req.instance)
        if inst.map.n > 3:
            raise HTTPException(status_code=422, detail="oracle supports n <= 3 only")
        res = oracle_vi_solutions(inst.map, inst.set, pitch=req.pitch, radius=req.radius)
        return OracleResponse(
            instance=inst.name,
            points=[[float(v) for v in p] for p in res.points],
            oracle_tol=res.oracle_tol, accepted_count=res.accepted_count,
            pitch=res.pitch,
        )

    @app.post("/repro", response_model=ReproResponse)
    def repro(req: ReproRequest):
        report = run_repro(seed=req.seed)
        return ReproResponse(
            rows=[ReproRowDoc(**r.to_dict()) for r in report.rows],
            passed=report.passed, seed=report.seed,
        )

    return app


app = create_app()

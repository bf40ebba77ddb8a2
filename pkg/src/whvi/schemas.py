"""Pydantic documents: the instance file format and the service wire format.

The same InstanceDoc validates instance files on disk and request bodies,
so a file can be posted verbatim as the ``instance`` field of a request.
"""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field


class MonomialDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")
    coeff: float
    exps: list[int]


class RadicalDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")
    coeff: float
    root: int
    a: list[float]
    b: float = 0.0


class MapDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")
    leading: list[list[MonomialDoc]]
    remainder_poly: Optional[list[list[MonomialDoc]]] = None
    remainder_radical: Optional[list[list[RadicalDoc]]] = None


class SetDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")
    A: list[list[float]] = Field(default_factory=list)
    b: list[float] = Field(default_factory=list)
    E: list[list[float]] = Field(default_factory=list)
    d: list[float] = Field(default_factory=list)


class ConfigDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")
    seed: Optional[int] = None
    tol: Optional[float] = None
    ray_radii: Optional[list[float]] = None
    direction_count: Optional[int] = None
    align_tol: Optional[float] = None
    multistart_count: Optional[int] = None
    t_steps: Optional[int] = None
    residual_tol: Optional[float] = None
    divergence_norm: Optional[float] = None


class InstanceDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")
    name: str
    n: int
    gamma: Optional[int] = None
    set: SetDoc
    map: MapDoc
    xref: Optional[list[float]] = None
    config: Optional[ConfigDoc] = None


# -- request / response models -------------------------------------------------


class CheckRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    instance: InstanceDoc
    seed: Optional[int] = None
    tol: Optional[float] = None
    ray_radii: Optional[list[float]] = None


class VerdictDoc(BaseModel):
    status: str
    witness: Optional[list[float]] = None
    value: Optional[float] = None
    notes: str = ""
    trace: list[dict] = Field(default_factory=list)


class CriterionDoc(BaseModel):
    overall: str
    conditions: dict[str, VerdictDoc] = Field(default_factory=dict)


class CheckResponse(BaseModel):
    instance: str
    zero_in_set: bool
    seed: int
    criteria: dict[str, CriterionDoc]


class SolveRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    instance: InstanceDoc
    seed: Optional[int] = None
    enumerate: bool = False


class PathPointDoc(BaseModel):
    x: list[float]
    t: float
    residual: float


class SolveResponse(BaseModel):
    instance: str
    status: str
    points: list[list[float]] = Field(default_factory=list)
    residuals: list[float] = Field(default_factory=list)
    trace: list[PathPointDoc] = Field(default_factory=list)
    reason: Optional[str] = None
    bounding_box_diameter: Optional[float] = None


class OracleRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    instance: InstanceDoc
    pitch: float = 1e-2
    radius: float = 5.0


class OracleResponse(BaseModel):
    instance: str
    points: list[list[float]] = Field(default_factory=list)
    oracle_tol: float
    accepted_count: int
    pitch: float


class ReproRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    seed: int = 0


class ReproRowDoc(BaseModel):
    example: str
    quantity: str
    status: str  # PASS | FLAG | FAIL
    computed: str
    expected: str
    detail: str = ""


class ReproResponse(BaseModel):
    rows: list[ReproRowDoc]
    passed: bool
    seed: int


class InstanceSummary(BaseModel):
    name: str
    n: int
    gamma: int
    cone: bool


class InstanceListResponse(BaseModel):
    instances: list[InstanceSummary]

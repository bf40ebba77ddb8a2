"""Instance documents: named (map, set) pairs with config overrides.

An instance round-trips losslessly through its JSON document; building the
core objects enforces every map and set invariant, and any semantic error
is reported with the offending field path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

import numpy as np
from pydantic import ValidationError

from .checkers import CheckerConfig
from .geometry import Polyhedron
from .maps import Monomial, RadicalTerm, WeaklyHomogeneousMap
from .schemas import ConfigDoc, InstanceDoc, MapDoc, MonomialDoc, RadicalDoc, SetDoc
from .solvers import SolveConfig

__all__ = [
    "Instance",
    "InstanceError",
    "parse_instance",
    "parse_instance_text",
    "build_instance",
    "instance_to_document",
    "shipped_instance_names",
    "load_shipped_instance",
]


class InstanceError(ValueError):
    """Invalid instance document; message carries the field context."""


@dataclass
class Instance:
    name: str
    map: WeaklyHomogeneousMap
    set: Polyhedron
    xref: np.ndarray | None = None
    checker_config: CheckerConfig = field(default_factory=CheckerConfig)
    solve_config: SolveConfig = field(default_factory=SolveConfig)
    document: InstanceDoc | None = None


def _configs_from_doc(doc: ConfigDoc | None, seed=None, tol=None, ray_radii=None):
    kw_check: dict = {}
    kw_solve: dict = {}
    if doc is not None:
        if doc.seed is not None:
            kw_check["seed"] = doc.seed
            kw_solve["seed"] = doc.seed
        if doc.tol is not None:
            kw_check["tol"] = doc.tol
        if doc.ray_radii is not None:
            kw_check["ray_radii"] = tuple(doc.ray_radii)
        if doc.direction_count is not None:
            kw_check["direction_count"] = doc.direction_count
        if doc.align_tol is not None:
            kw_check["align_tol"] = doc.align_tol
        if doc.multistart_count is not None:
            kw_solve["multistart_count"] = doc.multistart_count
        if doc.t_steps is not None:
            kw_solve["t_steps"] = doc.t_steps
        if doc.residual_tol is not None:
            kw_solve["residual_tol"] = doc.residual_tol
        if doc.divergence_norm is not None:
            kw_solve["divergence_norm"] = doc.divergence_norm
    if seed is not None:
        kw_check["seed"] = seed
        kw_solve["seed"] = seed
    if tol is not None:
        kw_check["tol"] = tol
    if ray_radii is not None:
        kw_check["ray_radii"] = tuple(ray_radii)
    return CheckerConfig(**kw_check), SolveConfig(**kw_solve)


def build_instance(doc: InstanceDoc, seed=None, tol=None, ray_radii=None) -> Instance:
    """Turn a validated document into core objects, enforcing all invariants."""
    n = doc.n
    try:
        leading = [
            [Monomial(mm.coeff, tuple(mm.exps)) for mm in comp] for comp in doc.map.leading
        ]
        rem_poly = None
        if doc.map.remainder_poly is not None:
            rem_poly = [
                [Monomial(mm.coeff, tuple(mm.exps)) for mm in comp]
                for comp in doc.map.remainder_poly
            ]
        rem_rad = None
        if doc.map.remainder_radical is not None:
            rem_rad = [
                [RadicalTerm(t.coeff, t.root, tuple(t.a), t.b) for t in comp]
                for comp in doc.map.remainder_radical
            ]
        m = WeaklyHomogeneousMap(n, leading, rem_poly, rem_rad, gamma=doc.gamma)
    except ValueError as exc:
        raise InstanceError(f"{doc.name}: map: {exc}") from exc
    try:
        P = Polyhedron(n, doc.set.A, doc.set.b, doc.set.E, doc.set.d)
    except ValueError as exc:
        raise InstanceError(f"{doc.name}: set: {exc}") from exc
    xref = None
    if doc.xref is not None:
        xref = np.asarray(doc.xref, dtype=float)
        if xref.shape != (n,):
            raise InstanceError(f"{doc.name}: xref: dimension mismatch")
        if not P.contains(xref, 1e-8):
            raise InstanceError(f"{doc.name}: xref: point does not belong to the set")
    try:
        check_cfg, solve_cfg = _configs_from_doc(doc.config, seed, tol, ray_radii)
    except ValueError as exc:
        raise InstanceError(f"{doc.name}: config: {exc}") from exc
    return Instance(doc.name, m, P, xref, check_cfg, solve_cfg, document=doc)


def parse_instance_text(text: str, **overrides) -> Instance:
    try:
        doc = InstanceDoc.model_validate_json(text)
    except ValidationError as exc:
        locs = "; ".join(
            "/".join(str(p) for p in e["loc"]) + ": " + e["msg"] for e in exc.errors()
        )
        raise InstanceError(f"invalid instance document: {locs}") from exc
    return build_instance(doc, **overrides)


def parse_instance(path, **overrides) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance_text(fh.read(), **overrides)


def instance_to_document(inst: Instance) -> InstanceDoc:
    """Serialize core objects back into a document (lossless round trip)."""
    m, P = inst.map, inst.set
    map_doc = MapDoc(
        leading=[
            [MonomialDoc(coeff=mm.coefficient, exps=list(mm.exponents)) for mm in comp]
            for comp in m.leading
        ],
        remainder_poly=[
            [MonomialDoc(coeff=mm.coefficient, exps=list(mm.exponents)) for mm in comp]
            for comp in m.remainder_poly
        ],
        remainder_radical=[
            [RadicalDoc(coeff=t.coefficient, root=t.root_index, a=list(t.a), b=t.b) for t in comp]
            for comp in m.remainder_radical
        ],
    )
    set_doc = SetDoc(
        A=[list(row) for row in P.A], b=list(P.b),
        E=[list(row) for row in P.E], d=list(P.d),
    )
    return InstanceDoc(
        name=inst.name, n=m.n, gamma=m.gamma, set=set_doc, map=map_doc,
        xref=None if inst.xref is None else [float(v) for v in inst.xref],
        config=inst.document.config if inst.document is not None else None,
    )


def shipped_instance_names() -> list[str]:
    names = []
    for entry in resources.files("whvi.data").iterdir():
        if entry.name.endswith(".json"):
            names.append(entry.name[:-5])
    return sorted(names)


def load_shipped_instance(name: str, **overrides) -> Instance:
    try:
        text = resources.files("whvi.data").joinpath(f"{name}.json").read_text()
    except FileNotFoundError as exc:
        raise KeyError(f"no shipped instance named {name!r}") from exc
    return parse_instance_text(text, **overrides)


def shipped_document(name: str) -> dict:
    text = resources.files("whvi.data").joinpath(f"{name}.json").read_text()
    return json.loads(text)

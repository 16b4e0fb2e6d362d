"""JSON fixture documents.

A fixture names a field, a group (or raw structure constants), idempotents,
modules and the suites to run.  Scalars are written as strings ``"p/q"`` (or
plain integers) so that every value round-trips exactly::

    {
      "name": "S3",
      "field": "rational",                 # or {"prime": 7}
      "group": {"symmetric": 3},           # or {"cyclic": n} or {"table": [[...]]}
      "idempotents": {"e": {"ranks": [1, 1, 1]}},
      "modules": {"V": {"specht": "V21"}, "R": {"regular": true}},
      "truncation": {"idempotent": "e"},
      "suites": ["transport"], "samples": 20, "seed": 0
    }
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .algebra import (
    Algebra,
    AlgebraError,
    Idempotent,
    Module,
    direct_sum,
    make_group_algebra,
    regular_module,
)
from .groups import (
    cyclic_group,
    module_from_generators,
    rank_idempotent,
    specht_modules,
    symmetric_group,
)
from .linalg import GF, QQ, Field, LinAlgError, Mat
from .monoidal import MonoidalContext, hopf_from_group

__all__ = ["FixtureError", "FixtureSpec", "load_fixture", "parse_fixture", "bundled_fixtures"]


class FixtureError(ValueError):
    """Malformed fixture; ``where`` locates the offending entry."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


@dataclass(eq=False)
class FixtureSpec:
    name: str
    field: Field
    algebra: Algebra
    ctx: MonoidalContext | None
    idempotents: dict
    modules: dict
    suites: list
    samples: int = 20
    seed: int = 0
    truncation: dict = field(default_factory=dict)
    stages: dict = field(default_factory=dict)
    nilpotency: dict = field(default_factory=dict)
    mutations: list = field(default_factory=list)
    expect_failure: dict = field(default_factory=dict)
    objects: list = field(default_factory=list)

    def module_list(self, names=None) -> list:
        names = self.objects if names is None else names
        return [self.modules[n] for n in names]


def bundled_fixtures() -> dict:
    root = resources.files("modcoh") / "data"
    return {p.name[: -len(".json")]: p for p in root.iterdir() if p.name.endswith(".json")}


def load_fixture(path_or_name: str) -> FixtureSpec:
    p = Path(path_or_name)
    if p.exists():
        text = p.read_text()
    else:
        bundled = bundled_fixtures()
        if path_or_name not in bundled:
            raise FixtureError(path_or_name, "no such file or bundled fixture")
        text = bundled[path_or_name].read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FixtureError(f"{path_or_name}:{exc.lineno}:{exc.colno}", exc.msg) from None
    return parse_fixture(doc)


def _field(doc) -> Field:
    spec = doc.get("field", "rational")
    if spec in ("rational", "QQ"):
        return QQ
    if isinstance(spec, dict) and set(spec) == {"prime"}:
        p = spec["prime"]
        if not isinstance(p, int) or p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise FixtureError("field.prime", f"{p!r} is not a prime")
        return GF(p)
    raise FixtureError("field", f"expected 'rational' or {{'prime': p}}, got {spec!r}")


def _scalar(f: Field, x, where):
    try:
        if isinstance(x, str):
            return f.parse(x)
        if isinstance(x, int) and not isinstance(x, bool):
            return f(x)
    except (ValueError, ZeroDivisionError, LinAlgError) as exc:
        raise FixtureError(where, str(exc)) from None
    raise FixtureError(where, f"scalar must be a 'p/q' string or an integer, got {x!r}")


def _vector(f, xs, where) -> tuple:
    if not isinstance(xs, list):
        raise FixtureError(where, "expected a list of scalars")
    return tuple(_scalar(f, x, f"{where}[{i}]") for i, x in enumerate(xs))


def _matrix(f, rows, where) -> Mat:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise FixtureError(where, "expected a list of rows")
    data = [_vector(f, r, f"{where}[{i}]") for i, r in enumerate(rows)]
    if len({len(r) for r in data}) > 1:
        raise FixtureError(where, "ragged matrix")
    return Mat(f, data, cols=len(data[0]) if data else 0)


def _algebra(doc, f):
    if "group" in doc:
        g = doc["group"]
        name = "G"
        elements = None
        if not isinstance(g, dict) or len(g) != 1:
            raise FixtureError("group", "expected one of symmetric, cyclic, table")
        ((kind, val),) = g.items()
        if kind == "symmetric":
            elements, table = symmetric_group(int(val))
            name = f"S{val}"
        elif kind == "cyclic":
            table = cyclic_group(int(val))
            name = f"C{val}"
        elif kind == "table":
            table = val
        else:
            raise FixtureError("group", f"unknown group kind {kind!r}")
        try:
            alg = make_group_algebra(table, f, name=name)
        except AlgebraError as exc:
            raise FixtureError("group", str(exc)) from None
        if elements is not None:
            alg.elements = elements
        return alg, MonoidalContext(hopf_from_group(table, algebra=alg))
    if "algebra" in doc:
        a = doc["algebra"]
        try:
            structure = [[_vector(f, v, f"algebra.structure[{i}][{j}]") for j, v in enumerate(row)]
                         for i, row in enumerate(a["structure"])]
            unit = _vector(f, a["unit"], "algebra.unit")
            return Algebra(f, structure, unit, name=a.get("name", "A")), None
        except KeyError as exc:
            raise FixtureError("algebra", f"missing key {exc}") from None
        except AlgebraError as exc:
            raise FixtureError("algebra", str(exc)) from None
    raise FixtureError("<root>", "need 'group' or 'algebra'")


def _modules(doc, alg, ctx) -> dict:
    f = alg.field
    out = {}
    spechts = None
    for name, spec in doc.get("modules", {}).items():
        where = f"modules.{name}"
        if not isinstance(spec, dict) or len(spec) != 1:
            raise FixtureError(where, "expected exactly one constructor key")
        ((kind, val),) = spec.items()
        try:
            if kind == "regular":
                mod = regular_module(alg)
            elif kind == "trivial":
                if ctx is None:
                    raise FixtureError(where, "trivial module needs a group")
                mod = ctx.unit_object
            elif kind == "specht":
                if not hasattr(alg, "elements"):
                    raise FixtureError(where, "specht modules need a symmetric group")
                spechts = spechts or {m.name: m for m in specht_modules(alg)}
                if val not in spechts:
                    raise FixtureError(where, f"unknown irreducible {val!r}; have {sorted(spechts)}")
                mod = spechts[val]
            elif kind == "action":
                mats = [_matrix(f, m, f"{where}.action[{i}]") for i, m in enumerate(val)]
                mod = Module(alg, mats, check=True)
            elif kind == "generators":
                if ctx is None:
                    raise FixtureError(where, "generator images need a group")
                images = {int(k): _matrix(f, m, f"{where}.generators.{k}") for k, m in val.items()}
                mod = module_from_generators(alg, images)
            elif kind == "sum":
                missing = [n for n in val if n not in out]
                if missing:
                    raise FixtureError(where, f"unknown summands {missing}")
                mod = direct_sum(*(out[n] for n in val))
            else:
                raise FixtureError(where, f"unknown module constructor {kind!r}")
        except (AlgebraError, LinAlgError, ValueError) as exc:
            if isinstance(exc, FixtureError):
                raise
            raise FixtureError(where, str(exc)) from None
        out[name] = mod.renamed(name)
    return out


def _idempotents(doc, alg) -> dict:
    f = alg.field
    out = {}
    for name, spec in doc.get("idempotents", {}).items():
        where = f"idempotents.{name}"
        if not isinstance(spec, dict) or len(spec) != 1:
            raise FixtureError(where, "expected exactly one of coords, ranks, one")
        ((kind, val),) = spec.items()
        if kind == "coords":
            coords = _vector(f, val, f"{where}.coords")
            if len(coords) != alg.dim:
                raise FixtureError(where, f"need {alg.dim} coordinates")
        elif kind == "ranks":
            if not hasattr(alg, "elements"):
                raise FixtureError(where, "ranks need a symmetric group")
            simples = specht_modules(alg)
            if len(val) != len(simples):
                raise FixtureError(where, f"need {len(simples)} ranks")
            coords = rank_idempotent(alg, simples, val)
        elif kind == "one":
            coords = alg.unit
        else:
            raise FixtureError(where, f"unknown idempotent constructor {kind!r}")
        try:
            out[name] = Idempotent(alg, coords, name=name)
        except AlgebraError as exc:
            raise FixtureError(where, str(exc)) from None
    return out


def _names(val, pool, where) -> list:
    if not isinstance(val, list):
        raise FixtureError(where, "expected a list of names")
    for n in val:
        if n not in pool:
            raise FixtureError(where, f"unknown name {n!r}")
    return list(val)


def parse_fixture(doc) -> FixtureSpec:
    if not isinstance(doc, dict):
        raise FixtureError("<root>", "fixture must be a JSON object")
    f = _field(doc)
    alg, ctx = _algebra(doc, f)
    modules = _modules(doc, alg, ctx)
    idems = _idempotents(doc, alg)
    suites = doc.get("suites", [])
    if not isinstance(suites, list) or not all(isinstance(s, str) for s in suites):
        raise FixtureError("suites", "expected a list of suite names")
    objects = _names(doc.get("objects", list(modules)), modules, "objects")
    trunc = dict(doc.get("truncation", {}))
    if trunc:
        if trunc.get("idempotent") not in idems:
            raise FixtureError("truncation.idempotent", f"unknown idempotent {trunc.get('idempotent')!r}")
        for key in ("objects", "corners"):
            if key in trunc:
                _names(trunc[key], modules, f"truncation.{key}")
    stages = dict(doc.get("stages", {}))
    if stages:
        for key in ("e1", "e2"):
            if stages.get(key) not in idems:
                raise FixtureError(f"stages.{key}", f"unknown idempotent {stages.get(key)!r}")
        for key in ("objects", "modules", "corners"):
            if key in stages:
                _names(stages[key], modules, f"stages.{key}")
    for key in ("samples", "seed"):
        if key in doc and (not isinstance(doc[key], int) or doc[key] < 0):
            raise FixtureError(key, "expected a non-negative integer")
    mutations = doc.get("mutations", [])
    for m in mutations:
        if m not in ("counit",):
            raise FixtureError("mutations", f"unknown mutation {m!r}")
    return FixtureSpec(
        name=doc.get("name", alg.name),
        field=f,
        algebra=alg,
        ctx=ctx,
        idempotents=idems,
        modules=modules,
        suites=suites,
        samples=doc.get("samples", 20),
        seed=doc.get("seed", 0),
        truncation=trunc,
        stages=stages,
        nilpotency=dict(doc.get("nilpotency", {})),
        mutations=list(mutations),
        expect_failure=dict(doc.get("expect_failure", {})),
        objects=objects,
    )

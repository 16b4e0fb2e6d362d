"""Module and bimodule category structures as data, and checkers for their
coherence diagrams.

Everything here is lazy: an action is a procedure on objects and morphisms,
a constraint is a procedure returning a morphism for a tuple of objects.
Checkers compose the matrices along both sides of a diagram and compare them
exactly.

Conventions for constraint directions::

    m(X, Y, M):  (X (x) Y) (x) M  ->  X (x) (Y (x) M)
    mr(M, X, Y): (M (x) X) (x) Y  ->  M (x) (X (x) Y)
    b(X, M, Y):  (X (x) M) (x) Y  ->  X (x) (M (x) Y)
    lunit(M):    1 (x) M -> M        runit(M): M (x) 1 -> M

A missing unit provider means the unit acts strictly (identity matrix).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .algebra import Module, ModuleMorphism, hom_basis
from .linalg import Mat
from .monoidal import MonoidalContext

__all__ = [
    "MalformedConstraint",
    "CompositionMismatch",
    "ActionStructure",
    "ModuleFunctorDatum",
    "DiagramReport",
    "tensor_action",
    "identity_functor",
    "check_pentagon",
    "check_right_pentagon",
    "check_bimodule_axioms",
    "check_module_functor",
    "check_bimodule_functor",
    "check_naturality",
    "check_module_transformation",
    "compose_module_functors",
    "sample_tuples",
    "sample_morphisms",
]


class MalformedConstraint(ValueError):
    pass


class CompositionMismatch(ValueError):
    pass


@dataclass(eq=False)
class ActionStructure:
    ctx: MonoidalContext
    act: Optional[Callable] = None
    act_mor: Optional[Callable] = None
    m: Optional[Callable] = None
    lunit: Optional[Callable] = None
    ract: Optional[Callable] = None
    ract_mor: Optional[Callable] = None
    mr: Optional[Callable] = None
    runit: Optional[Callable] = None
    b: Optional[Callable] = None
    name: str = ""

    @property
    def side(self) -> str:
        if self.act and self.ract and self.b:
            return "bimodule"
        if self.act:
            return "left"
        if self.ract:
            return "right"
        return "none"

    def lunit_at(self, mod: Module) -> ModuleMorphism:
        if self.lunit is not None:
            return self.lunit(mod)
        src = self.act(self.ctx.unit_object, mod)
        return ModuleMorphism(src, mod, Mat.identity(mod.field, mod.dim), check=False)

    def runit_at(self, mod: Module) -> ModuleMorphism:
        if self.runit is not None:
            return self.runit(mod)
        src = self.ract(mod, self.ctx.unit_object)
        return ModuleMorphism(src, mod, Mat.identity(mod.field, mod.dim), check=False)


@dataclass(eq=False)
class ModuleFunctorDatum:
    """A functor with its left (``s``) and right (``sr``) structure maps.

    ``s(X, M): F(X (x) M) -> X (x) F(M)`` and
    ``sr(M, X): F(M (x) X) -> F(M) (x) X``.
    """

    F_obj: Callable
    F_mor: Callable
    source: ActionStructure
    target: ActionStructure
    s: Optional[Callable] = None
    sr: Optional[Callable] = None
    name: str = ""


@dataclass(frozen=True)
class DiagramReport:
    diagram: str
    tuple: tuple
    passed: bool
    lhs: Optional[Mat] = field(default=None, compare=False)
    rhs: Optional[Mat] = field(default=None, compare=False)

    def tuple_text(self) -> str:
        return "(" + ",".join(str(t) for t in self.tuple) + ")"

    def line(self, suite: str) -> str:
        return f"{suite} {self.diagram} {self.tuple_text()} {'PASS' if self.passed else 'FAIL'}"

    def __bool__(self):
        return self.passed


def _names(*objs) -> tuple:
    return tuple(getattr(o, "name", None) or "?" for o in objs)


def _chain(*morphs: ModuleMorphism) -> Mat:
    """Matrix of ``morphs[0] o morphs[1] o ...`` with dimension checks."""
    acc = morphs[-1].mat
    for g in reversed(morphs[:-1]):
        if g.mat.cols != acc.rows:
            raise MalformedConstraint(
                f"cannot compose {g!r} ({g.mat.cols} columns) after a map into dimension {acc.rows}"
            )
        acc = g.mat @ acc
    return acc


def _report(diagram, objs, lhs: Mat, rhs: Mat) -> DiagramReport:
    if lhs.shape != rhs.shape:
        raise MalformedConstraint(f"{diagram}: composites of shapes {lhs.shape} and {rhs.shape}")
    ok = lhs == rhs
    return DiagramReport(diagram, _names(*objs), ok, None if ok else lhs, None if ok else rhs)


def _ident(mod: Module) -> ModuleMorphism:
    return mod.identity()


def tensor_action(ctx: MonoidalContext, name: str = "tensor") -> ActionStructure:
    """The category of modules acted on by tensoring on both sides; all
    constraints are identities.  One shared instance per context, so that
    functor data built separately compose."""
    shared = getattr(ctx, "_tensor_action", None)
    if shared is not None:
        return shared

    def ident3(p, q, r):
        src = ctx.tensor(ctx.tensor(p, q), r)
        return ModuleMorphism(src, ctx.tensor(p, ctx.tensor(q, r)), Mat.identity(ctx.field, src.dim), check=False)

    shared = ActionStructure(
        ctx,
        act=ctx.tensor,
        act_mor=ctx.tensor_mor,
        m=ident3,
        ract=ctx.tensor,
        ract_mor=ctx.tensor_mor,
        mr=ident3,
        b=ident3,
        name=name,
    )
    ctx._tensor_action = shared
    return shared


def identity_functor(structure: ActionStructure) -> ModuleFunctorDatum:
    def s(x, mod):
        return _ident(structure.act(x, mod))

    def sr(mod, x):
        return _ident(structure.ract(mod, x))

    return ModuleFunctorDatum(
        lambda mod: mod,
        lambda f: f,
        structure,
        structure,
        s=s if structure.act else None,
        sr=sr if structure.ract else None,
        name="id",
    )


def check_pentagon(a: ActionStructure, x, y, z, mod) -> DiagramReport:
    """``(id_X (x) m_{Y,Z,M}) o m_{X,Y(x)Z,M} o (a_{X,Y,Z} (x) id_M)``
    against ``m_{X,Y,Z(x)M} o m_{X(x)Y,Z,M}``."""
    ctx = a.ctx
    lhs = _chain(
        a.act_mor(_ident(x), a.m(y, z, mod)),
        a.m(x, ctx.tensor(y, z), mod),
        a.act_mor(ctx.associator(x, y, z), _ident(mod)),
    )
    rhs = _chain(a.m(x, y, a.act(z, mod)), a.m(ctx.tensor(x, y), z, mod))
    return _report("pentagon", (x, y, z, mod), lhs, rhs)


def check_right_pentagon(a: ActionStructure, mod, x, y, z) -> DiagramReport:
    """``mr_{M,X,Y(x)Z} o mr_{M(x)X,Y,Z}`` against
    ``(id_M (x) a_{X,Y,Z}) o mr_{M,X(x)Y,Z} o (mr_{M,X,Y} (x) id_Z)``."""
    ctx = a.ctx
    lhs = _chain(a.mr(mod, x, ctx.tensor(y, z)), a.mr(a.ract(mod, x), y, z))
    rhs = _chain(
        a.ract_mor(_ident(mod), ctx.associator(x, y, z)),
        a.mr(mod, ctx.tensor(x, y), z),
        a.ract_mor(a.mr(mod, x, y), _ident(z)),
    )
    return _report("right_pentagon", (mod, x, y, z), lhs, rhs)


def check_bimodule_axioms(a: ActionStructure, x, y, mod, w, z) -> tuple:
    """The two mixed pentagons.  The first involves ``m`` and ``b`` on
    ``(X, Y, M, W)``, the second ``mr`` and ``b`` on ``(X, M, W, Z)``."""
    ctx = a.ctx
    # ((X Y) M) W -> X (Y (M W))
    lhs1 = _chain(
        a.act_mor(_ident(x), a.b(y, mod, w)),
        a.b(x, a.act(y, mod), w),
        a.ract_mor(a.m(x, y, mod), _ident(w)),
    )
    rhs1 = _chain(a.m(x, y, a.ract(mod, w)), a.b(ctx.tensor(x, y), mod, w))
    r1 = _report("bimodule_left", (x, y, mod, w), lhs1, rhs1)
    # ((X M) W) Z -> X (M (W Z))
    lhs2 = _chain(a.b(x, mod, ctx.tensor(w, z)), a.mr(a.act(x, mod), w, z))
    rhs2 = _chain(
        a.act_mor(_ident(x), a.mr(mod, w, z)),
        a.b(x, a.ract(mod, w), z),
        a.ract_mor(a.b(x, mod, w), _ident(z)),
    )
    r2 = _report("bimodule_right", (x, mod, w, z), lhs2, rhs2)
    return r1, r2


def check_module_functor(fd: ModuleFunctorDatum, x, y, mod, side: str = "left") -> tuple:
    """Structure-map pentagon and unit triangle of a (left or right) module
    functor.  For ``side="right"`` the arguments are read as ``(M, X, Y)``
    passed in the same positions ``(x, y, mod) -> (X, Y, M)``."""
    src, tgt = fd.source, fd.target
    ctx = src.ctx
    unit = ctx.unit_object
    if side == "left":
        s = fd.s
        lhs = _chain(
            tgt.act_mor(_ident(x), s(y, mod)),
            s(x, src.act(y, mod)),
            fd.F_mor(src.m(x, y, mod)),
        )
        rhs = _chain(tgt.m(x, y, fd.F_obj(mod)), s(ctx.tensor(x, y), mod))
        pent = _report("functor_pentagon", (fd.name, x, y, mod), lhs, rhs)
        tri_l = _chain(tgt.lunit_at(fd.F_obj(mod)), s(unit, mod))
        tri_r = fd.F_mor(src.lunit_at(mod)).mat
        tri = _report("functor_unit", (fd.name, mod), tri_l, tri_r)
        return pent, tri
    if side == "right":
        sr = fd.sr
        lhs = _chain(sr(mod, ctx.tensor(x, y)), fd.F_mor(src.mr(mod, x, y)))
        rhs = _chain(
            tgt.mr(fd.F_obj(mod), x, y),
            tgt.ract_mor(sr(mod, x), _ident(y)),
            sr(src.ract(mod, x), y),
        )
        pent = _report("functor_right_pentagon", (fd.name, mod, x, y), lhs, rhs)
        tri_l = _chain(tgt.runit_at(fd.F_obj(mod)), sr(mod, unit))
        tri_r = fd.F_mor(src.runit_at(mod)).mat
        tri = _report("functor_right_unit", (fd.name, mod), tri_l, tri_r)
        return pent, tri
    raise ValueError(f"unknown side {side!r}")


def check_bimodule_functor(fd: ModuleFunctorDatum, x, mod, y) -> DiagramReport:
    """``(id_X (x) sr_{M,Y}) o s_{X,M(x)Y} o F(b_{X,M,Y})`` against
    ``p_{X,F(M),Y} o (s_{X,M} (x) id_Y) o sr_{X(x)M,Y}``."""
    if fd.s is None or fd.sr is None:
        raise MalformedConstraint("bimodule functor needs both s and sr")
    src, tgt = fd.source, fd.target
    lhs = _chain(
        tgt.act_mor(_ident(x), fd.sr(mod, y)),
        fd.s(x, src.ract(mod, y)),
        fd.F_mor(src.b(x, mod, y)),
    )
    rhs = _chain(
        tgt.b(x, fd.F_obj(mod), y),
        tgt.ract_mor(fd.s(x, mod), _ident(y)),
        fd.sr(src.act(x, mod), y),
    )
    return _report("bimodule_functor", (fd.name, x, mod, y), lhs, rhs)


def check_naturality(family: Callable, f: ModuleMorphism, mapped: Callable, induced: Callable | None = None,
                     diagram: str = "naturality", label=None) -> DiagramReport:
    """``family(target) o mapped(f) == induced(f) o family(source)``.

    ``family(obj)`` returns a morphism ``S(obj) -> T(obj)``; ``mapped`` and
    ``induced`` apply the functors ``S`` and ``T`` to morphisms
    (``induced`` defaults to the identity functor).
    """
    induced = induced or (lambda g: g)
    lhs = _chain(family(f.target), mapped(f))
    rhs = _chain(induced(f), family(f.source))
    objs = label if label is not None else (f.source, f.target)
    return _report(diagram, objs, lhs, rhs)


def check_module_transformation(theta: Callable, fd1: ModuleFunctorDatum, fd2: ModuleFunctorDatum, x, mod,
                                diagram: str = "module_transformation") -> DiagramReport:
    """``theta: F1 => F2`` is compatible with the structure maps:
    ``s2_{X,M} o theta_{X(x)M} == (id_X (x) theta_M) o s1_{X,M}``."""
    src, tgt = fd1.source, fd1.target
    lhs = _chain(fd2.s(x, mod), theta(src.act(x, mod)))
    rhs = _chain(tgt.act_mor(_ident(x), theta(mod)), fd1.s(x, mod))
    return _report(diagram, (x, mod), lhs, rhs)


def compose_module_functors(fd1: ModuleFunctorDatum, fd2: ModuleFunctorDatum, name: str = "") -> ModuleFunctorDatum:
    """``G o F`` with ``u_{X,M} = t_{X,F(M)} o G(s_{X,M})`` (and the mirrored
    right structure), for ``fd1 = (F, s)`` and ``fd2 = (G, t)``."""
    if fd1.target is not fd2.source:
        raise CompositionMismatch("target structure of the first functor is not the source of the second")
    F_obj, F_mor, G_obj, G_mor = fd1.F_obj, fd1.F_mor, fd2.F_obj, fd2.F_mor
    u = ur = None
    if fd1.s is not None and fd2.s is not None:
        def u(x, mod):
            return fd2.s(x, F_obj(mod)) @ G_mor(fd1.s(x, mod))
    if fd1.sr is not None and fd2.sr is not None:
        def ur(mod, x):
            return fd2.sr(F_obj(mod), x) @ G_mor(fd1.sr(mod, x))
    return ModuleFunctorDatum(
        lambda mod: G_obj(F_obj(mod)),
        lambda f: G_mor(F_mor(f)),
        fd1.source,
        fd2.target,
        s=u,
        sr=ur,
        name=name or f"{fd2.name}.{fd1.name}",
    )


def sample_tuples(pools, count: int, seed: int) -> list:
    """``count`` tuples drawn with replacement, one entry from each pool,
    reproducibly for a given seed."""
    rng = random.Random(seed)
    return [tuple(rng.choice(p) for p in pools) for _ in range(count)]


def sample_morphisms(m: Module, n: Module, count: int, seed: int) -> list:
    """Random integer combinations of a basis of intertwiners ``m -> n``."""
    basis = hom_basis(m, n)
    if not basis:
        return []
    rng = random.Random(seed)
    f = m.field
    out = []
    for _ in range(count):
        mat = Mat.zeros(f, n.dim, m.dim)
        for g in basis:
            mat = mat + g.mat.scale(f(rng.randint(-3, 3)))
        out.append(ModuleMorphism(m, n, mat, check=False))
    return out

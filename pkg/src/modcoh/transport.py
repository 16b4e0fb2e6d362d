"""Transport of (bi)module category structure along an equivalence.

Given ``F: M -> N`` with quasi-inverse ``G`` and natural isomorphisms
``eps: G F => id`` and ``eta: F G => id``, the category ``N`` acquires the
action ``X (x) N := F(X (x) G(N))`` and constraints built from ``m`` and
``eps`` alone.  ``eta`` only enters the unit comparisons.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .algebra import Module, ModuleMorphism
from .linalg import Mat, NotInvertible
from .modcat import ActionStructure, ModuleFunctorDatum

__all__ = [
    "DegenerateEquivalence",
    "EquivalenceDatum",
    "identity_equivalence",
    "compose_equivalences",
    "perturb_counit",
    "transport_left",
    "transport_right",
    "transport_bimodule",
    "induced_module_functors",
]


class DegenerateEquivalence(ValueError):
    pass


@dataclass(eq=False)
class EquivalenceDatum:
    """``eps(M): G(F(M)) -> M`` and ``eta(N): F(G(N)) -> N``."""

    F_obj: Callable
    F_mor: Callable
    G_obj: Callable
    G_mor: Callable
    eps: Callable
    eta: Callable
    name: str = ""
    _eps_inv: dict = field(default_factory=dict, repr=False)

    def eps_inv(self, mod: Module) -> ModuleMorphism:
        hit = self._eps_inv.get(mod)
        if hit is None:
            e = self.eps(mod)
            try:
                hit = e.inverse()
            except NotInvertible:
                raise DegenerateEquivalence(f"counit is not invertible at {mod!r}") from None
            self._eps_inv[mod] = hit
        return hit


def _id(mod: Module) -> ModuleMorphism:
    return mod.identity()


def identity_equivalence(name: str = "id") -> EquivalenceDatum:
    ident = lambda f: f
    obj = lambda mod: mod
    return EquivalenceDatum(obj, ident, obj, ident, _id, _id, name=name)


def compose_equivalences(eq1: EquivalenceDatum, eq2: EquivalenceDatum, name: str = "") -> EquivalenceDatum:
    """``F = F2 F1`` and ``G = G1 G2``, with
    ``eps_M = eps1_M o G1(eps2_{F1 M})`` and ``eta_P = eta2_P o F2(eta1_{G2 P})``."""

    def eps(mod):
        return eq1.eps(mod) @ eq1.G_mor(eq2.eps(eq1.F_obj(mod)))

    def eta(mod):
        return eq2.eta(mod) @ eq2.F_mor(eq1.eta(eq2.G_obj(mod)))

    return EquivalenceDatum(
        lambda mod: eq2.F_obj(eq1.F_obj(mod)),
        lambda f: eq2.F_mor(eq1.F_mor(f)),
        lambda mod: eq1.G_obj(eq2.G_obj(mod)),
        lambda f: eq1.G_mor(eq2.G_mor(f)),
        eps,
        eta,
        name=name or f"{eq2.name}.{eq1.name}",
    )


def perturb_counit(eq: EquivalenceDatum, name: str = "") -> EquivalenceDatum:
    """Replace ``eps_M`` by ``eps_M o (1 + E_01)`` wherever ``dim M >= 2``:
    still invertible, no longer natural nor an intertwiner in general."""

    def eps(mod):
        e = eq.eps(mod)
        d = e.mat.cols
        if d < 2:
            return e
        f = e.mat.field
        shear = Mat.identity(f, d) + Mat(f, [[f.one if (i, j) == (0, 1) else f.zero for j in range(d)] for i in range(d)])
        return ModuleMorphism(e.source, e.target, e.mat @ shear, check=False)

    return EquivalenceDatum(eq.F_obj, eq.F_mor, eq.G_obj, eq.G_mor, eps, eq.eta, name=name or f"{eq.name}~")


def _left_part(src: ActionStructure, eq: EquivalenceDatum) -> dict:
    F, Fm, G, Gm = eq.F_obj, eq.F_mor, eq.G_obj, eq.G_mor

    def act(x, n):
        return F(src.act(x, G(n)))

    def act_mor(f, g):
        return Fm(src.act_mor(f, Gm(g)))

    def m(x, y, n):
        gn = G(n)
        inner = src.act_mor(_id(x), eq.eps_inv(src.act(y, gn)))
        return Fm(inner @ src.m(x, y, gn))

    def lunit(n):
        return eq.eta(n) @ Fm(src.lunit_at(G(n)))

    return dict(act=act, act_mor=act_mor, m=m, lunit=lunit)


def _right_part(src: ActionStructure, eq: EquivalenceDatum) -> dict:
    F, Fm, G, Gm = eq.F_obj, eq.F_mor, eq.G_obj, eq.G_mor

    def ract(n, x):
        return F(src.ract(G(n), x))

    def ract_mor(g, f):
        return Fm(src.ract_mor(Gm(g), f))

    def mr(n, x, y):
        gn = G(n)
        return Fm(src.mr(gn, x, y) @ src.ract_mor(eq.eps(src.ract(gn, x)), _id(y)))

    def runit(n):
        return eq.eta(n) @ Fm(src.runit_at(G(n)))

    return dict(ract=ract, ract_mor=ract_mor, mr=mr, runit=runit)


def transport_left(src: ActionStructure, eq: EquivalenceDatum, name: str = "") -> ActionStructure:
    return ActionStructure(src.ctx, name=name or f"{src.name}/{eq.name}", **_left_part(src, eq))


def transport_right(src: ActionStructure, eq: EquivalenceDatum, name: str = "") -> ActionStructure:
    return ActionStructure(src.ctx, name=name or f"{src.name}/{eq.name}", **_right_part(src, eq))


def transport_bimodule(src: ActionStructure, eq: EquivalenceDatum, name: str = "") -> ActionStructure:
    Fm, G = eq.F_mor, eq.G_obj

    def b(x, n, z):
        gn = G(n)
        return Fm(
            src.act_mor(_id(x), eq.eps_inv(src.ract(gn, z)))
            @ src.b(x, gn, z)
            @ src.ract_mor(eq.eps(src.act(x, gn)), _id(z))
        )

    return ActionStructure(
        src.ctx, b=b, name=name or f"{src.name}/{eq.name}", **_left_part(src, eq), **_right_part(src, eq)
    )


def induced_module_functors(src: ActionStructure, tgt: ActionStructure, eq: EquivalenceDatum) -> tuple:
    """``(F, s, sr)`` from ``src`` to the transported ``tgt`` and
    ``(G, t, tr)`` back, with ``s = F(id (x) eps^-1)``,
    ``sr = F(eps^-1 (x) id)``, ``t = eps_{X (x) G(N)}``,
    ``tr = eps_{G(N) (x) X}``."""
    F, Fm, G = eq.F_obj, eq.F_mor, eq.G_obj
    s = sr = t = tr = None
    if src.act is not None:
        def s(x, mod):
            return Fm(src.act_mor(_id(x), eq.eps_inv(mod)))

        def t(x, n):
            return eq.eps(src.act(x, G(n)))
    if src.ract is not None:
        def sr(mod, x):
            return Fm(src.ract_mor(eq.eps_inv(mod), _id(x)))

        def tr(n, x):
            return eq.eps(src.ract(G(n), x))

    fdat = ModuleFunctorDatum(F, Fm, src, tgt, s=s, sr=sr, name="F")
    gdat = ModuleFunctorDatum(G, eq.G_mor, tgt, src, s=t, sr=tr, name="G")
    return fdat, gdat

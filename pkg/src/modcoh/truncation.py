"""Idempotent truncation: for a full idempotent ``e`` of ``A`` the functors

    F = e.(-):  A-mod -> eAe-mod,        G = Ae (x)_{eAe} (-)

are quasi-inverse, with

    eps_M: Ae (x)_B eM -> M,   a (x) m |-> a.m
    eta_N: e(Ae (x)_B N) -> N,  e a (x) n |-> (e a).n

Transporting the tensor action of ``A``-mod along ``(F, G, eps)`` gives the
translation functors on ``eAe``-mod.
"""
from __future__ import annotations

from .algebra import (
    Algebra,
    AlgebraMismatch,
    CornerModule,
    Idempotent,
    Module,
    ModuleMorphism,
    TensorQuotient,
    balanced_tensor,
    corner_module,
    is_full_idempotent,
    regular_module,
)
from .linalg import Mat
from .modcat import ActionStructure, tensor_action
from .monoidal import MonoidalContext
from .transport import EquivalenceDatum, transport_bimodule

__all__ = [
    "FullnessFailure",
    "TruncationDatum",
    "build_truncation_equivalence",
    "translate_left",
    "translate_right",
    "corner_bimodule_structure",
]


class FullnessFailure(ValueError):
    def __init__(self, message, span_dim=None):
        super().__init__(message)
        self.span_dim = span_dim


class TruncationDatum:
    """The equivalence ``A-mod ~ eAe-mod`` for a full idempotent."""

    def __init__(self, algebra: Algebra, e: Idempotent, ctx: MonoidalContext | None = None, name: str = ""):
        if e.algebra != algebra:
            raise AlgebraMismatch("idempotent from another algebra")
        full, span = is_full_idempotent(e)
        if not full:
            raise FullnessFailure(
                f"{e.name or 'idempotent'} is not full: span of A e A has dimension {span} < {algebra.dim}", span
            )
        self.algebra = algebra
        self.e = e
        self.ctx = ctx
        self.corner = e.corner
        self.bimodule = e.ideal
        self.name = name or (e.name or "e")
        self._F = {}
        self._G = {}
        self._eps = {}
        self._eta = {}
        pres = self.bimodule.presentation
        f = algebra.field
        # generators of Ae as elements of A, and e g_i compressed into eAe
        self._gens_ambient = [self.bimodule.basis.apply(g) for g in pres.generators]
        self._e_gens = [self.corner.compress(algebra.mult(e.coords, g)) for g in self._gens_ambient]
        # e as an element of Ae, lifted through B^r -> Ae
        e_in_ae = tuple(e.coords[p] for p in self.bimodule.pivots)
        self._e_lift = pres.lift.apply(e_in_ae)
        self._field = f
        self.eq = EquivalenceDatum(self.F_obj, self.F_mor, self.G_obj, self.G_mor, self.eps, self.eta, name=self.name)

    @property
    def B(self) -> Algebra:
        return self.corner.algebra

    # -- F = e.(-)
    def F_data(self, mod: Module) -> CornerModule:
        hit = self._F.get(mod)
        if hit is None:
            hit = corner_module(self.e, mod, name=f"{self.e.name or 'e'}.{mod.name or '?'}")
            self._F[mod] = hit
        return hit

    def F_obj(self, mod: Module) -> Module:
        return self.F_data(mod).module

    def F_mor(self, f: ModuleMorphism) -> ModuleMorphism:
        return self.F_data(f.source).map(f, self.F_data(f.target))

    # -- G = Ae (x)_B (-)
    def G_data(self, n: Module) -> TensorQuotient:
        hit = self._G.get(n)
        if hit is None:
            hit = balanced_tensor(self.bimodule, n, name=f"Ae*{n.name or '?'}")
            self._G[n] = hit
        return hit

    def G_obj(self, n: Module) -> Module:
        return self.G_data(n).module

    def G_mor(self, g: ModuleMorphism) -> ModuleMorphism:
        return self.G_data(g.source).map(g, self.G_data(g.target))

    # -- unit and counit
    def _blocks(self, mats) -> Mat:
        return mats[0].hstack(*mats[1:])

    def eps(self, mod: Module) -> ModuleMorphism:
        hit = self._eps.get(mod)
        if hit is None:
            fm = self.F_data(mod)
            tq = self.G_data(fm.module)
            cover = self._blocks([mod.rho(g) @ fm.incl for g in self._gens_ambient])
            hit = ModuleMorphism(tq.module, mod, cover @ tq.sect, check=False)
            self._eps[mod] = hit
        return hit

    def eta(self, n: Module) -> ModuleMorphism:
        hit = self._eta.get(n)
        if hit is None:
            tq = self.G_data(n)
            fgn = self.F_data(tq.module)
            cover = self._blocks([n.rho(b) for b in self._e_gens])
            hit = ModuleMorphism(fgn.module, n, cover @ tq.sect @ fgn.incl, check=False)
            self._eta[n] = hit
        return hit

    def eta_inverse_direct(self, n: Module) -> ModuleMorphism:
        """``n |-> e (x) n`` assembled directly (not by inverting ``eta``)."""
        tq = self.G_data(n)
        fgn = self.F_data(tq.module)
        r = self.bimodule.presentation.r
        db = self.B.dim
        blocks = [n.rho(self._e_lift[i * db : (i + 1) * db]) for i in range(r)]
        cover = blocks[0].vstack(*blocks[1:])
        mat = fgn.retract @ tq.proj @ cover
        return ModuleMorphism(n, fgn.module, mat, check=False)

    def eps_via_plain_tensor(self, mod: Module) -> Mat:
        """``eps_M`` recomputed through the plain tensor ``Ae (x) eM``: the
        multiplication map composed with the lift of the canonical
        surjection.  Independent of the cover coordinates used by ``eps``."""
        fm = self.F_data(mod)
        tq = self.G_data(fm.module)
        basis = self.bimodule.basis
        cols = [mod.rho(basis.col(a)) @ fm.incl for a in range(basis.cols)]
        mult = self._blocks(cols)
        return mult @ tq.lift

    def __repr__(self):
        return f"TruncationDatum({self.name}: {self.algebra.name} -> {self.B.name})"


def build_truncation_equivalence(algebra: Algebra, e: Idempotent, ctx: MonoidalContext | None = None,
                                 modules=(), name: str = "") -> TruncationDatum:
    """Build the datum and verify ``eps`` and ``eta`` are isomorphisms on the
    regular module, on every module in ``modules`` and on their corners."""
    td = TruncationDatum(algebra, e, ctx, name=name)
    for mod in (regular_module(algebra),) + tuple(modules):
        ep = td.eps(mod)
        if not ep.is_iso():
            raise FullnessFailure(f"counit not invertible at {mod!r}")
        n = td.F_obj(mod)
        if not td.eta(n).is_iso():
            raise FullnessFailure(f"unit not invertible at {n!r}")
    return td


def _structure(td: TruncationDatum) -> ActionStructure:
    if td.ctx is None:
        raise ValueError("translation functors need a monoidal context")
    st = getattr(td, "_structure", None)
    if st is None:
        st = transport_bimodule(tensor_action(td.ctx), td.eq, name=f"corner[{td.name}]")
        td._structure = st
    return st


def corner_bimodule_structure(td: TruncationDatum) -> ActionStructure:
    return _structure(td)


def translate_left(td: TruncationDatum, x: Module, n: Module) -> Module:
    """``e (X (x) (Ae (x)_B N))``."""
    if n.algebra != td.B:
        raise AlgebraMismatch("N is not a module over the corner algebra")
    return _structure(td).act(x, n)


def translate_right(td: TruncationDatum, n: Module, x: Module) -> Module:
    """``e ((Ae (x)_B N) (x) X)``."""
    if n.algebra != td.B:
        raise AlgebraMismatch("N is not a module over the corner algebra")
    return _structure(td).ract(n, x)

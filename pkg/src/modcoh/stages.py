"""Reduction by stages for nested full idempotents ``e2 <= e1``.

With ``B1 = e1 A e1``, ``e2'`` the image of ``e2`` in ``B1``, ``B0 = e2' B1 e2'``
and ``B2 = e2 A e2`` we have three truncations

    td1: A-mod ~ B1-mod,   td0: B1-mod ~ B0-mod,   td2: A-mod ~ B2-mod

and ``B0 = B2`` as subspaces of ``A``; ``theta`` is the resulting coordinate
isomorphism ``B0 -> B2``.  The stage functors between ``B2``-mod and
``B1``-mod are ``P = F1 G2`` and ``Q = F2 G1``, each with the module functor
structure obtained by composing the single-stage ones.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    Algebra,
    Idempotent,
    Module,
    ModuleMorphism,
    restrict_scalars,
)
from .linalg import Mat, kronecker, rank
from .modcat import (
    ActionStructure,
    DiagramReport,
    ModuleFunctorDatum,
    check_module_functor,
    check_module_transformation,
    check_naturality,
    compose_module_functors,
    identity_functor,
    tensor_action,
)
from .monoidal import MonoidalContext
from .transport import (
    EquivalenceDatum,
    compose_equivalences,
    induced_module_functors,
    transport_left,
)
from .truncation import FullnessFailure, TruncationDatum, corner_bimodule_structure

__all__ = [
    "StageIncompatible",
    "StagedDatum",
    "StageFunctors",
    "build_staged",
    "check_stage_factorization",
    "staged_equivalence_functors",
]


class StageIncompatible(ValueError):
    pass


class StagedDatum:
    def __init__(self, algebra: Algebra, e1: Idempotent, e2: Idempotent, ctx: MonoidalContext | None = None):
        a = algebra
        if a.mult(e1.coords, e2.coords) != e2.coords or a.mult(e2.coords, e1.coords) != e2.coords:
            raise StageIncompatible("need e1 e2 = e2 e1 = e2")
        self.algebra = a
        self.ctx = ctx
        self.e1, self.e2 = e1, e2
        self.td1 = _stage(a, e1, ctx, "first stage", "1")
        b1 = self.td1.B
        self.e2p = Idempotent(b1, self.td1.corner.compress(e2.coords), name="e2'")
        if self.td1.corner.include(self.e2p.coords) != e2.coords:
            raise StageIncompatible("e2 does not lie in e1 A e1")
        self.td0 = _stage(b1, self.e2p, None, "second stage", "0")
        self.td2 = _stage(a, e2, ctx, "direct truncation", "2")
        # B0 basis in A coordinates, read at the pivots of B2
        in_a = self.td1.corner.incl @ self.td0.corner.incl
        self.theta = in_a.submatrix(self.td2.corner.pivots, range(in_a.cols))
        if self.td2.corner.incl @ self.theta != in_a or not self.theta.is_invertible():
            raise StageIncompatible("e2 A e2 and e2' B1 e2' differ")
        self.theta_inv = self.theta.inverse()
        self._res = {}
        self._unres = {}
        self._relabel = None

    @property
    def B0(self) -> Algebra:
        return self.td0.B

    @property
    def B1(self) -> Algebra:
        return self.td1.B

    @property
    def B2(self) -> Algebra:
        return self.td2.B

    def theta_is_algebra_map(self) -> bool:
        b0, b2 = self.B0, self.B2
        th = self.theta
        if th.apply(b0.unit) != b2.unit:
            return False
        for i in range(b0.dim):
            for j in range(b0.dim):
                x, y = b0.basis_vector(i), b0.basis_vector(j)
                if th.apply(b0.mult(x, y)) != b2.mult(th.apply(x), th.apply(y)):
                    return False
        return True

    def res(self, n: Module) -> Module:
        """A ``B2``-module viewed over ``B0`` through ``theta``."""
        hit = self._res.get(n)
        if hit is None:
            hit = restrict_scalars(n, self.B0, self.theta, name=n.name)
            self._res[n] = hit
            self._unres[hit] = n
        return hit

    def unres(self, n: Module) -> Module:
        hit = self._unres.get(n)
        if hit is None:
            hit = restrict_scalars(n, self.B2, self.theta_inv, name=n.name)
            self._unres[n] = hit
            self._res[hit] = n
        return hit

    @property
    def relabel(self) -> EquivalenceDatum:
        """The isomorphism of categories ``B0-mod -> B2-mod``."""
        if self._relabel is None:
            def mor(conv):
                return lambda f: ModuleMorphism(conv(f.source), conv(f.target), f.mat, check=False)

            self._relabel = EquivalenceDatum(
                self.unres, mor(self.unres), self.res, mor(self.res),
                lambda m: m.identity(), lambda n: n.identity(), name="theta",
            )
        return self._relabel

    @property
    def staged_equivalence(self) -> EquivalenceDatum:
        """``A-mod -> B1-mod -> B0-mod -> B2-mod`` as one equivalence."""
        hit = getattr(self, "_staged_eq", None)
        if hit is None:
            hit = compose_equivalences(compose_equivalences(self.td1.eq, self.td0.eq), self.relabel, name="staged")
            self._staged_eq = hit
        return hit

    def comparison(self, mod: Module) -> ModuleMorphism:
        """``phi_M: e2'(e1 M) -> e2 M`` (the staged ``F`` against ``F2``)."""
        c1 = self.td1.F_data(mod)
        c0 = self.td0.F_data(c1.module)
        c2 = self.td2.F_data(mod)
        mat = c2.retract @ c1.incl @ c0.incl
        src = self.unres(c0.module)
        return ModuleMorphism(src, c2.module, mat, check=False)

    def xi(self, n: Module) -> ModuleMorphism:
        """``G1 G0 (N) -> G2 N``: ``a (x) (b (x) n) |-> a b (x) n``."""
        a = self.algebra
        td1, td0, td2 = self.td1, self.td0, self.td2
        n0 = self.res(n)
        q0 = td0.G_data(n0)
        q1 = td1.G_data(q0.module)
        q2 = td2.G_data(n)
        f = a.field
        eye = Mat.identity(f, n.dim)
        blocks = []
        for g1 in td1._gens_ambient:
            for g0 in td0._gens_ambient:
                prod = a.mult(g1, td1.corner.include(g0))
                p = Mat.column(f, tuple(prod[k] for k in td2.bimodule.pivots))
                blocks.append(q2.surjection @ kronecker(p, eye))
        h = blocks[0].hstack(*blocks[1:])
        r1 = td1.bimodule.presentation.r
        mat = h @ kronecker(Mat.identity(f, r1), q0.sect) @ q1.sect
        return ModuleMorphism(q1.module, q2.module, mat, check=False)

    def zeta(self, n: Module) -> ModuleMorphism:
        """``G0(N) -> F1 G2 (N)``: ``b (x) n |-> b (x) n`` with ``b in B1 e2'``
        viewed inside ``A e2``."""
        a = self.algebra
        td1, td0, td2 = self.td1, self.td0, self.td2
        q0 = td0.G_data(self.res(n))
        q2 = td2.G_data(n)
        c = td1.F_data(q2.module)
        f = a.field
        eye = Mat.identity(f, n.dim)
        blocks = []
        for g0 in td0._gens_ambient:
            amb = td1.corner.include(g0)
            p = Mat.column(f, tuple(amb[k] for k in td2.bimodule.pivots))
            blocks.append(q2.surjection @ kronecker(p, eye))
        mat = c.retract @ blocks[0].hstack(*blocks[1:]) @ q0.sect
        return ModuleMorphism(q0.module, c.module, mat, check=False)

    def __repr__(self):
        return f"StagedDatum({self.algebra.name}: {self.B1.name} -> {self.B2.name})"


def _stage(a, e, ctx, label, tag):
    try:
        return TruncationDatum(a, e, ctx, name=e.name or f"e{tag}")
    except FullnessFailure as exc:
        raise FullnessFailure(f"{label}: {exc}", exc.span_dim) from None


def build_staged(algebra: Algebra, e1: Idempotent, e2: Idempotent, ctx: MonoidalContext | None = None) -> StagedDatum:
    return StagedDatum(algebra, e1, e2, ctx)


def check_stage_factorization(sd: StagedDatum, mod: Module) -> DiagramReport:
    """``e2 M == e2'(e1 M)`` as subspaces of ``M``, with the ``B2``- and
    ``B0``-actions matching through ``theta``."""
    c1 = sd.td1.F_data(mod)
    c0 = sd.td0.F_data(c1.module)
    c2 = sd.td2.F_data(mod)
    staged = c1.incl @ c0.incl
    direct = c2.incl
    ok = staged.cols == direct.cols and rank(staged.hstack(direct)) == direct.cols == rank(staged)
    if ok:
        coords = c2.retract @ staged
        ok = c2.incl @ coords == staged
        if ok:
            for j in range(sd.B0.dim):
                y = sd.B0.basis_vector(j)
                if c2.module.rho(sd.theta.apply(y)) @ coords != coords @ c0.module.rho(y):
                    ok = False
                    break
    return DiagramReport("stage_factorization", (mod.name or "?",), ok)


@dataclass(eq=False)
class StageFunctors:
    """``P = F1 G2: B2-mod -> B1-mod`` with ``u`` and ``Q = F2 G1`` with
    ``v``, between the transported structures ``N2`` and ``N1``."""

    P: ModuleFunctorDatum
    Q: ModuleFunctorDatum
    QP: ModuleFunctorDatum
    PQ: ModuleFunctorDatum
    N1: ActionStructure
    N2: ActionStructure
    kappa: object
    kappa_prime: object


def stage_functors(sd: StagedDatum) -> StageFunctors:
    if sd.ctx is None:
        raise ValueError("stage functors need a monoidal context")
    src = tensor_action(sd.ctx)
    n1 = corner_bimodule_structure(sd.td1)
    n2 = corner_bimodule_structure(sd.td2)
    f1, g1 = induced_module_functors(src, n1, sd.td1.eq)
    f2, g2 = induced_module_functors(src, n2, sd.td2.eq)
    f1.name, g1.name, f2.name, g2.name = "F1", "G1", "F2", "G2"
    p = compose_module_functors(g2, f1, name="P")
    q = compose_module_functors(g1, f2, name="Q")
    qp = compose_module_functors(p, q, name="QP")
    pq = compose_module_functors(q, p, name="PQ")
    td1, td2 = sd.td1, sd.td2

    def kappa(n):
        # F2 G1 F1 G2 N -> F2 G2 N -> N
        return td2.eta(n) @ td2.F_mor(td1.eps(td2.G_obj(n)))

    def kappa_prime(n):
        return td1.eta(n) @ td1.F_mor(td2.eps(td1.G_obj(n)))

    return StageFunctors(p, q, qp, pq, n1, n2, kappa, kappa_prime)


def _iso_report(diagram, label, g: ModuleMorphism) -> DiagramReport:
    ok = g.mat.rows == g.mat.cols and g.is_iso() and g.is_intertwiner()
    return DiagramReport(diagram, label, ok)


def staged_equivalence_functors(sd: StagedDatum, objects, n1s=(), n2s=(), morphisms=()) -> tuple:
    """Stage functors plus every report: ``u``/``v`` module functor
    diagrams, ``kappa``/``kappa'`` as invertible module transformations,
    ``zeta``/``xi`` comparisons, the counit triangle relating the staged and
    direct truncations, the comparison module functor between their
    transported structures, and ``eta0`` against ``n |-> e2' (x) n``.

    ``objects`` are acting modules, ``n1s``/``n2s`` modules over ``B1``/``B2``
    and ``morphisms`` intertwiners between ``A``-modules used for
    naturality squares.
    """
    sf = stage_functors(sd)
    reports = []
    for x in objects:
        for y in objects:
            for n in n2s:
                reports += check_module_functor(sf.P, x, y, n)
                reports += check_module_functor(sf.P, x, y, n, side="right")
            for n in n1s:
                reports += check_module_functor(sf.Q, x, y, n)
                reports += check_module_functor(sf.Q, x, y, n, side="right")
    id2, id1 = identity_functor(sf.N2), identity_functor(sf.N1)
    for n in n2s:
        reports.append(_iso_report("kappa_iso", (n.name,), sf.kappa(n)))
        for x in objects:
            reports.append(check_module_transformation(sf.kappa, sf.QP, id2, x, n, diagram="kappa_module"))
    for n in n1s:
        reports.append(_iso_report("kappa_prime_iso", (n.name,), sf.kappa_prime(n)))
        for x in objects:
            reports.append(check_module_transformation(sf.kappa_prime, sf.PQ, id1, x, n, diagram="kappa_prime_module"))

    # comparison of the staged and direct equivalences
    eq_s = sd.staged_equivalence
    td2 = sd.td2
    for n in n2s:
        reports.append(_iso_report("xi_iso", (n.name,), sd.xi(n)))
        z = sd.zeta(n)
        ok = z.is_iso() and z.is_intertwiner() and z.target == sf.P.F_obj(n)
        reports.append(DiagramReport("zeta_iso", (n.name,), ok))
        n0 = sd.res(n)
        e0 = sd.td0.eta(n0)
        d0 = sd.td0.eta_inverse_direct(n0)
        ok = (e0 @ d0).mat.is_identity() and (d0 @ e0).mat.is_identity()
        reports.append(DiagramReport("eta0_inverse", (n.name,), ok))
    seen = []
    for mod in list(objects) + [g.source for g in morphisms] + [g.target for g in morphisms]:
        if mod in seen:
            continue
        seen.append(mod)
        reports.append(_iso_report("phi_iso", (mod.name,), sd.comparison(mod)))
        # eps2_M o xi_{F2 M} o G_S(phi_M) == eps_S_M
        f2m = td2.F_obj(mod)
        lhs = (td2.eps(mod) @ sd.xi(f2m) @ eq_s.G_mor(sd.comparison(mod))).mat
        rhs = eq_s.eps(mod).mat
        reports.append(DiagramReport("counit_triangle", (mod.name,), lhs == rhs, None if lhs == rhs else lhs, None if lhs == rhs else rhs))
    for g in morphisms:
        reports.append(check_naturality(sd.comparison, g, eq_s.F_mor, td2.F_mor, diagram="phi_natural",
                                        label=(g.source.name, g.target.name)))
        gs = td2.F_mor(g)
        reports.append(check_naturality(sd.xi, gs, eq_s.G_mor, td2.G_mor, diagram="xi_natural",
                                        label=(gs.source.name, gs.target.name)))

    cmp = comparison_functor(sd, sf.N2)
    for x in objects:
        for y in objects:
            for n in n2s:
                reports += check_module_functor(cmp, x, y, n)
    return sf, reports


def comparison_functor(sd: StagedDatum, direct: ActionStructure) -> ModuleFunctorDatum:
    """The identity of ``B2``-mod as a module functor from the structure
    transported along the staged equivalence to the directly transported
    one, with ``c_{X,N} = F2(id_X (x) xi_N) o phi_{X (x) G_S N}``."""
    src = tensor_action(sd.ctx)
    eq_s = sd.staged_equivalence
    staged = getattr(sd, "_staged_structure", None)
    if staged is None:
        staged = transport_left(src, eq_s, name="staged")
        sd._staged_structure = staged
    td2 = sd.td2

    def c(x, n):
        inner = src.act(x, eq_s.G_obj(n))
        return td2.F_mor(src.act_mor(x.identity(), sd.xi(n))) @ sd.comparison(inner)

    return ModuleFunctorDatum(lambda n: n, lambda f: f, staged, direct, s=c, name="cmp")

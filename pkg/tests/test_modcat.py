from dataclasses import replace

import pytest

from modcoh.algebra import ModuleMorphism
from modcoh.linalg import QQ, Mat
from modcoh.modcat import (
    CompositionMismatch,
    DiagramReport,
    MalformedConstraint,
    ModuleFunctorDatum,
    check_bimodule_axioms,
    check_bimodule_functor,
    check_module_functor,
    check_naturality,
    check_pentagon,
    check_right_pentagon,
    compose_module_functors,
    identity_functor,
    sample_morphisms,
    sample_tuples,
    tensor_action,
)


def bump(g: ModuleMorphism) -> ModuleMorphism:
    """Add 1 to the top-left entry."""
    f = g.mat.field
    d = [list(r) for r in g.mat.data]
    d[0][0] = d[0][0] + f.one
    return ModuleMorphism(g.source, g.target, Mat(f, d, cols=g.mat.cols), check=False)


def mutated(fd: ModuleFunctorDatum, which="s") -> ModuleFunctorDatum:
    orig = getattr(fd, which)
    return replace(fd, **{which: lambda a, b: bump(orig(a, b))}, name=fd.name + "~")


def test_tensor_action_coherent(s3):
    st = tensor_action(s3.ctx)
    assert tensor_action(s3.ctx) is st and st.side == "bimodule"
    objs = s3.simples
    for x, y, z, m in sample_tuples([objs] * 4, 20, 0):
        assert check_pentagon(st, x, y, z, m).passed
        assert check_right_pentagon(st, m, x, y, z).passed
    for x, y, m, w, z in sample_tuples([objs] * 5, 20, 1):
        assert all(check_bimodule_axioms(st, x, y, m, w, z))


def test_identity_functor(s3):
    st = tensor_action(s3.ctx)
    ident = identity_functor(st)
    t, v = s3.triv, s3.V
    assert all(check_module_functor(ident, v, v, t))
    assert all(check_module_functor(ident, v, t, v, side="right"))
    assert check_bimodule_functor(ident, v, v, s3.sgn).passed


def test_report_line_and_bool():
    r = DiagramReport("pentagon", ("a", "b"), False)
    assert not r
    assert r.line("transport") == "transport pentagon (a,b) FAIL"


def test_mutated_s_fails(s3):
    bad = mutated(s3.F, "s")
    reports = [r for x in s3.simples for y in s3.simples for m in s3.simples
               for r in check_module_functor(bad, x, y, m)]
    failing = [r for r in reports if not r.passed]
    assert failing
    assert failing[0].lhs != failing[0].rhs


def test_mutated_sr_fails(s3):
    bad = mutated(s3.F, "sr")
    reports = [r for x in s3.simples for y in s3.simples for m in s3.simples
               for r in check_module_functor(bad, x, y, m, side="right")]
    assert not all(reports)


def test_mutated_bimodule_functor_fails(s3):
    bad = mutated(s3.G, "s")
    reports = [check_bimodule_functor(bad, x, n, y) for x in s3.simples for n in s3.corners for y in s3.simples]
    assert not all(reports)
    assert all(check_bimodule_functor(s3.G, x, n, y) for x in s3.simples for n in s3.corners for y in s3.simples)


def test_composition_and_mutation(s3):
    gf = compose_module_functors(s3.F, s3.G)
    assert gf.name == "G.F"
    assert all(r for x in s3.simples for y in s3.simples for m in s3.simples
               for r in check_module_functor(gf, x, y, m))
    bad = compose_module_functors(mutated(s3.F, "s"), mutated(s3.G, "s"))
    assert not all(r for x in s3.simples for y in s3.simples for m in s3.simples
                   for r in check_module_functor(bad, x, y, m))
    with pytest.raises(CompositionMismatch):
        compose_module_functors(s3.F, s3.F)


def test_bimodule_functor_needs_both_sides(s3):
    with pytest.raises(MalformedConstraint):
        check_bimodule_functor(replace(s3.F, sr=None), s3.V, s3.V, s3.V)


def test_naturality_identity_family(s3):
    reg = s3.regular
    for g in sample_morphisms(reg, reg, 3, 2):
        assert check_naturality(lambda m: m.identity(), g, lambda h: h).passed


def test_naturality_detects_non_natural_counit(s3):
    td = s3.td
    reg = s3.regular
    morphs = sample_morphisms(reg, reg, 5, 4) + sample_morphisms(reg, s3.V, 3, 5)
    square = lambda fam: [check_naturality(fam, g, lambda h: td.G_mor(td.F_mor(h))) for g in morphs]
    assert all(square(td.eps))

    def bad_eps(m):
        e = td.eps(m)
        if m is not reg:
            return e
        shear = Mat.identity(QQ, m.dim) + Mat(QQ, [[1 if (i, j) == (0, 1) else 0 for j in range(6)] for i in range(6)])
        return ModuleMorphism(e.source, e.target, e.mat @ shear, check=False)

    assert not all(square(bad_eps))


def test_sampling_is_reproducible(s3):
    objs = s3.simples
    assert sample_tuples([objs] * 3, 10, 9) == sample_tuples([objs] * 3, 10, 9)
    a = [g.mat for g in sample_morphisms(s3.regular, s3.regular, 4, 1)]
    b = [g.mat for g in sample_morphisms(s3.regular, s3.regular, 4, 1)]
    assert a == b
    assert all(g.is_intertwiner() for g in sample_morphisms(s3.regular, s3.V, 4, 1))
    assert sample_morphisms(s3.V, s3.triv, 3, 0) == []

from itertools import product

import pytest

from modcoh.algebra import Idempotent, direct_sum
from modcoh.groups import rank_idempotent
from modcoh.modcat import check_pentagon, sample_morphisms
from modcoh.stages import (
    StageIncompatible,
    build_staged,
    check_stage_factorization,
    comparison_functor,
    stage_functors,
    staged_equivalence_functors,
)
from modcoh.transport import compose_equivalences, induced_module_functors, transport_left
from modcoh.truncation import FullnessFailure


@pytest.fixture(scope="module")
def nested(s3):
    # e1 = 1 (rank 2 on the 2-dim simple is the full block), e2 basic
    e1 = Idempotent(s3.alg, rank_idempotent(s3.alg, s3.simples, (1, 1, 2)), name="e1")
    assert e1.coords == s3.alg.unit
    return build_staged(s3.alg, e1, s3.e, s3.ctx)


def test_incompatible_and_nonfull(s3):
    one = Idempotent(s3.alg, s3.alg.unit, name="one")
    with pytest.raises(StageIncompatible):
        build_staged(s3.alg, s3.e, one, s3.ctx)
    part = Idempotent(s3.alg, rank_idempotent(s3.alg, s3.simples, (1, 0, 1)), name="p")
    with pytest.raises(FullnessFailure, match="first stage"):
        build_staged(s3.alg, part, part, s3.ctx)


def test_dimensions_and_theta(nested):
    assert (nested.B1.dim, nested.B0.dim, nested.B2.dim) == (6, 3, 3)
    assert nested.theta_is_algebra_map()


def test_factorization(s3, nested):
    mods = [s3.regular] + s3.simples + [direct_sum(s3.V, s3.V, s3.sgn)]
    for m in mods:
        assert check_stage_factorization(nested, m).passed


def test_equal_idempotents(s3):
    sd = build_staged(s3.alg, s3.e, s3.e, s3.ctx)
    assert sd.B0.dim == sd.B1.dim == sd.B2.dim == 3
    for m in s3.simples + [s3.regular]:
        assert check_stage_factorization(sd, m).passed
    n2s = [sd.td2.F_obj(m).renamed("N2_" + m.name) for m in s3.simples]
    n1s = [sd.td1.F_obj(m).renamed("N1_" + m.name) for m in s3.simples]
    _, reports = staged_equivalence_functors(sd, s3.simples, n1s, n2s)
    assert reports and all(reports)


def test_first_stage_identity_gives_u_equal_t2(s3, nested):
    sf = stage_functors(nested)
    # F1 = identity up to basis, so u = s1 o F1(t2) is t2 itself
    _, g2 = induced_module_functors(s3.src, sf.N2, nested.td2.eq)
    for x, m in product(s3.simples, s3.simples):
        n = nested.td2.F_obj(m)
        assert sf.P.s(x, n).mat == g2.s(x, n).mat


def test_stage_reports(s3, nested):
    n2s = [nested.td2.F_obj(m).renamed("N2_" + m.name) for m in s3.simples]
    n1s = [nested.td1.F_obj(m).renamed("N1_" + m.name) for m in s3.simples]
    morphs = sample_morphisms(s3.regular, s3.regular, 2, 1) + sample_morphisms(s3.regular, s3.V, 1, 2)
    _, reports = staged_equivalence_functors(nested, s3.simples, n1s, n2s, morphs)
    kinds = {r.diagram for r in reports}
    for k in ("functor_pentagon", "functor_right_pentagon", "kappa_iso", "kappa_module", "xi_iso", "zeta_iso",
              "eta0_inverse", "phi_iso", "counit_triangle", "phi_natural", "xi_natural"):
        assert k in kinds
    assert all(reports), [r.line("stages") for r in reports if not r][:3]


def test_comparison_functor(s3, nested):
    sf = stage_functors(nested)
    cmp = comparison_functor(nested, sf.N2)
    n = nested.td2.F_obj(s3.V)
    for x in s3.simples:
        assert cmp.s(x, n).is_iso()
    for x, y, z in product(s3.simples, repeat=3):
        assert check_pentagon(cmp.source, x, y, z, n).passed


def test_transport_twice_equals_once(s3, nested):
    once = transport_left(s3.src, compose_equivalences(nested.td1.eq, nested.td0.eq))
    twice = transport_left(transport_left(s3.src, nested.td1.eq), nested.td0.eq)
    n = nested.td0.F_obj(nested.td1.F_obj(s3.V))
    for x, y in product(s3.simples, repeat=2):
        assert once.act(x, n) == twice.act(x, n)
        assert once.m(x, y, n).mat == twice.m(x, y, n).mat

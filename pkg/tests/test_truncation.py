from itertools import product

import pytest

from modcoh.algebra import AlgebraMismatch, Idempotent, hom_basis, make_group_algebra, regular_module
from modcoh.groups import cyclic_group, inverse_table, rank_idempotent, specht_modules, symmetric_group
from modcoh.linalg import QQ, rank
from modcoh.modcat import check_naturality, check_pentagon, sample_morphisms
from modcoh.monoidal import MonoidalContext, hopf_from_group
from modcoh.truncation import (
    FullnessFailure,
    TruncationDatum,
    build_truncation_equivalence,
    corner_bimodule_structure,
    translate_left,
    translate_right,
)


def test_unit_idempotent_is_identity_like(s3):
    td = build_truncation_equivalence(s3.alg, Idempotent(s3.alg, s3.alg.unit), s3.ctx, s3.simples)
    assert td.B.dim == 6
    for m in s3.simples:
        assert td.F_obj(m).action == m.action
        assert td.eps(m).mat.is_identity()
        assert td.eta(td.F_obj(m)).mat.is_identity()


def test_c2_not_full():
    alg = make_group_algebra(cyclic_group(2))
    e = Idempotent(alg, (QQ("1/2"), QQ("1/2")), name="e")
    with pytest.raises(FullnessFailure) as info:
        build_truncation_equivalence(alg, e)
    assert info.value.span_dim == 1


def test_eps_eta_isomorphisms_and_naturality(s3):
    td = s3.td
    for m in s3.simples + [s3.regular]:
        ep = td.eps(m)
        assert ep.is_iso() and ep.is_intertwiner()
        assert td.eps_via_plain_tensor(m) == ep.mat
    for n in s3.corners + [td.F_obj(s3.regular)]:
        et = td.eta(n)
        assert et.is_iso() and et.is_intertwiner()
        assert (et @ td.eta_inverse_direct(n)).mat.is_identity()
    reg = s3.regular
    for src, tgt in product([reg, s3.V], repeat=2):
        for g in sample_morphisms(src, tgt, 2, 3):
            assert check_naturality(td.eps, g, lambda h: td.G_mor(td.F_mor(h))).passed
    nreg = td.F_obj(reg)
    for g in sample_morphisms(nreg, nreg, 3, 4):
        assert check_naturality(td.eta, g, lambda h: td.F_mor(td.G_mor(h))).passed


def test_triangle_identities(s3):
    td = s3.td
    for m in s3.simples + [s3.regular]:
        # eta_{FM} and F(eps_M) agree as maps FGF(M) -> F(M)
        lhs = td.eta(td.F_obj(m)).mat
        rhs = td.F_mor(td.eps(m)).mat
        assert lhs == rhs


def test_translation_dimensions(s3):
    td = s3.td
    n_triv, n_sgn, n_v = s3.corners
    vn = translate_left(td, s3.V, n_v)
    assert vn.dim == 3
    assert [len(hom_basis(n, vn)) for n in s3.corners] == [1, 1, 1]
    for n in s3.corners:
        assert translate_left(td, s3.triv, n).dim == n.dim
        assert translate_right(td, n, s3.triv).dim == n.dim
    assert translate_left(td, s3.sgn, n_triv).dim == 1
    assert len(hom_basis(n_sgn, translate_left(td, s3.sgn, n_triv))) == 1
    with pytest.raises(AlgebraMismatch):
        translate_left(td, s3.V, s3.V)


def test_translation_matches_character_oracle(s3):
    # dim e(X (x) Y) = sum over simples S of mult(S, X (x) Y) * rank(e on S),
    # and G(N_S) ~ S because e has rank one on every simple
    td = s3.td
    for x, (s, n) in product(s3.simples, zip(s3.simples, s3.corners)):
        xy = s3.ctx.tensor(x, s)
        expected = sum(len(hom_basis(t, xy)) for t in s3.simples)
        assert translate_left(td, x, n).dim == expected


def test_corner_structure_cached(s3):
    assert corner_bimodule_structure(s3.td) is s3.st


def test_without_context(s3):
    td = TruncationDatum(s3.alg, s3.e)
    with pytest.raises(ValueError):
        translate_left(td, s3.V, s3.corners[0])


def test_basis_independence():
    """Relabel S3 by a permutation of its elements: every check still passes
    and all dimensions agree."""
    elems, table = symmetric_group(3)
    perm = [3, 0, 5, 1, 4, 2]  # new index of old element i
    old_of = {perm[i]: i for i in range(6)}
    new_table = [[perm[table[old_of[a]][old_of[b]]] for b in range(6)] for a in range(6)]
    alg = make_group_algebra(new_table, name="S3p")
    alg.elements = [elems[old_of[a]] for a in range(6)]
    ctx = MonoidalContext(hopf_from_group(new_table, algebra=alg))
    simples = specht_modules(alg)
    e = Idempotent(alg, rank_idempotent(alg, simples, (1, 1, 1)), name="e")
    td = build_truncation_equivalence(alg, e, ctx, simples)
    corners = [td.F_obj(m) for m in simples]
    assert [c.dim for c in corners] == [1, 1, 1]
    assert td.B.dim == 3
    st = corner_bimodule_structure(td)
    for x, y, z, n in product(simples, simples, simples, corners):
        assert check_pentagon(st, x, y, z, n).passed
    assert translate_left(td, simples[2], corners[2]).dim == 3
    assert inverse_table(new_table)[perm[0]] == perm[0]
    assert rank(regular_module(alg).rho(e.coords)) == 4

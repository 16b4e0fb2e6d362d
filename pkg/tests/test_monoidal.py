import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modcoh.algebra import AlgebraMismatch, ModuleMorphism, hom_basis, make_group_algebra, regular_module
from modcoh.groups import character, cyclic_group, inverse_table, specht_modules, symmetric_group_algebra
from modcoh.linalg import QQ, Mat, ShapeError
from modcoh.monoidal import (
    HopfData,
    MonoidalContext,
    binomial_expansion,
    diagonal_operator,
    hopf_from_group,
    naive_expansion,
    nilpotency_index,
    nilpotent_expansion_check,
    tensor_modules,
)
from modcoh.suites import random_nilpotent


def jordan(n, lam=0):
    return Mat(QQ, [[lam if i == j else (1 if j == i + 1 else 0) for j in range(n)] for i in range(n)])


@pytest.fixture(scope="module")
def s3ctx():
    alg = symmetric_group_algebra(3)
    return alg, MonoidalContext(hopf_from_group(alg.group_table, algebra=alg)), specht_modules(alg)


def test_hopf_trivial_and_c2():
    h = hopf_from_group([[0]])
    assert h.comul == Mat(QQ, [[1]]) and h.antipode == Mat(QQ, [[1]]) and h.counit == (QQ(1),)
    h2 = hopf_from_group(cyclic_group(2))
    assert h2.antipode.is_identity()
    assert h2.validate() == []


def test_hopf_s3_antipode_is_inversion(s3ctx):
    alg, ctx, _ = s3ctx
    inv = inverse_table(alg.group_table)
    s = ctx.hopf.antipode
    for g in range(6):
        assert s.col(g) == alg.basis_vector(inv[g])


def test_hopf_mutation_detected():
    h = hopf_from_group(cyclic_group(3))
    bad = list(h.counit)
    bad[1] = QQ(2)
    with pytest.raises(ValueError):
        HopfData(h.algebra, h.comul, bad, h.antipode)
    anti = Mat.identity(QQ, 3)  # not the inversion for C3
    with pytest.raises(ValueError):
        HopfData(h.algebra, h.comul, h.counit, anti)


def test_tensor_with_unit_is_literal(s3ctx):
    _, ctx, simples = s3ctx
    triv = ctx.unit_object
    for x in simples + [regular_module(ctx.algebra)]:
        assert ctx.tensor(triv, x).action == x.action
        assert ctx.tensor(x, triv).action == x.action


def test_sgn_squared_is_triv(s3ctx):
    _, ctx, (triv, sgn, v) = s3ctx
    assert tensor_modules(ctx, sgn, sgn).action == triv.action


def test_v_tensor_v_character(s3ctx):
    alg, ctx, (triv, sgn, v) = s3ctx
    vv = ctx.tensor(v, v)
    assert vv.dim == 4
    chi = character(vv)
    # identity, a transposition, a 3-cycle
    reps = [alg.elements.index(p) for p in [(0, 1, 2), (1, 0, 2), (1, 2, 0)]]
    assert tuple(chi[g] for g in reps) == (4, 0, 1)
    # triv + sgn + V: one copy of each simple
    assert [len(hom_basis(s, vv)) for s in (triv, sgn, v)] == [1, 1, 1]


def test_strict_associativity(s3ctx):
    _, ctx, simples = s3ctx
    for x in simples:
        for y in simples:
            for z in simples:
                assert ctx.tensor(ctx.tensor(x, y), z).action == ctx.tensor(x, ctx.tensor(y, z)).action
                assert ctx.associator(x, y, z).mat.is_identity()


def test_tensor_bifunctor(s3ctx):
    alg, ctx, (triv, sgn, v) = s3ctx
    reg = regular_module(alg)
    rng = random.Random(5)

    def rand_endo(m):
        acc = Mat.zeros(QQ, m.dim, m.dim)
        for g in hom_basis(m, m):
            acc = acc + g.mat.scale(QQ(rng.randint(-2, 2)))
        return ModuleMorphism(m, m, acc)

    for _ in range(3):
        f1, f2, g1, g2 = rand_endo(v), rand_endo(v), rand_endo(reg), rand_endo(reg)
        lhs = ctx.tensor_mor(f1, g1) @ ctx.tensor_mor(f2, g2)
        rhs = ctx.tensor_mor(f1 @ f2, g1 @ g2)
        assert lhs.mat == rhs.mat
        assert lhs.is_intertwiner()


def test_tensor_mismatch(s3ctx):
    _, ctx, simples = s3ctx
    other = regular_module(make_group_algebra(cyclic_group(2)))
    with pytest.raises(AlgebraMismatch):
        ctx.tensor(simples[0], other)


def test_diagonal_operator_examples():
    z2 = Mat.zeros(QQ, 2, 2)
    assert diagonal_operator(z2, z2).is_zero()
    assert diagonal_operator(Mat(QQ, [[3]]), Mat(QQ, [[4]])) == Mat(QQ, [[7]])
    d = diagonal_operator(jordan(2), jordan(2))
    assert d.power(2) != Mat.zeros(QQ, 4, 4) and d.power(3).is_zero()
    assert nilpotency_index(d) == 3
    with pytest.raises(ShapeError):
        diagonal_operator(Mat(QQ, [[1, 2]]), z2)


def test_expansion_small_k():
    yx, yz = jordan(2), jordan(3)
    x, z = (QQ(1), QQ(2)), (QQ(0), QQ(1), QQ(-1))
    assert nilpotent_expansion_check(yx, yz, QQ(5), 0, [(x, z)])
    # k = 1, psi = 0: D(x (x) z) = yx x (x) z + x (x) yz z
    d = diagonal_operator(yx, yz)
    assert binomial_expansion(yx, yz, QQ(0), 1) == d
    assert nilpotent_expansion_check(yx, yz, QQ(0), 1, [(x, z)])


def test_expansion_jordan_psi_two_against_matrix_powers():
    yx, yz = jordan(2), jordan(2)
    psi = QQ(2)
    d = diagonal_operator(yx, yz)
    shifted = d - Mat.scalar(QQ, psi, 4)
    rng = random.Random(11)
    probes = [(tuple(QQ(rng.randint(-3, 3)) for _ in range(2)), tuple(QQ(rng.randint(-3, 3)) for _ in range(2)))
              for _ in range(3)]
    for k in range(4):
        assert binomial_expansion(yx, yz, psi, k) == shifted.power(k)
        assert nilpotent_expansion_check(yx, yz, psi, k, probes)


def test_naive_expansion_fails_from_k_two():
    yx, yz = jordan(2), jordan(2)
    psi = QQ(2)
    shifted = diagonal_operator(yx, yz) - Mat.scalar(QQ, psi, 4)
    assert naive_expansion(yx, yz, psi, 1) == shifted
    assert naive_expansion(yx, yz, psi, 2) != shifted.power(2)


def test_index_bound_example():
    # p = 3, q = 2 gives index exactly 4 = p + q - 1
    d = diagonal_operator(jordan(3), jordan(2))
    assert nilpotency_index(d) == 4
    assert nilpotency_index(jordan(1, 1)) is None


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.integers(-3, 3), st.integers(0, 2**20))
def test_expansion_random_nilpotent(dx, dz, psi, seed):
    rng = random.Random(seed)
    yx, yz = random_nilpotent(QQ, dx, rng), random_nilpotent(QQ, dz, rng)
    p, q = nilpotency_index(yx), nilpotency_index(yz)
    assert p is not None and q is not None
    probe = [(QQ(2), tuple(QQ(rng.randint(-2, 2)) for _ in range(dx)), tuple(QQ(rng.randint(-2, 2)) for _ in range(dz)))]
    for k in range(p + q):
        assert nilpotent_expansion_check(yx, yz, QQ(psi), k, [probe])
    assert nilpotency_index(diagonal_operator(yx, yz)) <= p + q - 1


def test_binomial_coefficients_used():
    # scalar case: (a + b - psi)^k = sum binom(k, j) (a - psi)^j b^(k - j)
    a, b, psi = 3, 5, 2
    for k in range(6):
        m = binomial_expansion(Mat(QQ, [[a]]), Mat(QQ, [[b]]), QQ(psi), k)
        assert m == Mat(QQ, [[sum(comb(k, j) * (a - psi) ** j * b ** (k - j) for j in range(k + 1))]])

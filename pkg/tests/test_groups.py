from itertools import product

import pytest

from modcoh.algebra import Module, validate_module
from modcoh.groups import (
    central_idempotent,
    character,
    cyclic_group,
    inverse_table,
    module_from_generators,
    partitions,
    rank_idempotent,
    sign,
    specht_modules,
    symmetric_group,
    symmetric_group_algebra,
)
from modcoh.linalg import QQ, Mat, rank


def cycle_type(perm):
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        j, n = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            n += 1
        out.append(n)
    return tuple(sorted(out, reverse=True))


# character tables by cycle type, written out by hand
S3_TABLE = {
    "triv": {(1, 1, 1): 1, (2, 1): 1, (3,): 1},
    "sgn": {(1, 1, 1): 1, (2, 1): -1, (3,): 1},
    "V21": {(1, 1, 1): 2, (2, 1): 0, (3,): -1},
}
S4_TABLE = {
    "triv": {(1, 1, 1, 1): 1, (2, 1, 1): 1, (2, 2): 1, (3, 1): 1, (4,): 1},
    "sgn": {(1, 1, 1, 1): 1, (2, 1, 1): -1, (2, 2): 1, (3, 1): 1, (4,): -1},
    "V22": {(1, 1, 1, 1): 2, (2, 1, 1): 0, (2, 2): 2, (3, 1): -1, (4,): 0},
    "V31": {(1, 1, 1, 1): 3, (2, 1, 1): 1, (2, 2): -1, (3, 1): 0, (4,): -1},
    "V211": {(1, 1, 1, 1): 3, (2, 1, 1): -1, (2, 2): -1, (3, 1): 0, (4,): 1},
}


@pytest.mark.parametrize("n,table", [(3, S3_TABLE), (4, S4_TABLE)])
def test_specht_characters(n, table):
    alg = symmetric_group_algebra(n)
    mods = specht_modules(alg)
    assert sorted(m.name for m in mods) == sorted(table)
    for m in mods:
        assert validate_module(m, exhaustive=(n == 3)) == []
        chi = character(m)
        for g, perm in enumerate(alg.elements):
            assert chi[g] == table[m.name][cycle_type(perm)], (m.name, perm)


def test_specht_order():
    names = [m.name for m in specht_modules(symmetric_group_algebra(4))]
    assert names == ["triv", "sgn", "V22", "V31", "V211"]


def test_group_helpers():
    elems, table = symmetric_group(3)
    assert elems[0] == (0, 1, 2)
    inv = inverse_table(table)
    assert all(table[g][inv[g]] == 0 for g in range(6))
    assert [sign(p) for p in elems] == [1, -1, -1, 1, 1, -1]
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert cyclic_group(3)[2][2] == 1


def test_central_idempotents_orthogonal_and_complete():
    alg = symmetric_group_algebra(3)
    zs = [central_idempotent(alg, m) for m in specht_modules(alg)]
    total = alg.zero()
    for z in zs:
        total = alg.add(total, z)
    assert total == alg.unit
    for i, j in product(range(3), repeat=2):
        assert alg.mult(zs[i], zs[j]) == (zs[i] if i == j else alg.zero())


@pytest.mark.parametrize("ranks", [(1, 1, 1), (1, 0, 2), (0, 1, 1)])
def test_rank_idempotent(ranks):
    alg = symmetric_group_algebra(3)
    simples = specht_modules(alg)
    e = rank_idempotent(alg, simples, ranks)
    assert alg.mult(e, e) == e
    for m, r in zip(simples, ranks):
        assert rank(m.rho(e)) == r


def test_module_from_generators():
    alg = symmetric_group_algebra(3)
    elems = alg.elements
    s1 = elems.index((1, 0, 2))
    s2 = elems.index((0, 2, 1))
    sgn = module_from_generators(alg, {s1: Mat(QQ, [[-1]]), s2: Mat(QQ, [[-1]])})
    assert character(sgn) == tuple(QQ(sign(p)) for p in elems)
    assert isinstance(sgn, Module) and validate_module(sgn) == []

"""Concrete groups and the idempotents used by the bundled fixtures.

Irreducible modules of symmetric groups come from Young symmetrizers; block
idempotents of prescribed ranks are then found by solving for preimages of
diagonal matrix units.  This only serves to produce fixture data, it is not a
general Wedderburn decomposition.
"""
from __future__ import annotations

from itertools import permutations

from .algebra import Algebra, Module, make_group_algebra
from .linalg import QQ, Field, Mat, image_basis, solve

__all__ = [
    "symmetric_group",
    "cyclic_group",
    "sign",
    "inverse_table",
    "partitions",
    "young_symmetrizer",
    "left_ideal_module",
    "symmetric_group_algebra",
    "specht_modules",
    "character",
    "central_idempotent",
    "rank_idempotent",
    "module_from_generators",
]


def symmetric_group(n: int):
    """``(elements, table)`` with elements the permutations of ``range(n)``
    in lexicographic order (identity first) and ``table[i][j]`` the index of
    ``elements[i] o elements[j]``."""
    elems = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(elems)}
    table = [[index[tuple(p[q[k]] for k in range(n))] for q in elems] for p in elems]
    return elems, table


def cyclic_group(n: int):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def sign(perm) -> int:
    s = 1
    seen = set()
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def inverse_table(table):
    n = len(table)
    ident = next(e for e in range(n) if all(table[e][g] == g for g in range(n)))
    return [next(h for h in range(n) if table[g][h] == ident) for g in range(n)]


def partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def symmetric_group_algebra(n: int, field: Field = QQ) -> Algebra:
    elems, table = symmetric_group(n)
    alg = make_group_algebra(table, field, name=f"S{n}")
    alg.elements = elems
    return alg


def young_symmetrizer(alg: Algebra, shape) -> tuple:
    """``(sum of row permutations) * (signed sum of column permutations)`` for
    the row-reading tableau of ``shape``."""
    elems = alg.elements
    n = len(elems[0])
    index = {p: i for i, p in enumerate(elems)}
    rows, k = [], 0
    for length in shape:
        rows.append(list(range(k, k + length)))
        k += length
    cols = [[row[c] for row in rows if c < len(row)] for c in range(shape[0])]
    f = alg.field

    def stabilizer(blocks):
        out = []
        for p in elems:
            if all(set(p[i] for i in b) == set(b) for b in blocks):
                out.append(p)
        return out

    row_sum = [f.zero] * alg.dim
    for p in stabilizer(rows):
        row_sum[index[p]] += 1
    col_sum = [f.zero] * alg.dim
    for q in stabilizer(cols):
        col_sum[index[q]] += sign(q)
    assert len(elems[0]) == n
    return alg.mult(tuple(row_sum), tuple(col_sum))


def left_ideal_module(alg: Algebra, x, name: str = "") -> Module:
    """The left ideal ``A x`` with the left regular action."""
    basis, pivots = image_basis(alg.right_mult_matrix(x))
    d = basis.cols
    action = []
    for i in range(alg.dim):
        moved = alg.left_mult_matrix(alg.basis_vector(i)) @ basis
        action.append(moved.submatrix(pivots, range(d)))
    return Module(alg, action, name=name)


def _partition_name(shape) -> str:
    n = sum(shape)
    if shape == (n,):
        return "triv"
    if shape == (1,) * n:
        return "sgn"
    return "V" + "".join(str(k) for k in shape)


def specht_modules(alg: Algebra) -> list:
    """Irreducible modules of a symmetric group algebra, sorted by dimension
    (ties: trivial before sign before the rest, by partition)."""
    n = len(alg.elements[0])
    mods = [
        left_ideal_module(alg, young_symmetrizer(alg, shape), name=_partition_name(shape))
        for shape in partitions(n)
    ]
    order = {"triv": 0, "sgn": 1}
    mods.sort(key=lambda m: (m.dim, order.get(m.name, 2)))
    return mods


def character(m: Module) -> tuple:
    f = m.field
    red = f.reduce
    return tuple(red(sum((a.data[i][i] for i in range(m.dim)), f.zero)) for a in m.action)


def central_idempotent(alg: Algebra, m: Module) -> tuple:
    """``(dim / |G|) sum_g chi(g^-1) g`` for the simple module ``m``."""
    f = alg.field
    chi = character(m)
    inv = inverse_table(alg.group_table)
    c = f(m.dim) * f.inv(f(alg.dim))
    return tuple(f.reduce(c * chi[inv[g]]) for g in range(alg.dim))


def rank_idempotent(alg: Algebra, simples, ranks) -> tuple:
    """Idempotent acting on each simple ``simples[k]`` as the projection onto
    its first ``ranks[k]`` coordinates (and lying in that simple's block)."""
    f = alg.field
    result = alg.zero()
    for m, r in zip(simples, ranks):
        if r == 0:
            continue
        z = central_idempotent(alg, m)
        d = m.dim
        cols = [tuple(x for row in m.action[g].data for x in row) for g in range(alg.dim)]
        system = Mat.from_columns(f, cols)
        target = tuple(f.one if (i == j and i < r) else f.zero for i in range(d) for j in range(d))
        pre = solve(system, Mat.column(f, target)).col(0)
        result = alg.add(result, alg.mult(z, pre))
    return result


def module_from_generators(alg: Algebra, images: dict, name: str = "") -> Module:
    """Extend images of group elements (by index) multiplicatively to every
    group element.  ``images`` must generate the group."""
    table = alg.group_table
    n = len(table)
    f = alg.field
    some = next(iter(images.values()))
    d = some.rows
    ident = next(e for e in range(n) if all(table[e][g] == g for g in range(n)))
    known = {ident: Mat.identity(f, d)}
    frontier = [ident]
    while frontier:
        new = []
        for g in frontier:
            for s, ms in images.items():
                h = table[s][g]
                val = ms @ known[g]
                if h in known:
                    if known[h] != val:
                        raise ValueError(f"generator images are inconsistent at element {h}")
                    continue
                known[h] = val
                new.append(h)
        frontier = new
    if len(known) != n:
        raise ValueError("generator images do not reach every group element")
    return Module(alg, [known[g] for g in range(n)], name=name, check=True)

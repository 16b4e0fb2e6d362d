"""Finite-dimensional algebras given by structure constants, their modules,
intertwiners, bimodules, balanced tensor products and corner (idempotent
truncation) constructions.

Elements of an algebra are coordinate tuples in its fixed basis.  A module is
one action matrix per basis element of its algebra, acting on column vectors.
A right action is stored as the linear operators ``v -> v * b``; they compose
contravariantly.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .linalg import (
    QQ,
    Field,
    Mat,
    ShapeError,
    complement_projection,
    image_basis,
    kernel_matrix,
    kronecker,
    solve,
)

__all__ = [
    "AlgebraError",
    "InvalidAlgebra",
    "NotAGroup",
    "AlgebraMismatch",
    "NotIdempotent",
    "NotAMorphism",
    "Algebra",
    "Module",
    "ModuleMorphism",
    "Bimodule",
    "Idempotent",
    "CornerAlgebra",
    "CornerModule",
    "TensorQuotient",
    "make_group_algebra",
    "check_group_table",
    "matrix_algebra",
    "validate_algebra",
    "validate_module",
    "regular_module",
    "regular_bimodule",
    "hom_basis",
    "balanced_tensor",
    "tensor_relations",
    "is_full_idempotent",
    "corner_algebra",
    "corner_module",
    "corner_bimodule",
    "direct_sum",
    "restrict_scalars",
]


class AlgebraError(Exception):
    pass


class InvalidAlgebra(AlgebraError, ValueError):
    def __init__(self, report):
        self.report = report
        super().__init__(f"{len(report)} axiom failures, first: {report[0]}")


class NotAGroup(AlgebraError, ValueError):
    def __init__(self, reason, witness):
        self.witness = witness
        super().__init__(f"{reason}: {witness}")


class AlgebraMismatch(AlgebraError, ValueError):
    pass


class NotIdempotent(AlgebraError, ValueError):
    pass


class NotAMorphism(AlgebraError, ValueError):
    pass


class _Span:
    """Incrementally grown subspace with exact membership tests."""

    def __init__(self, field: Field, n: int):
        self.field = field
        self.n = n
        self.rows = []  # (pivot, normalized row)

    def reduce(self, v):
        p = self.field.char
        v = list(v)
        for piv, row in self.rows:
            c = v[piv]
            if c:
                if p:
                    v = [(x - c * y) % p for x, y in zip(v, row)]
                else:
                    v = [x - c * y for x, y in zip(v, row)]
        return v

    def add(self, v) -> bool:
        v = self.reduce(v)
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return False
        inv = self.field.inv(v[piv])
        red = self.field.reduce
        v = [red(x * inv) for x in v]
        p = self.field.char
        new_rows = []
        for opiv, row in self.rows:
            c = row[piv]
            if c:
                row = [(x - c * y) % p for x, y in zip(row, v)] if p else [x - c * y for x, y in zip(row, v)]
            new_rows.append((opiv, row))
        new_rows.append((piv, v))
        self.rows = new_rows
        return True

    def __contains__(self, v) -> bool:
        return not any(self.reduce(v))

    @property
    def dim(self):
        return len(self.rows)


class Algebra:
    """Associative unital algebra with structure constants ``c[i][j][k]``:
    ``b_i * b_j = sum_k c[i][j][k] b_k``."""

    def __init__(self, field: Field, structure, unit, name: str = "", validate: bool = True):
        self.field = field
        self.dim = len(unit)
        self.structure = tuple(
            tuple(tuple(field(x) for x in structure[i][j]) for j in range(self.dim))
            for i in range(self.dim)
        )
        self.unit = tuple(field(x) for x in unit)
        self.name = name
        self._sparse = [
            [[(k, c) for k, c in enumerate(self.structure[i][j]) if c] for j in range(self.dim)]
            for i in range(self.dim)
        ]
        self._hash = None
        if validate:
            report = validate_algebra(self)
            if report:
                raise InvalidAlgebra(report)

    def zero(self):
        return (self.field.zero,) * self.dim

    def basis_vector(self, i):
        f = self.field
        return tuple(f.one if k == i else f.zero for k in range(self.dim))

    def element(self, coords):
        if len(coords) != self.dim:
            raise ShapeError(f"expected {self.dim} coordinates, got {len(coords)}")
        return tuple(self.field(x) for x in coords)

    def mult(self, x, y):
        f = self.field
        acc = [f.zero] * self.dim
        xs = [(i, a) for i, a in enumerate(x) if a]
        ys = [(j, b) for j, b in enumerate(y) if b]
        for i, a in xs:
            row = self._sparse[i]
            for j, b in ys:
                ab = a * b
                for k, c in row[j]:
                    acc[k] += ab * c
        red = f.reduce
        return tuple(red(v) for v in acc)

    def add(self, x, y):
        red = self.field.reduce
        return tuple(red(a + b) for a, b in zip(x, y))

    def sub(self, x, y):
        red = self.field.reduce
        return tuple(red(a - b) for a, b in zip(x, y))

    def scale(self, c, x):
        c = self.field(c)
        red = self.field.reduce
        return tuple(red(c * a) for a in x)

    def left_mult_matrix(self, x) -> Mat:
        """Matrix of ``y -> x * y``."""
        return Mat.from_columns(self.field, [self.mult(x, self.basis_vector(j)) for j in range(self.dim)])

    def right_mult_matrix(self, x) -> Mat:
        """Matrix of ``y -> y * x``."""
        return Mat.from_columns(self.field, [self.mult(self.basis_vector(j), x) for j in range(self.dim)])

    @cached_property
    def generators(self) -> tuple:
        """Indices of basis elements generating the algebra, chosen greedily
        in basis order."""
        span = _Span(self.field, self.dim)
        span.add(self.unit)
        frontier = [self.unit]
        gens = []
        while span.dim < self.dim:
            i = next(i for i in range(self.dim) if self.basis_vector(i) not in span)
            gens.append(i)
            frontier = [tuple(v) for _, v in span.rows]
            while frontier:
                new = []
                for w in frontier:
                    for g in gens:
                        prod_ = self.mult(w, self.basis_vector(g))
                        if span.add(prod_):
                            new.append(prod_)
                frontier = new
        return tuple(gens)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Algebra):
            return NotImplemented
        return (
            self.field == other.field
            and self.structure == other.structure
            and self.unit == other.unit
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.char, self.structure, self.unit))
        return self._hash

    def __repr__(self):
        return f"Algebra({self.name or '?'}, dim={self.dim}, {self.field!r})"


def validate_algebra(a: Algebra) -> list:
    """All failing associativity triples and unit laws; empty iff valid."""
    report = []
    basis = [a.basis_vector(i) for i in range(a.dim)]
    prods = [[a.mult(basis[i], basis[j]) for j in range(a.dim)] for i in range(a.dim)]
    for i, j, k in product(range(a.dim), repeat=3):
        if a.mult(prods[i][j], basis[k]) != a.mult(basis[i], prods[j][k]):
            report.append(("associativity", i, j, k))
    for i in range(a.dim):
        if a.mult(a.unit, basis[i]) != basis[i]:
            report.append(("left unit", i))
        if a.mult(basis[i], a.unit) != basis[i]:
            report.append(("right unit", i))
    return report


def check_group_table(table) -> int:
    """Validate a group multiplication table; returns the identity index.

    Raises :class:`NotAGroup` naming a failing element, pair or triple.
    """
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise NotAGroup("table is not square", n)
    for i, j in product(range(n), repeat=2):
        if not 0 <= table[i][j] < n:
            raise NotAGroup("not closed", (i, j))
    for i, j, k in product(range(n), repeat=3):
        if table[table[i][j]][k] != table[i][table[j][k]]:
            raise NotAGroup("not associative", (i, j, k))
    ident = next((e for e in range(n) if all(table[e][g] == g == table[g][e] for g in range(n))), None)
    if ident is None:
        raise NotAGroup("no identity", None)
    for g in range(n):
        if not any(table[g][h] == ident for h in range(n)):
            raise NotAGroup("no inverse", g)
    return ident


def make_group_algebra(table, field: Field = QQ, name: str = "") -> Algebra:
    ident = check_group_table(table)
    n = len(table)
    f = field
    structure = [
        [tuple(f.one if k == table[i][j] else f.zero for k in range(n)) for j in range(n)]
        for i in range(n)
    ]
    unit = tuple(f.one if k == ident else f.zero for k in range(n))
    alg = Algebra(f, structure, unit, name=name, validate=False)
    alg.group_table = tuple(tuple(r) for r in table)
    return alg


def matrix_algebra(n: int, field: Field = QQ) -> Algebra:
    """Full matrix algebra with basis ``E_ij`` at index ``i * n + j``."""
    d = n * n
    f = field
    structure = []
    for i, j in product(range(n), repeat=2):
        row = []
        for k, l in product(range(n), repeat=2):
            v = [f.zero] * d
            if j == k:
                v[i * n + l] = f.one
            row.append(tuple(v))
        structure.append(row)
    unit = tuple(f.one if i == j else f.zero for i, j in product(range(n), repeat=2))
    return Algebra(f, structure, unit, name=f"M{n}")


class Module:
    """Left module: ``action[i]`` is the matrix of basis element ``b_i``."""

    __slots__ = ("algebra", "dim", "action", "name", "_hash")

    def __init__(self, algebra: Algebra, action, name: str = "", check: bool = False):
        action = tuple(action)
        if len(action) != algebra.dim:
            raise ShapeError(f"need {algebra.dim} action matrices, got {len(action)}")
        dims = {m.shape for m in action}
        if len(dims) != 1:
            raise ShapeError(f"action matrices of shapes {sorted(dims)}")
        (shape,) = dims
        if shape[0] != shape[1]:
            raise ShapeError("action matrices must be square")
        self.algebra = algebra
        self.dim = shape[0]
        self.action = action
        self.name = name
        self._hash = None
        if check:
            report = validate_module(self)
            if report:
                raise InvalidAlgebra(report)

    @property
    def field(self):
        return self.algebra.field

    def rho(self, x) -> Mat:
        """Action matrix of the algebra element with coordinates ``x``."""
        f = self.field
        n = self.dim
        p = f.char
        acc = [[f.zero] * n for _ in range(n)]
        for i, c in enumerate(x):
            if c:
                for r, row in enumerate(self.action[i].data):
                    arow = acc[r]
                    for s, y in enumerate(row):
                        if y:
                            arow[s] += c * y
        if p:
            acc = [[v % p for v in row] for row in acc]
        return Mat._raw(f, tuple(tuple(r) for r in acc), n)

    def identity(self) -> "ModuleMorphism":
        return ModuleMorphism(self, self, Mat.identity(self.field, self.dim), check=False)

    def renamed(self, name: str) -> "Module":
        return Module(self.algebra, self.action, name=name)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Module):
            return NotImplemented
        return self.dim == other.dim and self.algebra == other.algebra and self.action == other.action

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, self.action))
        return self._hash

    def __repr__(self):
        return f"Module({self.name or '?'}, dim={self.dim})"


def validate_module(m: Module, exhaustive: bool = False) -> list:
    """Representation-axiom failures of ``m`` (empty iff valid).

    By default only ``rho(g) rho(b_j) == rho(g b_j)`` for the algebra's
    generators ``g`` is checked; together with ``rho(1) == 1`` that implies
    multiplicativity on all of the algebra.
    """
    a = m.algebra
    report = []
    if not m.rho(a.unit).is_identity():
        report.append(("unit",))
    left = range(a.dim) if exhaustive else a.generators
    for i in left:
        bi = a.basis_vector(i)
        for j in range(a.dim):
            if m.action[i] @ m.action[j] != m.rho(a.mult(bi, a.basis_vector(j))):
                report.append(("multiplicativity", i, j))
    return report


class ModuleMorphism:
    """An intertwiner ``mat: source -> target`` (``mat`` is target.dim x source.dim)."""

    __slots__ = ("source", "target", "mat")

    def __init__(self, source: Module, target: Module, mat: Mat, check: bool = True):
        if mat.shape != (target.dim, source.dim):
            raise ShapeError(f"morphism matrix {mat.shape} for {source.dim} -> {target.dim}")
        self.source = source
        self.target = target
        self.mat = mat
        if check:
            if source.algebra != target.algebra:
                raise AlgebraMismatch("source and target over different algebras")
            for g in source.algebra.generators:
                if mat @ source.action[g] != target.action[g] @ mat:
                    raise NotAMorphism(f"does not intertwine generator {g}")

    def is_intertwiner(self) -> bool:
        a = self.source.algebra
        return all(self.mat @ self.source.action[i] == self.target.action[i] @ self.mat for i in range(a.dim))

    def __matmul__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        """Composition ``self o other``."""
        return ModuleMorphism(other.source, self.target, self.mat @ other.mat, check=False)

    def inverse(self) -> "ModuleMorphism":
        return ModuleMorphism(self.target, self.source, self.mat.inverse(), check=False)

    def is_iso(self) -> bool:
        return self.mat.is_invertible()

    def __eq__(self, other):
        if not isinstance(other, ModuleMorphism):
            return NotImplemented
        return self.mat == other.mat and self.source == other.source and self.target == other.target

    def __hash__(self):
        return hash(self.mat)

    def __repr__(self):
        return f"ModuleMorphism({self.source.name or '?'} -> {self.target.name or '?'})"


def regular_module(a: Algebra, name: str = "") -> Module:
    return Module(a, [a.left_mult_matrix(a.basis_vector(i)) for i in range(a.dim)], name=name or "regular")


def direct_sum(*mods: Module, name: str = "") -> Module:
    a = mods[0].algebra
    f = a.field
    dims = [m.dim for m in mods]
    total = sum(dims)
    action = []
    for i in range(a.dim):
        rows = []
        off = 0
        for m, d in zip(mods, dims):
            for row in m.action[i].data:
                rows.append((f.zero,) * off + row + (f.zero,) * (total - off - d))
            off += d
        action.append(Mat._raw(f, tuple(rows), total))
    return Module(a, action, name=name or "+".join(m.name or "?" for m in mods))


def restrict_scalars(m: Module, algebra: Algebra, hom: Mat, name: str = "") -> Module:
    """Pull ``m`` back along an algebra map given by its coordinate matrix
    ``hom`` (``m.algebra.dim x algebra.dim``)."""
    return Module(algebra, [m.rho(hom.col(j)) for j in range(algebra.dim)], name=name or m.name)


def hom_basis(m: Module, n: Module) -> list:
    """Basis of the intertwiners ``m -> n``."""
    if m.algebra != n.algebra:
        raise AlgebraMismatch("modules over different algebras")
    f = m.field
    blocks = []
    # row-major vec(X) of an (n.dim x m.dim) matrix X:
    # vec(X A) = (I (x) A^T) vec(X), vec(B X) = (B (x) I) vec(X)
    for g in m.algebra.generators:
        blocks.append(
            kronecker(Mat.identity(f, n.dim), m.action[g].T) - kronecker(n.action[g], Mat.identity(f, m.dim))
        )
    if not blocks:
        system = Mat.zeros(f, 0, n.dim * m.dim)
    else:
        system = blocks[0].vstack(*blocks[1:])
    kern = kernel_matrix(system)
    out = []
    for v in kern.columns():
        mat = Mat._raw(f, tuple(tuple(v[r * m.dim : (r + 1) * m.dim]) for r in range(n.dim)), m.dim)
        out.append(ModuleMorphism(m, n, mat, check=False))
    return out


class Bimodule:
    """(A, B)-bimodule: ``left[i]`` is ``v -> a_i v``, ``right[j]`` is ``v -> v b_j``."""

    def __init__(self, left_algebra: Algebra, right_algebra: Algebra, left, right, name: str = ""):
        self.left_algebra = left_algebra
        self.right_algebra = right_algebra
        self.left = tuple(left)
        self.right = tuple(right)
        self.dim = self.left[0].rows
        self.name = name

    @property
    def field(self):
        return self.left_algebra.field

    def rho_right(self, y) -> Mat:
        f = self.field
        acc = Mat.zeros(f, self.dim, self.dim)
        for j, c in enumerate(y):
            if c:
                acc = acc + self.right[j].scale(c)
        return acc

    def validate(self) -> list:
        report = []
        la, ra = self.left_algebra, self.right_algebra
        left = Module(la, self.left)
        report += [("left",) + r for r in validate_module(left)]
        # right action is an anti-homomorphism: R(b b') = R(b') R(b)
        if not self.rho_right(ra.unit).is_identity():
            report.append(("right unit",))
        for i in ra.generators:
            for j in range(ra.dim):
                lhs = self.right[j] @ self.right[i]
                rhs = self.rho_right(ra.mult(ra.basis_vector(i), ra.basis_vector(j)))
                if lhs != rhs:
                    report.append(("right multiplicativity", i, j))
        for i in la.generators:
            for j in ra.generators:
                if self.left[i] @ self.right[j] != self.right[j] @ self.left[i]:
                    report.append(("commutation", i, j))
        return report

    @cached_property
    def presentation(self):
        return _RightPresentation(self)

    def __repr__(self):
        return f"Bimodule({self.name or '?'}, dim={self.dim})"


def regular_bimodule(a: Algebra) -> Bimodule:
    return Bimodule(
        a,
        a,
        [a.left_mult_matrix(a.basis_vector(i)) for i in range(a.dim)],
        [a.right_mult_matrix(a.basis_vector(i)) for i in range(a.dim)],
        name="regular",
    )


class _RightPresentation:
    """``B^r --phi--> P --> 0`` with kernel basis, for a bimodule ``P``."""

    def __init__(self, p: Bimodule):
        b = p.right_algebra
        f = p.field
        dp, db = p.dim, b.dim
        span = _Span(f, dp)
        gens = []
        for a in range(dp):
            v = tuple(f.one if k == a else f.zero for k in range(dp))
            if v in span:
                continue
            gens.append(v)
            for j in range(db):
                span.add(p.right[j].apply(v))
            if span.dim == dp:
                break
        self.generators = gens
        self.r = len(gens)
        cols = []
        for g in gens:
            for j in range(db):
                cols.append(p.right[j].apply(g))
        self.phi = Mat.from_columns(f, cols) if cols else Mat.zeros(f, dp, 0)
        self.lift = solve(self.phi, Mat.identity(f, dp))
        self.kernel = kernel_matrix(self.phi)
        self.gen_matrix = Mat.from_columns(f, gens) if gens else Mat.zeros(f, dp, 0)
        # left action lifted to B^r: column block i of lam[a] is lift(a . g_i)
        self.left_lifts = [self.lift @ (p.left[a] @ self.gen_matrix) for a in range(p.left_algebra.dim)]


@dataclass(frozen=True, eq=False)
class TensorQuotient:
    """``P (x)_B N`` realized on a coordinate complement of the relations.

    ``cover`` coordinates are ``N^r`` (``r`` right-module generators of
    ``P``, index ``i * dim N + k``); ``proj: cover -> module`` and
    ``sect: module -> cover`` satisfy ``proj @ sect == 1``.
    ``surjection`` is the canonical map from the plain tensor ``P (x) N``,
    ``lift`` a linear section of it.
    """

    bimodule: Bimodule
    factor: Module
    module: Module
    proj: Mat
    sect: Mat
    surjection: Mat
    lift: Mat

    def map(self, g: ModuleMorphism, other: "TensorQuotient") -> ModuleMorphism:
        """``P (x)_B g`` as a morphism ``self.module -> other.module``."""
        r = self.bimodule.presentation.r
        f = g.mat.field
        mat = other.proj @ kronecker(Mat.identity(f, r), g.mat) @ self.sect
        return ModuleMorphism(self.module, other.module, mat, check=False)


def _block_matrix(f, blocks, nbr, nbc, brows, bcols):
    """Assemble an ``nbr x nbc`` block matrix from ``{(I, J): Mat}``; missing
    blocks are zero."""
    rows = []
    for bi in range(nbr):
        for r in range(brows):
            row = []
            for bj in range(nbc):
                blk = blocks.get((bi, bj))
                row.extend(blk.data[r] if blk is not None else (f.zero,) * bcols)
            rows.append(tuple(row))
    return Mat._raw(f, tuple(rows), nbc * bcols)


def balanced_tensor(p: Bimodule, n: Module, name: str = "") -> TensorQuotient:
    """``P (x)_B N`` as a left A-module, with the canonical surjection from
    ``P (x) N``.

    The quotient is computed from a presentation of ``P`` as a right
    B-module: with generators ``g_1..g_r`` and kernel ``K`` of
    ``B^r -> P``, ``P (x)_B N`` is the cokernel of ``K (x) N -> N^r``.
    """
    if p.right_algebra != n.algebra:
        raise AlgebraMismatch("right algebra of the bimodule differs from the module's algebra")
    pres = p.presentation
    f = p.field
    r, db, dn = pres.r, p.right_algebra.dim, n.dim

    def block(vec, i):
        return n.rho(vec[i * db : (i + 1) * db])

    rel_cols = []
    for kappa in pres.kernel.columns():
        rel_cols.append(_block_matrix(f, {(i, 0): block(kappa, i) for i in range(r)}, r, 1, dn, dn))
    if rel_cols:
        relations = rel_cols[0].hstack(*rel_cols[1:])
    else:
        relations = Mat.zeros(f, r * dn, 0)
    proj, kept = complement_projection(relations)
    sect = Mat.identity(f, r * dn).submatrix(range(r * dn), kept)

    action = []
    for a in range(p.left_algebra.dim):
        lam = pres.left_lifts[a]
        blocks = {}
        for i in range(r):
            col = lam.col(i)
            for j in range(r):
                blk = block(col, j)
                if not blk.is_zero():
                    blocks[(j, i)] = blk
        action.append(proj @ _block_matrix(f, blocks, r, r, dn, dn) @ sect)
    module = Module(p.left_algebra, action, name=name or f"{p.name or 'P'}*{n.name or 'N'}")

    # plain tensor P (x) N (index a * dn + k) onto the cover N^r
    w_blocks = {}
    for a in range(p.dim):
        col = pres.lift.col(a)
        for i in range(r):
            w_blocks[(i, a)] = block(col, i)
    surjection = proj @ _block_matrix(f, w_blocks, r, p.dim, dn, dn)
    lift = kronecker(pres.gen_matrix, Mat.identity(f, dn)) @ sect
    return TensorQuotient(p, n, module, proj, sect, surjection, lift)


def tensor_relations(p: Bimodule, n: Module) -> Mat:
    """Columns spanning ``{p b (x) n - p (x) b n}`` inside the plain tensor
    ``P (x) N`` (all basis elements ``b`` of the right algebra)."""
    if p.right_algebra != n.algebra:
        raise AlgebraMismatch("right algebra of the bimodule differs from the module's algebra")
    f = p.field
    cols = [
        kronecker(p.right[j], Mat.identity(f, n.dim)) - kronecker(Mat.identity(f, p.dim), n.action[j])
        for j in range(n.algebra.dim)
    ]
    return cols[0].hstack(*cols[1:])


class Idempotent:
    def __init__(self, algebra: Algebra, coords, name: str = ""):
        self.algebra = algebra
        self.coords = algebra.element(coords)
        self.name = name
        if algebra.mult(self.coords, self.coords) != self.coords:
            raise NotIdempotent(f"{name or 'element'} is not idempotent")

    @cached_property
    def corner(self) -> "CornerAlgebra":
        return corner_algebra(self.algebra, self)

    @cached_property
    def ideal(self) -> Bimodule:
        return corner_bimodule(self)

    def __repr__(self):
        return f"Idempotent({self.name or '?'} in {self.algebra.name or '?'})"


def is_full_idempotent(e: Idempotent) -> tuple:
    """``(A e A == A, dim span{b_i e b_j})``."""
    a = e.algebra
    span = _Span(a.field, a.dim)
    for i in range(a.dim):
        be = a.mult(a.basis_vector(i), e.coords)
        for j in range(a.dim):
            span.add(a.mult(be, a.basis_vector(j)))
            if span.dim == a.dim:
                return True, a.dim
    return span.dim == a.dim, span.dim


@dataclass(frozen=True, eq=False)
class CornerAlgebra:
    """``eAe`` with basis columns ``incl`` (ambient coordinates); the corner
    coordinates of ``x in eAe`` are ``x`` read at ``pivots``."""

    algebra: Algebra
    ambient: Algebra
    idempotent: Idempotent
    incl: Mat
    pivots: tuple

    def compress(self, x):
        return tuple(x[p] for p in self.pivots)

    def include(self, y):
        return self.incl.apply(y)


def corner_algebra(a: Algebra, e: Idempotent) -> CornerAlgebra:
    if e.algebra != a:
        raise AlgebraMismatch("idempotent from another algebra")
    f = a.field
    cols = [a.mult(a.mult(e.coords, a.basis_vector(i)), e.coords) for i in range(a.dim)]
    basis, pivots = image_basis(Mat.from_columns(f, cols))
    vecs = basis.columns()
    structure = [[tuple(a.mult(x, y)[p] for p in pivots) for y in vecs] for x in vecs]
    unit = tuple(e.coords[p] for p in pivots)
    name = f"{e.name or 'e'}{a.name or 'A'}{e.name or 'e'}"
    b = Algebra(f, structure, unit, name=name)
    return CornerAlgebra(b, a, e, basis, tuple(pivots))


@dataclass(frozen=True, eq=False)
class CornerModule:
    """``eM`` as a module over ``eAe`` together with ``incl: eM -> M``."""

    module: Module
    ambient: Module
    incl: Mat
    pivots: tuple

    @property
    def retract(self) -> Mat:
        """Coordinates in ``eM`` of vectors lying in ``eM``."""
        return Mat.identity(self.incl.field, self.ambient.dim).submatrix(self.pivots, range(self.ambient.dim))

    def map(self, f: ModuleMorphism, other: "CornerModule") -> ModuleMorphism:
        """Restriction ``eM -> eM'`` of ``f: M -> M'``."""
        mat = (f.mat @ self.incl).submatrix(other.pivots, range(self.module.dim))
        return ModuleMorphism(self.module, other.module, mat, check=False)


def corner_module(e: Idempotent, m: Module, name: str = "") -> CornerModule:
    if e.algebra != m.algebra:
        raise AlgebraMismatch("idempotent and module over different algebras")
    corner = e.corner
    f = m.field
    incl, pivots = image_basis(m.rho(e.coords))
    d = incl.cols
    action = []
    for y in corner.incl.columns():
        moved = m.rho(y) @ incl
        restricted = moved.submatrix(pivots, range(d))
        if incl @ restricted != moved:
            raise AssertionError("corner element does not preserve eM")
        action.append(restricted)
    if d == 0:
        action = [Mat.zeros(f, 0, 0) for _ in range(corner.algebra.dim)]
    mod = Module(corner.algebra, action, name=name or f"{e.name or 'e'}{m.name or 'M'}")
    return CornerModule(mod, m, incl, tuple(pivots))


def corner_bimodule(e: Idempotent) -> Bimodule:
    """``Ae`` as an (A, eAe)-bimodule."""
    a = e.algebra
    corner = e.corner
    basis, pivots = image_basis(a.right_mult_matrix(e.coords))
    d = basis.cols

    def restrict(op: Mat) -> Mat:
        moved = op @ basis
        out = moved.submatrix(pivots, range(d))
        if basis @ out != moved:
            raise AssertionError("operator does not preserve Ae")
        return out

    left = [restrict(a.left_mult_matrix(a.basis_vector(i))) for i in range(a.dim)]
    right = [restrict(a.right_mult_matrix(y)) for y in corner.incl.columns()]
    bim = Bimodule(a, corner.algebra, left, right, name=f"{a.name or 'A'}{e.name or 'e'}")
    bim.basis = basis
    bim.pivots = tuple(pivots)
    return bim

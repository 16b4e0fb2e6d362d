"""The acting monoidal category: modules over a Hopf algebra.

Tensor products of modules act diagonally through the comultiplication.
Iterated tensors are flattened with the row-major Kronecker convention, under
which ``(X (x) Y) (x) Z`` and ``X (x) (Y (x) Z)`` have literally the same
action matrices, so the associator is the identity.  The unit object is the
one-dimensional module given by the counit and is also treated strictly.
"""
from __future__ import annotations

from math import comb

from .algebra import (
    Algebra,
    AlgebraMismatch,
    Module,
    ModuleMorphism,
    make_group_algebra,
)
from .groups import inverse_table
from .linalg import QQ, Field, Mat, ShapeError, kronecker

__all__ = [
    "HopfData",
    "MonoidalContext",
    "hopf_from_group",
    "tensor_modules",
    "diagonal_operator",
    "nilpotency_index",
    "binomial_expansion",
    "naive_expansion",
    "nilpotent_expansion_check",
]


class HopfData:
    """Hopf structure on an algebra.

    ``comul`` is the ``dim^2 x dim`` coordinate matrix of the
    comultiplication (row index ``i * dim + j`` for ``b_i (x) b_j``),
    ``counit`` a tuple of scalars and ``antipode`` a ``dim x dim`` matrix.
    """

    def __init__(self, algebra: Algebra, comul: Mat, counit, antipode: Mat, validate: bool = True):
        n = algebra.dim
        if comul.shape != (n * n, n) or antipode.shape != (n, n) or len(counit) != n:
            raise ShapeError("Hopf data does not match the algebra dimension")
        self.algebra = algebra
        self.comul = comul
        self.counit = tuple(algebra.field(c) for c in counit)
        self.antipode = antipode
        if validate:
            report = self.validate()
            if report:
                raise ValueError(f"invalid Hopf data: {report[:5]}")

    def coproduct(self, x) -> dict:
        """Sparse ``{(i, j): c}`` form of ``comul(x)``."""
        n = self.algebra.dim
        out = {}
        v = self.comul.apply(x)
        for idx, c in enumerate(v):
            if c:
                out[divmod(idx, n)] = c
        return out

    def validate(self) -> list:
        """Failures of the Hopf axioms, checked basis element by basis
        element on sparse coproducts (empty iff valid)."""
        a = self.algebra
        f = a.field
        n = a.dim
        red = f.reduce
        eps = self.counit
        report = []

        def clean(d):
            return {k: red(v) for k, v in d.items() if red(v) != f.zero}

        def add_to(acc, key, c):
            acc[key] = acc.get(key, f.zero) + c

        cop = [self.coproduct(a.basis_vector(i)) for i in range(n)]
        anti = [self.antipode.col(i) for i in range(n)]
        for b in range(n):
            # (comul (x) id) comul == (id (x) comul) comul
            lhs, rhs = {}, {}
            for (i, j), c in cop[b].items():
                for (k, l), d in cop[i].items():
                    add_to(lhs, (k, l, j), c * d)
                for (k, l), d in cop[j].items():
                    add_to(rhs, (i, k, l), c * d)
            if clean(lhs) != clean(rhs):
                report.append(("coassociativity", b))
            # (counit (x) id) comul == id == (id (x) counit) comul
            left = [f.zero] * n
            right = [f.zero] * n
            for (i, j), c in cop[b].items():
                left[j] += eps[i] * c
                right[i] += eps[j] * c
            target = a.basis_vector(b)
            if tuple(map(red, left)) != target or tuple(map(red, right)) != target:
                report.append(("counit", b))
            # m (S (x) id) comul == counit * 1 == m (id (x) S) comul
            unit_scaled = tuple(red(eps[b] * u) for u in a.unit)
            sl = a.zero()
            sr = a.zero()
            for (i, j), c in cop[b].items():
                sl = a.add(sl, a.scale(c, a.mult(anti[i], a.basis_vector(j))))
                sr = a.add(sr, a.scale(c, a.mult(a.basis_vector(i), anti[j])))
            if sl != unit_scaled:
                report.append(("left antipode", b))
            if sr != unit_scaled:
                report.append(("right antipode", b))
        # comul and counit are multiplicative
        for i in a.generators:
            for j in range(n):
                prod = a.mult(a.basis_vector(i), a.basis_vector(j))
                lhs = {}
                for k, c in enumerate(prod):
                    if c:
                        for key, d in cop[k].items():
                            add_to(lhs, key, c * d)
                rhs = {}
                for (p1, p2), c in cop[i].items():
                    for (q1, q2), d in cop[j].items():
                        left = a.mult(a.basis_vector(p1), a.basis_vector(q1))
                        right = a.mult(a.basis_vector(p2), a.basis_vector(q2))
                        for s, x in enumerate(left):
                            if x:
                                for t, y in enumerate(right):
                                    if y:
                                        add_to(rhs, (s, t), c * d * x * y)
                if clean(lhs) != clean(rhs):
                    report.append(("comultiplicative", i, j))
                val = sum((eps[k] * c for k, c in enumerate(prod)), f.zero)
                if red(val - eps[i] * eps[j]) != f.zero:
                    report.append(("counit multiplicative", i, j))
        return report


def hopf_from_group(table, field: Field = QQ, algebra: Algebra | None = None) -> HopfData:
    """Group-like Hopf data: ``g -> g (x) g``, ``g -> 1``, ``g -> g^-1``."""
    a = algebra if algebra is not None else make_group_algebra(table, field)
    f = a.field
    n = a.dim
    inv = inverse_table(table)
    comul = Mat(f, [[f.one if (r == g * n + g) else f.zero for g in range(n)] for r in range(n * n)])
    antipode = Mat(f, [[f.one if inv[j] == i else f.zero for j in range(n)] for i in range(n)])
    return HopfData(a, comul, [1] * n, antipode)


class MonoidalContext:
    """Strict monoidal category of modules over ``hopf.algebra``."""

    def __init__(self, hopf: HopfData):
        self.hopf = hopf
        self._cache = {}
        a = hopf.algebra
        f = a.field
        self.unit_object = Module(a, [Mat(f, [[c]]) for c in hopf.counit], name="triv")

    @property
    def algebra(self) -> Algebra:
        return self.hopf.algebra

    @property
    def field(self) -> Field:
        return self.hopf.algebra.field

    def tensor(self, x: Module, y: Module) -> Module:
        if x.algebra != self.algebra or y.algebra != self.algebra:
            raise AlgebraMismatch("tensor factors are not modules over the context's algebra")
        key = (x, y)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        f = self.field
        n = self.algebra.dim
        d = x.dim * y.dim
        action = []
        for b in range(n):
            acc = None
            for (i, j), c in self.hopf.coproduct(self.algebra.basis_vector(b)).items():
                term = kronecker(x.action[i], y.action[j])
                if c != f.one:
                    term = term.scale(c)
                acc = term if acc is None else acc + term
            action.append(acc if acc is not None else Mat.zeros(f, d, d))
        out = Module(self.algebra, action, name=f"({x.name or '?'}*{y.name or '?'})")
        self._cache[key] = out
        return out

    def tensor_mor(self, f: ModuleMorphism, g: ModuleMorphism) -> ModuleMorphism:
        return ModuleMorphism(
            self.tensor(f.source, g.source), self.tensor(f.target, g.target), kronecker(f.mat, g.mat), check=False
        )

    def associator(self, x: Module, y: Module, z: Module) -> ModuleMorphism:
        xyz = self.tensor(self.tensor(x, y), z)
        return ModuleMorphism(xyz, self.tensor(x, self.tensor(y, z)), Mat.identity(self.field, xyz.dim), check=False)


def tensor_modules(ctx: MonoidalContext, x: Module, y: Module) -> Module:
    return ctx.tensor(x, y)


def diagonal_operator(yx: Mat, yz: Mat) -> Mat:
    """``yx (x) 1 + 1 (x) yz``, the action of a primitive element on a tensor."""
    if not (yx.is_square() and yz.is_square()):
        raise ShapeError("diagonal_operator needs square matrices")
    f = yx.field
    return kronecker(yx, Mat.identity(f, yz.rows)) + kronecker(Mat.identity(f, yx.rows), yz)


def nilpotency_index(m: Mat):
    """Least ``k`` with ``m^k == 0``, or ``None`` if ``m`` is not nilpotent."""
    n = m.rows
    p = Mat.identity(m.field, n)
    for k in range(n + 1):
        if p.is_zero():
            return k
        p = p @ m
    return None


def _shifted(y: Mat, psi) -> Mat:
    return y - Mat.scalar(y.field, psi, y.rows)


def binomial_expansion(yx: Mat, yz: Mat, psi, k: int) -> Mat:
    """``sum_j binom(k, j) (yx - psi)^j (x) yz^(k - j)``."""
    f = yx.field
    sx = _shifted(yx, psi)
    acc = Mat.zeros(f, yx.rows * yz.rows, yx.rows * yz.rows)
    for j in range(k + 1):
        acc = acc + kronecker(sx.power(j), yz.power(k - j)).scale(f(comb(k, j)))
    return acc


def naive_expansion(yx: Mat, yz: Mat, psi, k: int) -> Mat:
    """The same sum without binomial coefficients.  Only agrees with
    ``(D - psi)^k`` for ``k <= 1`` in general; kept to exhibit that."""
    f = yx.field
    sx = _shifted(yx, psi)
    acc = Mat.zeros(f, yx.rows * yz.rows, yx.rows * yz.rows)
    for j in range(k + 1):
        acc = acc + kronecker(sx.power(j), yz.power(k - j))
    return acc


def nilpotent_expansion_check(yx: Mat, yz: Mat, psi, k: int, probes=()) -> bool:
    """Check ``(D - psi)^k == sum_j binom(k, j) (yx - psi)^j (x) yz^(k-j)``
    for ``D = diagonal_operator(yx, yz)``, as operators and on each probe.

    A probe is either a tuple ``(x, z)`` (the decomposable ``x (x) z``) or a
    list of ``(alpha, x, z)`` triples (a linear combination).  When both
    inputs are nilpotent, additionally require the nilpotency index of ``D``
    to be at most ``p + q - 1``.
    """
    f = yx.field
    d = diagonal_operator(yx, yz)
    lhs = _shifted(d, psi).power(k)
    rhs = binomial_expansion(yx, yz, psi, k)
    if lhs != rhs:
        return False
    sx = _shifted(yx, psi)
    for probe in probes:
        terms = list(probe) if isinstance(probe, list) else [(f.one,) + tuple(probe)]
        vec = [f.zero] * (yx.rows * yz.rows)
        expected = [f.zero] * (yx.rows * yz.rows)
        for alpha, x, z in terms:
            xz = kronecker(Mat.column(f, x), Mat.column(f, z)).col(0)
            vec = [v + alpha * w for v, w in zip(vec, xz)]
            for j in range(k + 1):
                left = sx.power(j).apply(x)
                right = yz.power(k - j).apply(z)
                t = kronecker(Mat.column(f, left), Mat.column(f, right)).col(0)
                c = f(comb(k, j)) * alpha
                expected = [e + c * w for e, w in zip(expected, t)]
        got = lhs.apply(tuple(f.reduce(v) for v in vec))
        if got != tuple(f.reduce(v) for v in expected):
            return False
    p, q = nilpotency_index(yx), nilpotency_index(yz)
    if p is not None and q is not None and p > 0 and q > 0:
        r = nilpotency_index(d)
        if r is None or r > p + q - 1:
            return False
    return True

"""Exact dense linear algebra over the rationals and prime fields.

Matrices are immutable, row-major, and carry the field they live in.  Rational
entries are ``gmpy2.mpq`` values (always in lowest terms with a positive
denominator); prime-field entries are plain ``int`` residues in ``[0, p)``.
Nothing in this module ever touches floating point.

Index convention for Kronecker products (used everywhere in the package)::

    kron(a, b)[i * b.rows + k, j * b.cols + l] == a[i, j] * b[k, l]

so the coordinate of ``x_i (x) y_k`` in ``X (x) Y`` is ``i * dim(Y) + k``.
Iterated products flatten the same way, which makes ``(X (x) Y) (x) Z`` and
``X (x) (Y (x) Z)`` literally the same coordinate space.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Integral, Rational

import gmpy2

__all__ = [
    "Field",
    "QQ",
    "GF",
    "Mat",
    "LinAlgError",
    "FieldMismatch",
    "ShapeError",
    "NoSolution",
    "NotInvertible",
    "echelonize",
    "echelon_transform",
    "kernel_basis",
    "kernel_matrix",
    "solve",
    "kronecker",
    "image_basis",
    "complement_projection",
    "rank",
]


class LinAlgError(Exception):
    pass


class FieldMismatch(LinAlgError, TypeError):
    """Operands live over different fields, or a value is not an exact scalar."""


class ShapeError(LinAlgError, ValueError):
    pass


class NoSolution(LinAlgError):
    """The right-hand side is not in the column space."""


class NotInvertible(LinAlgError, ValueError):
    pass


class Field:
    """An exact field.  Subclasses fix the element representation."""

    char: int = 0
    zero = None
    one = None

    def __call__(self, x):
        raise NotImplementedError

    def reduce(self, x):
        return x

    def inv(self, x):
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return self(Fraction(int(num), int(den)))
        return self(int(text))

    def __eq__(self, other):
        return isinstance(other, Field) and other.char == self.char

    def __hash__(self):
        return hash(("field", self.char))


class _Rationals(Field):
    char = 0

    def __init__(self):
        self.zero = gmpy2.mpq(0)
        self.one = gmpy2.mpq(1)

    def __call__(self, x):
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, bool) or not isinstance(x, (Integral, Rational, type(self.zero))):
            raise FieldMismatch(f"not an exact rational: {x!r}")
        if isinstance(x, Fraction):
            return gmpy2.mpq(x.numerator, x.denominator)
        return gmpy2.mpq(x)

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return 1 / x

    def format(self, x) -> str:
        if x.denominator == 1:
            return str(int(x.numerator))
        return f"{int(x.numerator)}/{int(x.denominator)}"

    def __repr__(self):
        return "QQ"


class _PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.char = p
        self.zero = 0
        self.one = 1

    def __call__(self, x):
        p = self.char
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, bool):
            raise FieldMismatch(f"not an exact scalar: {x!r}")
        if isinstance(x, Integral):
            return int(x) % p
        if isinstance(x, (Rational, type(gmpy2.mpq(0)))):
            num, den = int(x.numerator), int(x.denominator)
            if den % p == 0:
                raise ZeroDivisionError(f"denominator {den} vanishes mod {p}")
            return num * pow(den, -1, p) % p
        raise FieldMismatch(f"not an exact scalar: {x!r}")

    def reduce(self, x):
        return x % self.char

    def inv(self, x):
        if x % self.char == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.char)

    def format(self, x) -> str:
        return str(int(x))

    def __repr__(self):
        return f"GF({self.char})"


QQ = _Rationals()


@lru_cache(maxsize=None)
def GF(p: int) -> Field:
    return _PrimeField(p)


def _same_field(a: "Mat", b: "Mat") -> Field:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    return a.field


class Mat:
    """Immutable dense matrix over an exact field."""

    __slots__ = ("field", "rows", "cols", "data", "_hash")

    def __init__(self, field: Field, rows, *, cols: int | None = None, _trusted: bool = False):
        if _trusted:
            data = rows
        else:
            data = tuple(tuple(field(x) for x in row) for row in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != cols:
                raise ShapeError("ragged rows")
        self.field = field
        self.rows = len(data)
        self.cols = cols
        self.data = data
        self._hash = None

    @classmethod
    def _raw(cls, field, data, cols):
        return cls(field, data, cols=cols, _trusted=True)

    # -- constructors -----------------------------------------------------
    @classmethod
    def zeros(cls, field, rows, cols):
        z = field.zero
        return cls._raw(field, tuple((z,) * cols for _ in range(rows)), cols)

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls._raw(
            field, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def scalar(cls, field, c, n):
        c = field(c)
        z = field.zero
        return cls._raw(
            field, tuple(tuple(c if i == j else z for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def from_columns(cls, field, columns, rows: int | None = None):
        columns = [tuple(c) for c in columns]
        if not columns:
            return cls.zeros(field, rows or 0, 0)
        n = len(columns[0])
        return cls._raw(field, tuple(tuple(c[i] for c in columns) for i in range(n)), len(columns))

    @classmethod
    def column(cls, field, vec):
        return cls._raw(field, tuple((x,) for x in vec), 1)

    @classmethod
    def unit_vector(cls, field, n, i):
        z, o = field.zero, field.one
        return cls._raw(field, tuple((o if k == i else z,) for k in range(n)), 1)

    # -- access -----------------------------------------------------------
    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def col(self, j) -> tuple:
        return tuple(row[j] for row in self.data)

    def columns(self) -> list:
        return [self.col(j) for j in range(self.cols)]

    def submatrix(self, row_idx, col_idx) -> "Mat":
        col_idx = list(col_idx)
        return Mat._raw(
            self.field, tuple(tuple(self.data[i][j] for j in col_idx) for i in row_idx), len(col_idx)
        )

    @property
    def T(self) -> "Mat":
        return Mat._raw(
            self.field,
            tuple(tuple(self.data[i][j] for i in range(self.rows)) for j in range(self.cols)),
            self.rows,
        )

    def is_zero(self) -> bool:
        return not any(x for row in self.data for x in row)

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(
            x == (1 if i == j else 0) for i, row in enumerate(self.data) for j, x in enumerate(row)
        )

    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: "Mat") -> "Mat":
        f = _same_field(self, other)
        if self.shape != other.shape:
            raise ShapeError(f"{self.shape} + {other.shape}")
        red = f.reduce
        return Mat._raw(
            f,
            tuple(tuple(red(x + y) for x, y in zip(r, s)) for r, s in zip(self.data, other.data)),
            self.cols,
        )

    def __sub__(self, other: "Mat") -> "Mat":
        f = _same_field(self, other)
        if self.shape != other.shape:
            raise ShapeError(f"{self.shape} - {other.shape}")
        red = f.reduce
        return Mat._raw(
            f,
            tuple(tuple(red(x - y) for x, y in zip(r, s)) for r, s in zip(self.data, other.data)),
            self.cols,
        )

    def __neg__(self) -> "Mat":
        return self.scale(-1)

    def scale(self, c) -> "Mat":
        f = self.field
        c = f(c)
        red = f.reduce
        return Mat._raw(f, tuple(tuple(red(c * x) for x in row) for row in self.data), self.cols)

    def __matmul__(self, other: "Mat") -> "Mat":
        f = _same_field(self, other)
        if self.cols != other.rows:
            raise ShapeError(f"{self.shape} @ {other.shape}")
        n = other.cols
        sparse = [[(j, y) for j, y in enumerate(row) if y] for row in other.data]
        p = f.char
        zero = f.zero
        out = []
        for arow in self.data:
            acc = [zero] * n
            for k, x in enumerate(arow):
                if x:
                    for j, y in sparse[k]:
                        acc[j] += x * y
            if p:
                acc = [v % p for v in acc]
            out.append(tuple(acc))
        return Mat._raw(f, tuple(out), n)

    def apply(self, vec) -> tuple:
        """Matrix times a coordinate tuple."""
        f = self.field
        if len(vec) != self.cols:
            raise ShapeError(f"{self.shape} applied to length {len(vec)}")
        nz = [(k, x) for k, x in enumerate(vec) if x]
        red = f.reduce
        return tuple(red(sum((row[k] * x for k, x in nz), f.zero)) for row in self.data)

    def power(self, k: int) -> "Mat":
        if not self.is_square():
            raise ShapeError("power of a non-square matrix")
        result = Mat.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def kron(self, other: "Mat") -> "Mat":
        return kronecker(self, other)

    def hstack(self, *others: "Mat") -> "Mat":
        mats = (self,) + others
        for m in others:
            _same_field(self, m)
            if m.rows != self.rows:
                raise ShapeError("hstack row mismatch")
        return Mat._raw(
            self.field,
            tuple(sum((m.data[i] for m in mats), ()) for i in range(self.rows)),
            sum(m.cols for m in mats),
        )

    def vstack(self, *others: "Mat") -> "Mat":
        for m in others:
            _same_field(self, m)
            if m.cols != self.cols:
                raise ShapeError("vstack column mismatch")
        return Mat._raw(self.field, self.data + sum((m.data for m in others), ()), self.cols)

    def rank(self) -> int:
        return rank(self)

    def inverse(self) -> "Mat":
        if not self.is_square():
            raise ShapeError("inverse of a non-square matrix")
        n = self.rows
        f = self.field
        ident = Mat.identity(f, n).data
        work = [list(r) + list(e) for r, e in zip(self.data, ident)]
        pivots = _rref_inplace(work, n, f)
        if len(pivots) != n:
            raise NotInvertible(f"matrix of rank {len(pivots)} < {n}")
        return Mat._raw(f, tuple(tuple(r[n:]) for r in work), n)

    def is_invertible(self) -> bool:
        return self.is_square() and rank(self) == self.rows

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (
            self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.char, self.rows, self.cols, self.data))
        return self._hash

    def to_strings(self) -> list:
        fmt = self.field.format
        return [[fmt(x) for x in row] for row in self.data]

    def __repr__(self):
        body = "; ".join(" ".join(r) for r in self.to_strings())
        return f"Mat[{self.rows}x{self.cols} {self.field!r}]({body})"


def _rref_inplace(work, pivot_limit, field) -> list:
    """Gauss-Jordan on a list of mutable rows.  Pivots are searched only in the
    first ``pivot_limit`` columns (leftmost nonzero wins); row operations act on
    the full width so augmented blocks are carried along."""
    p = field.char
    inv = field.inv
    nrows = len(work)
    pivots = []
    r = 0
    for c in range(pivot_limit):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if work[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            work[r], work[piv] = work[piv], work[r]
        prow = work[r]
        pv = prow[c]
        if pv != 1:
            ip = inv(pv)
            if p:
                prow = [x * ip % p for x in prow]
            else:
                prow = [x * ip for x in prow]
            work[r] = prow
        nz = [(j, x) for j, x in enumerate(prow) if x]
        for i in range(nrows):
            if i == r:
                continue
            row = work[i]
            fac = row[c]
            if fac:
                if p:
                    for j, x in nz:
                        row[j] = (row[j] - fac * x) % p
                else:
                    for j, x in nz:
                        row[j] -= fac * x
        pivots.append(c)
        r += 1
    return pivots


def echelonize(m: Mat):
    """Reduced row echelon form.

    Returns ``(rref, pivots, rank)``; zero rows of the reduced form are kept so
    the shape is unchanged.
    """
    work = [list(r) for r in m.data]
    pivots = _rref_inplace(work, m.cols, m.field)
    return Mat._raw(m.field, tuple(tuple(r) for r in work), m.cols), tuple(pivots), len(pivots)


def echelon_transform(m: Mat):
    """Like :func:`echelonize` but also returns the invertible ``T`` with
    ``T @ m == rref``."""
    f = m.field
    ident = Mat.identity(f, m.rows).data
    work = [list(r) + list(e) for r, e in zip(m.data, ident)]
    pivots = _rref_inplace(work, m.cols, f)
    rref = Mat._raw(f, tuple(tuple(r[: m.cols]) for r in work), m.cols)
    t = Mat._raw(f, tuple(tuple(r[m.cols :]) for r in work), m.rows)
    return rref, tuple(pivots), t


def rank(m: Mat) -> int:
    work = [list(r) for r in m.data]
    return len(_rref_inplace(work, m.cols, m.field))


def _null_vectors(m: Mat) -> list:
    rref, pivots, _ = echelonize(m)
    f = m.field
    pivset = set(pivots)
    free = [c for c in range(m.cols) if c not in pivset]
    red = f.reduce
    vecs = []
    for fc in free:
        v = [f.zero] * m.cols
        v[fc] = f.one
        for r, pc in enumerate(pivots):
            v[pc] = red(-rref.data[r][fc])
        vecs.append(tuple(v))
    return vecs


def kernel_basis(m: Mat) -> list:
    """Basis of ``{v : m v = 0}`` as a list of column matrices."""
    vecs = _null_vectors(m)
    f = m.field
    for v in vecs:
        if any(m.apply(v)):
            raise AssertionError("kernel vector does not annihilate")
    return [Mat.column(f, v) for v in vecs]


def kernel_matrix(m: Mat) -> Mat:
    """Kernel basis packed as the columns of one matrix."""
    vecs = _null_vectors(m)
    if not vecs:
        return Mat.zeros(m.field, m.cols, 0)
    k = Mat.from_columns(m.field, vecs)
    if not (m @ k).is_zero():
        raise AssertionError("kernel vector does not annihilate")
    return k


def solve(m: Mat, rhs: Mat) -> Mat:
    """One exact solution ``x`` of ``m @ x == rhs`` (free variables set to 0)."""
    f = _same_field(m, rhs)
    if m.rows != rhs.rows:
        raise ShapeError(f"{m.shape} vs rhs {rhs.shape}")
    n = m.cols
    work = [list(r) + list(s) for r, s in zip(m.data, rhs.data)]
    pivots = _rref_inplace(work, n, f)
    k = len(pivots)
    for row in work[k:]:
        if any(row[n:]):
            raise NoSolution("right-hand side not in the column space")
    out = [[f.zero] * rhs.cols for _ in range(n)]
    for r, pc in enumerate(pivots):
        out[pc] = work[r][n:]
    x = Mat._raw(f, tuple(tuple(r) for r in out), rhs.cols)
    if m @ x != rhs:
        raise AssertionError("solve produced a wrong solution")
    return x


def kronecker(a: Mat, b: Mat) -> Mat:
    f = _same_field(a, b)
    p = f.char
    out = []
    for arow in a.data:
        for brow in b.data:
            if p:
                out.append(tuple(x * y % p for x in arow for y in brow))
            else:
                out.append(tuple(x * y for x in arow for y in brow))
    return Mat._raw(f, tuple(out), a.cols * b.cols)


def image_basis(m: Mat) -> tuple:
    """Deterministic basis of the column space of ``m``.

    Returns ``(basis, pivots)`` where ``basis`` has the basis vectors as
    columns: they are the nonzero rows of the reduced echelon form of ``m.T``.
    Consequently the coordinates of any vector in the image are its entries
    at ``pivots``.
    """
    rref, pivots, r = echelonize(m.T)
    basis = Mat._raw(m.field, rref.data[:r], m.rows).T if r else Mat.zeros(m.field, m.rows, 0)
    return basis, pivots


def complement_projection(relations: Mat) -> tuple:
    """Projection onto a coordinate complement of the column span of ``relations``.

    The complement is spanned by the leftmost standard basis vectors that are
    independent modulo the relations.  Returns ``(proj, kept)`` where ``kept``
    lists those coordinates and ``proj`` (``len(kept) x n``) kills the
    relation span and restricts to the identity on the kept coordinates.
    """
    f = relations.field
    n = relations.rows
    # reversed-column echelon form puts pivots as far right as possible, so the
    # non-pivot coordinates are the leftmost possible complement
    rev = Mat._raw(f, tuple(tuple(reversed(r)) for r in relations.T.data), n)
    rref, rpivots, r = echelonize(rev)
    pivots = [n - 1 - c for c in rpivots]
    pivset = set(pivots)
    kept = [c for c in range(n) if c not in pivset]
    index = {c: i for i, c in enumerate(kept)}
    red = f.reduce
    rows = [[f.zero] * n for _ in kept]
    for c in kept:
        rows[index[c]][c] = f.one
    for i, pc in enumerate(pivots):
        rel = rref.data[i]  # reversed coordinates
        for c in kept:
            x = rel[n - 1 - c]
            if x:
                rows[index[c]][pc] = red(-x)
    proj = Mat._raw(f, tuple(tuple(r) for r in rows), n)
    return proj, tuple(kept)

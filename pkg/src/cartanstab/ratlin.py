"""Exact rational linear algebra.

Matrices are tuples of row tuples.  Entries are Python ``int`` when integral
and :class:`fractions.Fraction` otherwise; the two compare and hash equally,
so canonical forms built here can be compared with ``==`` and used as dict
keys.  Nothing in this module ever touches floating point.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Matrix = tuple  # tuple[tuple[int | Fraction, ...], ...]


def q(x):
    """Coerce to an exact scalar, collapsing integral fractions to int."""
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return q(Fraction(x))
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact scalars")
    return q(Fraction(x))


def fmt(x) -> str:
    """Serialize a scalar as ``"p/q"`` (``"p"`` when the denominator is 1)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse(s: str):
    return q(Fraction(s))


def matrix(rows: Iterable[Iterable]) -> Matrix:
    return tuple(tuple(q(x) for x in row) for row in rows)


def shape(m: Matrix) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def zeros(r: int, c: int) -> Matrix:
    return tuple((0,) * c for _ in range(r))


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def diag(entries: Sequence) -> Matrix:
    n = len(entries)
    return tuple(tuple(q(entries[i]) if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    # Lie algebra bases are very sparse, so iterate over nonzeros only.
    ncols = len(b[0]) if b else 0
    b_nz = [[(j, x) for j, x in enumerate(row) if x] for row in b]
    out = []
    for row in a:
        acc = [0] * ncols
        for k, x in enumerate(row):
            if x:
                for j, y in b_nz[k]:
                    acc[j] += x * y
        out.append(tuple(q(v) for v in acc))
    return tuple(out)


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(q(x + y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(q(x - y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scale(c, a: Matrix) -> Matrix:
    return tuple(tuple(q(c * x) for x in row) for row in a)


def bracket(x: Matrix, y: Matrix) -> Matrix:
    return sub(matmul(x, y), matmul(y, x))


def trace(m: Matrix):
    return q(sum(m[i][i] for i in range(len(m))))


def is_zero(m: Matrix) -> bool:
    return all(not x for row in m for x in row)


def flatten(m: Matrix) -> tuple:
    return tuple(x for row in m for x in row)


def reshape(v: Sequence, rows: int, cols: int) -> Matrix:
    return tuple(tuple(q(v[i * cols + j]) for j in range(cols)) for i in range(rows))


def det(m: Matrix):
    """Determinant by fraction Gaussian elimination."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return q(d)


def _reduced_rows(rows: Iterable[Sequence], ncols: int) -> list[tuple]:
    """Fully reduced nonzero rows, sorted by pivot column.

    Rows are inserted one at a time so the working set never exceeds the
    rank, which keeps tall constraint systems cheap.
    """
    basis: dict[int, list] = {}
    for raw in rows:
        row = [Fraction(x) for x in raw]
        if len(row) != ncols:
            raise ValueError(f"row of length {len(row)} in a {ncols}-column matrix")
        for p, prow in basis.items():
            c = row[p]
            if c:
                row = [x - c * y for x, y in zip(row, prow)]
        lead = next((j for j, x in enumerate(row) if x), None)
        if lead is None:
            continue
        inv = 1 / row[lead]
        row = [x * inv for x in row]
        for p, prow in basis.items():
            c = prow[lead]
            if c:
                basis[p] = [x - c * y for x, y in zip(prow, row)]
        basis[lead] = row
    return [tuple(q(x) for x in basis[p]) for p in sorted(basis)]


def rref(m: Matrix, ncols: int | None = None) -> Matrix:
    """Reduced row echelon form of ``m``; zero rows are kept at the bottom."""
    nrows = len(m)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    rows = _reduced_rows(m, ncols)
    return tuple(rows) + zeros(nrows - len(rows), ncols)


def pivots(r: Matrix) -> tuple[int, ...]:
    """Pivot columns of a matrix already in RREF."""
    out = []
    for row in r:
        lead = next((j for j, x in enumerate(row) if x), None)
        if lead is not None:
            out.append(lead)
    return tuple(out)


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim, stored as its canonical RREF basis.

    Equality of two instances is equality of subspaces.
    """

    ambient_dim: int
    basis: Matrix

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return pivots(self.basis)

    def key(self) -> tuple:
        """Sort key: flattened RREF entries (lexicographic order)."""
        return (self.dim,) + tuple(Fraction(x) for x in flatten(self.basis))

    def reduce(self, v: Sequence) -> tuple:
        """Remainder of ``v`` after clearing this subspace's pivot columns."""
        v = list(v)
        for p, row in zip(self.pivots, self.basis):
            c = v[p]
            if c:
                v = [x - c * y for x, y in zip(v, row)]
        return tuple(q(x) for x in v)

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise ValueError("dimension mismatch")
        return not any(self.reduce(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.basis)

    def __repr__(self) -> str:
        rows = ", ".join("[" + ", ".join(fmt(x) for x in row) + "]" for row in self.basis)
        return f"Subspace({self.ambient_dim}, [{rows}])"


def span(vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
    vectors = list(vectors)
    for v in vectors:
        if len(v) != ambient_dim:
            raise ValueError(f"vector {tuple(v)} does not have length {ambient_dim}")
    return Subspace(ambient_dim, tuple(_reduced_rows(vectors, ambient_dim)))


def full_space(n: int) -> Subspace:
    return Subspace(n, identity(n))


def kernel(m: Matrix, ncols: int | None = None) -> Subspace:
    """Right null space {v : m v = 0}."""
    if ncols is None:
        if not m:
            raise ValueError("ncols is required for an empty matrix")
        ncols = len(m[0])
    r = _reduced_rows(m, ncols)
    piv = pivots(r)
    free = [j for j in range(ncols) if j not in set(piv)]
    vecs = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for p, row in zip(piv, r):
            v[p] = -row[f]
        vecs.append(v)
    return span(vecs, ncols)


def orthocomplement_within(s: Subspace, ambient: Subspace) -> Subspace:
    """{x in ambient : x . s = 0 for all s in S}, using the coordinate dot product."""
    if s.ambient_dim != ambient.ambient_dim:
        raise ValueError("ambient dimensions differ")
    if not ambient.contains_subspace(s):
        raise ValueError("S is not contained in the ambient subspace")
    if ambient.dim == 0:
        return ambient
    # x = c . ambient.basis; constraints (ambient.basis . s_row) . c = 0
    cons = [[sum(a * b for a, b in zip(arow, srow)) for arow in ambient.basis] for srow in s.basis]
    coeffs = kernel(cons, ambient.dim) if cons else full_space(ambient.dim)
    vecs = [
        [sum(c * arow[j] for c, arow in zip(crow, ambient.basis)) for j in range(ambient.ambient_dim)]
        for crow in coeffs.basis
    ]
    return span(vecs, ambient.ambient_dim)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    n = a.ambient_dim
    # x = u.A = v.B  <=>  [A; -B]^T (u, v) = 0
    if a.dim == 0 or b.dim == 0:
        return Subspace(n, ())
    rows = [list(col_a) + [-x for x in col_b] for col_a, col_b in zip(transpose(a.basis), transpose(b.basis))]
    sol = kernel(rows, a.dim + b.dim)
    vecs = [[sum(c * arow[j] for c, arow in zip(s[: a.dim], a.basis)) for j in range(n)] for s in sol.basis]
    return span(vecs, n)

"""Matrix realizations of the split classical algebras and their Cartan subalgebras.

Conventions (all exact):

* sl(n): traceless n x n matrices.
* sp(n):    X^t J + J X = 0 with J = [[0, I], [-I, 0]].
* so(2n+1): same with J = [[0, I, 0], [I, 0, 0], [0, 0, -1]].
* so(n,n):  same with J = [[0, I], [I, 0]].

The Cartan involution is X -> -X^t and the maximal abelian subspace m of the
symmetric part is the diagonal.  Elements of g are given coordinates by
reading the entries at the pivot positions of the RREF basis of g.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from . import ratlin
from .admissible import AdmissibleSystem, classify, family_for
from .ratlin import Matrix, Subspace, q
from .roots import AlgebraKind, Family, GuardError, WeylElement, is_root

MAX_DEFINING_DIM = 24


class CartanError(AssertionError):
    """A constructed subalgebra violated a Cartan subalgebra invariant."""


class LiftError(ValueError):
    """No K-representative was found for a Weyl element."""


@dataclass(frozen=True, eq=False)
class MatrixLieAlgebra:
    kind: AlgebraKind
    d: int
    form: Matrix | None
    basis: tuple
    m_basis: tuple
    coord_cols: tuple = field(repr=False)  # flattened positions giving coordinates

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, x: Matrix) -> tuple:
        flat = ratlin.flatten(x)
        return tuple(flat[p] for p in self.coord_cols)

    def from_coords(self, c: Sequence) -> Matrix:
        out = ratlin.zeros(self.d, self.d)
        for ck, b in zip(c, self.basis):
            if ck:
                out = ratlin.add(out, ratlin.scale(ck, b))
        return out

    def contains(self, x: Matrix) -> bool:
        return _satisfies(self.kind, self.form, x)

    def embed(self, h: Sequence) -> Matrix:
        """Diagonal element of m with e-coordinates h."""
        f = self.kind.family
        if f is Family.SL:
            return ratlin.diag(h)
        tail = [-x for x in h] + ([0] if f is Family.SO_ODD else [])
        return ratlin.diag(list(h) + tail)

    def m_coords(self, x: Matrix) -> tuple:
        return tuple(x[i][i] for i in range(self.kind.rank))

    @property
    def m_space(self) -> Subspace:
        """m in e-coordinates (the sum-zero hyperplane for sl(n))."""
        n = self.kind.rank
        if self.kind.family is Family.SL:
            vecs = []
            for i in range(n - 1):
                v = [0] * n
                v[i], v[i + 1] = 1, -1
                vecs.append(v)
            return ratlin.span(vecs, n)
        return ratlin.full_space(n)


def _defining_dim(k: AlgebraKind) -> int:
    f, n = k.family, k.rank
    return {Family.SL: n, Family.SP: 2 * n, Family.SO_ODD: 2 * n + 1, Family.SO_EVEN: 2 * n}[f]


def _form(k: AlgebraKind) -> Matrix | None:
    f, n = k.family, k.rank
    if f is Family.SL:
        return None
    d = _defining_dim(k)
    j = [[0] * d for _ in range(d)]
    for i in range(n):
        if f is Family.SP:
            j[i][n + i], j[n + i][i] = 1, -1
        else:
            j[i][n + i], j[n + i][i] = 1, 1
    if f is Family.SO_ODD:
        j[2 * n][2 * n] = -1
    return ratlin.matrix(j)


def _satisfies(k: AlgebraKind, form: Matrix | None, x: Matrix) -> bool:
    if form is None:
        return ratlin.trace(x) == 0
    return ratlin.is_zero(ratlin.add(ratlin.matmul(ratlin.transpose(x), form), ratlin.matmul(form, x)))


def _defining_conditions(k: AlgebraKind, form: Matrix | None, d: int) -> list[list]:
    if form is None:
        return [[1 if p == q_ else 0 for p in range(d) for q_ in range(d)]]
    rows = []
    # (X^t J + J X)_{ij} = sum_p X_{pi} J_{pj} + sum_p J_{ip} X_{pj}
    for i in range(d):
        for j in range(d):
            row = [0] * (d * d)
            for p in range(d):
                if form[p][j]:
                    row[p * d + i] += form[p][j]
                if form[i][p]:
                    row[p * d + j] += form[i][p]
            if any(row):
                rows.append(row)
    return rows


@lru_cache(maxsize=None)
def realize(k: AlgebraKind) -> MatrixLieAlgebra:
    if k.family is Family.G2:
        raise ValueError("no matrix model of g2 is provided")
    d = _defining_dim(k)
    if d > MAX_DEFINING_DIM:
        raise GuardError(f"{k} has defining dimension {d} > {MAX_DEFINING_DIM}")
    form = _form(k)
    g_space = ratlin.kernel(_defining_conditions(k, form, d), d * d)
    basis = tuple(ratlin.reshape(v, d, d) for v in g_space.basis)
    n = k.rank
    if k.family is Family.SL:
        m_basis = []
        for i in range(n - 1):
            h = [0] * n
            h[i], h[i + 1] = 1, -1
            m_basis.append(ratlin.diag(h))
    else:
        m_basis = []
        for i in range(n):
            h = [0] * n
            h[i] = 1
            tail = [-x for x in h] + ([0] if k.family is Family.SO_ODD else [])
            m_basis.append(ratlin.diag(h + tail))
    g = MatrixLieAlgebra(k, d, form, basis, tuple(m_basis), g_space.pivots)
    expected = {Family.SL: n * n - 1, Family.SP: n * (2 * n + 1),
                Family.SO_ODD: n * (2 * n + 1), Family.SO_EVEN: n * (2 * n - 1)}[k.family]
    if g.dim != expected:
        raise AssertionError(f"{k}: kernel dimension {g.dim}, expected {expected}")
    for h in g.m_basis:
        if not g.contains(h):
            raise AssertionError(f"{k}: diagonal basis element outside g")
    return g


def check_bracket_closure(g: MatrixLieAlgebra) -> bool:
    return all(
        g.contains(ratlin.bracket(x, y)) for i, x in enumerate(g.basis) for y in g.basis[i + 1:]
    )


def trace_form(g: MatrixLieAlgebra, x: Matrix, y: Matrix):
    return ratlin.trace(ratlin.matmul(x, y))


def killing_form(g: MatrixLieAlgebra, x: Matrix, y: Matrix):
    """tr(ad x ad y), computed on the basis of g."""
    total = 0
    for i, b in enumerate(g.basis):
        total += g.coords(ratlin.bracket(x, ratlin.bracket(y, b)))[i]
    return q(total)


def _root_value(alpha: Sequence, h: Sequence):
    return sum(a * b for a, b in zip(alpha, h))


def _eigenspace(g: MatrixLieAlgebra, alpha: Sequence) -> Subspace:
    """{c : [H, sum c_k B_k] = alpha(H) sum c_k B_k for all H in m}, in g-coordinates."""
    rows = []
    d = g.d
    for hm in g.m_basis:
        diag_h = [hm[i][i] for i in range(d)]
        val = _root_value(alpha, g.m_coords(hm))
        for p in range(d):
            for s in range(d):
                coef = diag_h[p] - diag_h[s] - val
                if not coef:
                    continue
                row = [coef * b[p][s] for b in g.basis]
                if any(row):
                    rows.append(row)
    if not rows:
        return ratlin.full_space(g.dim)
    return ratlin.kernel(rows, g.dim)


@lru_cache(maxsize=None)
def _root_vector(k: AlgebraKind, alpha: tuple) -> Matrix:
    g = realize(k)
    space = _eigenspace(g, alpha)
    if space.dim != 1:
        raise AssertionError(f"root space of {alpha} in {k} has dimension {space.dim}")
    x = g.from_coords(space.basis[0])
    lead = next(v for v in ratlin.flatten(x) if v)
    return ratlin.scale(ratlin.q(1 / ratlin.Fraction(lead)), x)


def root_space(g: MatrixLieAlgebra, alpha: Sequence) -> Matrix:
    """Generator x_alpha of the root space, first nonzero entry 1."""
    alpha = tuple(alpha)
    if not is_root(g.kind, alpha):
        raise ValueError(f"{alpha} is not a root of {g.kind}")
    return _root_vector(g.kind, alpha)


def sigma(x: Matrix) -> Matrix:
    return ratlin.scale(-1, ratlin.transpose(x))


def u_vector(g: MatrixLieAlgebra, alpha: Sequence) -> Matrix:
    """U_alpha = x_alpha + sigma(x_alpha), a skew-symmetric element of k."""
    x = root_space(g, alpha)
    return ratlin.add(x, sigma(x))


@dataclass(frozen=True, eq=False)
class CartanSubalgebra:
    kind: AlgebraKind
    toroidal_basis: tuple
    vector_basis: tuple
    source_class: int | None = None
    system: AdmissibleSystem | None = None

    @property
    def h_basis(self) -> tuple:
        return self.toroidal_basis + self.vector_basis

    @property
    def dim(self) -> int:
        return len(self.h_basis)


def _is_skew(x: Matrix) -> bool:
    return ratlin.transpose(x) == ratlin.scale(-1, x)


def _is_diagonal(x: Matrix) -> bool:
    return all(not v for i, row in enumerate(x) for j, v in enumerate(row) if i != j)


def coord_span(g: MatrixLieAlgebra, mats: Sequence[Matrix]) -> Subspace:
    return ratlin.span((g.coords(x) for x in mats), g.dim)


def normalizer(g: MatrixLieAlgebra, h_basis: Sequence[Matrix]) -> Subspace:
    """{X in g : [X, h] in h}, in g-coordinates."""
    hs = coord_span(g, h_basis)
    rows = []
    for hm in h_basis:
        cols = [hs.reduce(g.coords(ratlin.bracket(b, hm))) for b in g.basis]
        for e in range(g.dim):
            row = [c[e] for c in cols]
            if any(row):
                rows.append(row)
    if not rows:
        return ratlin.full_space(g.dim)
    return ratlin.kernel(rows, g.dim)


def _first_nonzero_bracket(mats: Sequence[Matrix]):
    for i, x in enumerate(mats):
        for j in range(i + 1, len(mats)):
            if not ratlin.is_zero(ratlin.bracket(x, mats[j])):
                return i, j
    return None


def is_cartan(g: MatrixLieAlgebra, h_basis: Sequence[Matrix]) -> bool:
    """Abelian and self-normalizing."""
    if any(not g.contains(x) for x in h_basis):
        raise ValueError("basis element outside g")
    if _first_nonzero_bracket(h_basis) is not None:
        return False
    return normalizer(g, h_basis) == coord_span(g, h_basis)


def build_cartan(g: MatrixLieAlgebra, f: AdmissibleSystem, source_class: int | None = None) -> CartanSubalgebra:
    """Cartan subalgebra e + n attached to an admissible system.

    n is the orthocomplement of span(F) in m; e is spanned by the
    U_alpha = x_alpha - x_alpha^t for alpha in F.  Every invariant is checked
    before returning.
    """
    k = g.kind
    if f.kind != k:
        raise ValueError(f"system of {f.kind} used with {k}")
    n_space = ratlin.orthocomplement_within(f.span, g.m_space)
    vector = tuple(g.embed(v) for v in n_space.basis)
    toroidal = []
    for alpha in f.roots:
        x = root_space(g, alpha)
        y = sigma(x)
        neg = tuple(-a for a in alpha)
        for hm in g.m_basis:
            expect = ratlin.scale(_root_value(neg, g.m_coords(hm)), y)
            if ratlin.bracket(hm, y) != expect:
                raise CartanError(f"sigma(x_{alpha}) is not in the root space of {neg}")
        toroidal.append(ratlin.add(x, y))
    cs = CartanSubalgebra(k, tuple(toroidal), vector, source_class, f)
    h = cs.h_basis

    bad = _first_nonzero_bracket(h)
    if bad is not None:
        i, j = bad
        raise CartanError(f"{f}: [h_{i}, h_{j}] = {ratlin.bracket(h[i], h[j])} != 0")
    if len(h) != k.lie_rank or coord_span(g, h).dim != k.lie_rank:
        raise CartanError(f"{f}: dimension {coord_span(g, h).dim} != rank {k.lie_rank}")
    if not all(_is_skew(x) for x in toroidal) or not all(_is_diagonal(x) for x in vector):
        raise CartanError(f"{f}: toroidal part not in k or vector part not in m")
    hs = coord_span(g, h)
    if not all(hs.contains(g.coords(sigma(x))) for x in h):
        raise CartanError(f"{f}: not stable under the Cartan involution")
    if normalizer(g, h) != hs:
        raise CartanError(f"{f}: not self-normalizing")
    return cs


def class_cartans(g: MatrixLieAlgebra, family: Sequence[AdmissibleSystem] | None = None) -> list[CartanSubalgebra]:
    """Cartan subalgebras of the representative family, tagged with class ids."""
    family = family_for(g.kind) if family is None else family
    report = classify(g.kind)
    return [build_cartan(g, f, report.class_of(f)) for f in family]


@dataclass(frozen=True)
class KElement:
    kind: AlgebraKind
    matrix: Matrix


def k_element(g: MatrixLieAlgebra, m: Matrix) -> KElement:
    """Certify m as orthogonal, form-preserving and of determinant 1."""
    m = ratlin.matrix(m)
    mt = ratlin.transpose(m)
    if ratlin.matmul(mt, m) != ratlin.identity(g.d):
        raise ValueError("not orthogonal")
    if g.form is not None and ratlin.matmul(ratlin.matmul(mt, g.form), m) != g.form:
        raise ValueError("does not preserve the defining form")
    if ratlin.det(m) != 1:
        raise ValueError("determinant is not 1")
    return KElement(g.kind, m)


def conjugate(k: KElement, x: Matrix) -> Matrix:
    # k is orthogonal, so k^-1 = k^t.
    return ratlin.matmul(ratlin.matmul(k.matrix, x), ratlin.transpose(k.matrix))


def induced_weyl(g: MatrixLieAlgebra, k: KElement) -> WeylElement:
    """The signed permutation by which Ad(k) acts on m."""
    n, d = g.kind.rank, g.d
    probe = g.embed(range(1, n + 1)) if g.kind.family is not Family.SL else ratlin.diag(range(1, n + 1))
    img = conjugate(k, probe)
    if not _is_diagonal(img):
        raise ValueError("k does not normalize m")
    h = g.m_coords(img)
    perm, signs = [0] * n, [0] * n
    for i in range(n):
        hits = [j for j in range(n) if abs(h[j]) == i + 1]
        if len(hits) != 1:
            raise ValueError("k does not normalize m")
        perm[i] = hits[0]
        signs[i] = 1 if h[hits[0]] > 0 else -1
    try:
        w = WeylElement(g.kind, tuple(perm), tuple(signs))
    except ValueError as exc:
        raise ValueError(f"k induces no Weyl element: {exc}") from None
    wm = w.as_matrix()
    for hm in g.m_basis:
        hv = g.m_coords(hm)
        target = g.embed([sum(wm[i][j] * hv[j] for j in range(n)) for i in range(n)])
        if conjugate(k, hm) != target:
            raise ValueError("k does not normalize m")
    return w


def lift_weyl(g: MatrixLieAlgebra, w: WeylElement) -> KElement:
    """A monomial representative in K of a Weyl element.

    Permutations act blockwise; a sign change of e_i swaps coordinates i and
    n+i (a quarter-turn [[0,1],[-1,0]] for sp, a plain swap for so, with a -1
    in the last slot of so(2n+1) to keep determinant 1).  For sl(n) an odd
    permutation has the column of its smallest moved index negated, which
    gives the block [[0,1],[-1,0]] for adjacent transpositions.
    """
    kd, n, d = g.kind, g.kind.rank, g.d
    if w.kind != kd:
        raise ValueError(f"kind mismatch: {w.kind} vs {kd}")
    f = kd.family
    perm_m = [[0] * d for _ in range(d)]
    for i, p in enumerate(w.perm):
        perm_m[p][i] = 1
        if f is not Family.SL:
            perm_m[n + p][n + i] = 1
    if f is Family.SO_ODD:
        perm_m[2 * n][2 * n] = 1
    if f is Family.SL:
        if ratlin.det(ratlin.matrix(perm_m)) == -1:
            moved = min(i for i, p in enumerate(w.perm) if p != i)
            for r in range(d):
                perm_m[r][moved] = -perm_m[r][moved]
        mat = ratlin.matrix(perm_m)
    else:
        flip_m = [[1 if r == c else 0 for c in range(d)] for r in range(d)]
        flipped = [i for i, s in enumerate(w.signs) if s == -1]
        for i in flipped:
            flip_m[i][i] = flip_m[n + i][n + i] = 0
            if f is Family.SP:
                flip_m[i][n + i], flip_m[n + i][i] = 1, -1
            else:
                flip_m[i][n + i], flip_m[n + i][i] = 1, 1
        if f is Family.SO_ODD and len(flipped) % 2:
            flip_m[2 * n][2 * n] = -1
        mat = ratlin.matmul(ratlin.matrix(perm_m), ratlin.matrix(flip_m))
    try:
        kel = k_element(g, mat)
    except ValueError as exc:
        raise LiftError(f"no K-lift of {w}: {exc}") from None
    if induced_weyl(g, kel) != w:
        raise LiftError(f"candidate lift of {w} induces {induced_weyl(g, kel)}")
    return kel


def verify_fixes(g: MatrixLieAlgebra, k: KElement, cartans: Sequence[CartanSubalgebra]) -> bool:
    """True when k h k^-1 = h for every Cartan subalgebra in the list."""
    for cs in cartans:
        before = coord_span(g, cs.h_basis)
        after = coord_span(g, [conjugate(k, x) for x in cs.h_basis])
        if before != after:
            return False
    return True


def verification_report(k: AlgebraKind) -> dict:
    """Build every class Cartan, lift every stabilizer element and check it fixes them all."""
    from .stabilizer import stabilizer

    g = realize(k)
    cartans = class_cartans(g)
    stab = stabilizer(k)
    cart_rows = [
        {
            "class_id": cs.source_class,
            "roots": [list(r) for r in cs.system.roots],
            "dim": cs.dim,
            "toroidal_dim": len(cs.toroidal_basis),
            "vector_dim": len(cs.vector_basis),
            "is_cartan": is_cartan(g, cs.h_basis),
        }
        for cs in cartans
    ]
    k_rows = []
    for w in stab.elements:
        kel = lift_weyl(g, w)
        k_rows.append(
            {
                "weyl": w.to_json(),
                "matrix": [[ratlin.fmt(x) for x in row] for row in kel.matrix],
                "induced_weyl": induced_weyl(g, kel).to_json(),
                "fixes_all": verify_fixes(g, kel, cartans),
            }
        )
    ok = all(r["is_cartan"] for r in cart_rows) and all(
        r["fixes_all"] and r["induced_weyl"] == r["weyl"] for r in k_rows
    )
    return {
        "algebra": k.family.value,
        "rank": k.rank,
        "cartans": cart_rows,
        "k_elements": k_rows,
        "ok": ok,
        "caveat": "K membership certified as orthogonal, form-preserving, det 1; "
        "identity-component membership is not certified",
    }

